#include "paq/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace paq {

namespace {

void check_size(int n) {
  if (n < 0) throw Error("poset size must be non-negative");
  if (n > 64) throw Error("poset size " + std::to_string(n) + " exceeds 64");
}

}  // namespace

Poset Poset::from_up_masks(int n, std::vector<uint64_t> up,
                           std::vector<std::string> labels) {
  check_size(n);
  if (static_cast<int>(up.size()) != n)
    throw Error("up-mask row count does not match size");
  for (int x = 0; x < n; ++x)
    if (up[x] & ~mask_n(n)) throw Error("up-mask row refers past the carrier");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw Error("label count does not match size");
  Poset p;
  p.n_ = n;
  p.up_ = std::move(up);
  p.labels_ = std::move(labels);
  for (int x = 0; x < n; ++x)
    if ((p.up_[x] & ~bit(x)) == 0) p.max_mask_ |= bit(x);
  return p;
}

Poset Poset::from_pairs(int n, std::span<const std::pair<int, int>> pairs,
                        std::vector<std::string> labels) {
  check_size(n);
  std::vector<uint64_t> up(n);
  for (int x = 0; x < n; ++x) up[x] = bit(x);
  for (auto [i, j] : pairs) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw Error("relation pair (" + std::to_string(i) + ", " +
                  std::to_string(j) + ") out of range");
    up[i] |= bit(j);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      uint64_t acc = up[x];
      for_each_bit(up[x], [&](int y) { acc |= up[y]; });
      if (acc != up[x]) {
        up[x] = acc;
        changed = true;
      }
    }
  }
  return from_up_masks(n, std::move(up), std::move(labels));
}

uint64_t Poset::down_mask(int x) const {
  uint64_t m = 0;
  for (int y = 0; y < n_; ++y)
    if (leq(y, x)) m |= bit(y);
  return m;
}

bool Poset::has_labels() const {
  for (const auto& l : labels_)
    if (!l.empty()) return true;
  return false;
}

std::string Poset::label(int x) const {
  if (x < static_cast<int>(labels_.size()) && !labels_[x].empty())
    return labels_[x];
  return std::to_string(x);
}

Poset Poset::with_labels(std::vector<std::string> labels) const {
  return from_up_masks(n_, up_, std::move(labels));
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y) {
      if (x == y || !leq(x, y)) continue;
      uint64_t between = up_[x] & down_mask(y) & ~bit(x) & ~bit(y);
      if (between == 0) out.emplace_back(x, y);
    }
  return out;
}

std::string OrderViolation::describe() const {
  std::string s = axiom + " violated at (";
  for (size_t i = 0; i < witness.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(witness[i]);
  }
  return s + ")";
}

std::optional<OrderViolation> validate(const Poset& p) {
  int n = p.size();
  for (int x = 0; x < n; ++x)
    if (!p.leq(x, x)) return OrderViolation{"reflexivity", {x}};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && p.leq(x, y) && p.leq(y, x))
        return OrderViolation{"antisymmetry", {x, y}};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!p.leq(x, y)) continue;
      uint64_t missing = p.up_mask(y) & ~p.up_mask(x);
      if (missing)
        return OrderViolation{
            "transitivity", {x, y, std::countr_zero(missing)}};
    }
  return std::nullopt;
}

MaxSet maximal_above(const Poset& p, int x) {
  if (x < 0 || x >= p.size())
    throw Error("maximal_above: element " + std::to_string(x) +
                " out of range");
  return MaxSet{x, p.max_above(x)};
}

Poset make_bm_poset(int m) {
  if (m < 0) throw Error("make_bm_poset: m must be non-negative");
  if (m == 0) return Poset::from_pairs(1, {});
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= m; ++i) pairs.emplace_back(0, i);
  return Poset::from_pairs(m + 1, pairs);
}

DisjointUnion disjoint_union(std::span<const Poset> parts) {
  int total = 0;
  for (const Poset& p : parts) total += p.size();
  check_size(total);
  DisjointUnion out;
  out.offset.reserve(parts.size());
  std::vector<uint64_t> up(total);
  std::vector<std::string> labels;
  bool any_labels = false;
  for (const Poset& p : parts)
    if (p.has_labels()) any_labels = true;
  if (any_labels) labels.resize(total);
  int base = 0;
  for (size_t k = 0; k < parts.size(); ++k) {
    const Poset& p = parts[k];
    out.offset.push_back(base);
    for (int x = 0; x < p.size(); ++x) {
      up[base + x] = p.up_mask(x) << base;
      out.component.push_back(static_cast<int>(k));
      if (any_labels) labels[base + x] = p.label(x);
    }
    base += p.size();
  }
  out.poset = Poset::from_up_masks(total, std::move(up), std::move(labels));
  return out;
}

namespace {

// Iterated partition refinement. Colors depend only on the order, never on
// element numbering.
std::vector<int> refine_colors(const Poset& p) {
  int n = p.size();
  std::vector<int> color(n, 0);
  if (n == 0) return color;

  auto assign = [&](auto key_of) {
    std::vector<std::pair<decltype(key_of(0)), int>> keyed;
    keyed.reserve(n);
    for (int x = 0; x < n; ++x) keyed.emplace_back(key_of(x), x);
    std::sort(keyed.begin(), keyed.end());
    int next = -1;
    for (int i = 0; i < n; ++i) {
      if (i == 0 || keyed[i].first != keyed[i - 1].first) ++next;
      color[keyed[i].second] = next;
    }
    return next + 1;
  };

  int classes = assign([&](int x) {
    return std::tuple(popcount(p.up_mask(x)), popcount(p.down_mask(x)),
                      popcount(p.max_above(x)));
  });
  for (int round = 0; round < n; ++round) {
    int before = classes;
    classes = assign([&](int x) {
      std::vector<int> ups, downs;
      for (int y = 0; y < n; ++y) {
        if (y == x) continue;
        if (p.leq(x, y)) ups.push_back(color[y]);
        if (p.leq(y, x)) downs.push_back(color[y]);
      }
      std::sort(ups.begin(), ups.end());
      std::sort(downs.begin(), downs.end());
      return std::tuple(color[x], ups, downs);
    });
    if (classes == before) break;
  }
  return color;
}

std::vector<uint64_t> relabeled_rows(const Poset& p,
                                     const std::vector<int>& order) {
  int n = p.size();
  std::vector<uint64_t> rows(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.leq(order[a], order[b])) rows[a] |= bit(b);
  return rows;
}

}  // namespace

Canonical canonical_form(const Poset& p) {
  int n = p.size();
  Canonical result;
  if (n == 0) return result;

  std::vector<int> color = refine_colors(p);
  int classes = 1 + *std::max_element(color.begin(), color.end());
  std::vector<std::vector<int>> cell(classes);
  for (int x = 0; x < n; ++x) cell[color[x]].push_back(x);

  long long combos = 1;
  for (auto& c : cell) {
    long long f = 1;
    for (size_t i = 2; i <= c.size(); ++i) f *= static_cast<long long>(i);
    combos *= f;
    if (combos > 2'000'000)
      throw Error("canonical_form: symmetry class too large");
  }

  std::vector<int> order;
  order.reserve(n);
  std::vector<uint64_t> best;
  std::vector<int> best_order;

  auto consider = [&]() {
    std::vector<uint64_t> rows = relabeled_rows(p, order);
    if (best.empty() || rows < best) {
      best = std::move(rows);
      best_order = order;
    }
  };

  // Enumerates every in-class permutation; cells are visited in color order.
  auto rec = [&](auto&& self, size_t ci) -> void {
    if (ci == cell.size()) {
      consider();
      return;
    }
    std::vector<int> perm = cell[ci];
    do {
      order.insert(order.end(), perm.begin(), perm.end());
      self(self, ci + 1);
      order.resize(order.size() - perm.size());
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(rec, 0);

  result.form = std::move(best);
  result.to_canonical.resize(n);
  for (int pos = 0; pos < n; ++pos) result.to_canonical[best_order[pos]] = pos;
  return result;
}

std::optional<std::vector<int>> is_isomorphic(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return std::nullopt;
  if (p.empty()) return std::vector<int>{};
  Canonical cp = canonical_form(p);
  Canonical cq = canonical_form(q);
  if (cp.form != cq.form) return std::nullopt;
  int n = p.size();
  std::vector<int> from_canonical(n);
  for (int x = 0; x < n; ++x) from_canonical[cq.to_canonical[x]] = x;
  std::vector<int> iso(n);
  for (int x = 0; x < n; ++x) iso[x] = from_canonical[cp.to_canonical[x]];
  return iso;
}

std::vector<uint64_t> upsets_of(const Poset& p) {
  int n = p.size();
  if (n > 25) throw Error("upsets_of: poset too large");
  std::vector<uint64_t> out;
  for (uint64_t m = 0; m < bit(n); ++m) {
    bool closed = true;
    for_each_bit(m, [&](int x) {
      if ((p.up_mask(x) & ~m) != 0) closed = false;
    });
    if (closed) out.push_back(m);
  }
  return out;
}

std::vector<uint64_t> downsets_of(const Poset& p) {
  int n = p.size();
  if (n > 25) throw Error("downsets_of: poset too large");
  std::vector<uint64_t> out;
  for (uint64_t m = 0; m < bit(n); ++m) {
    bool closed = true;
    for_each_bit(m, [&](int x) {
      if ((p.down_mask(x) & ~m) != 0) closed = false;
    });
    if (closed) out.push_back(m);
  }
  return out;
}

namespace {

// New maximal element above the down-closed set dset.
Poset extend_with_max(const Poset& base, uint64_t dset) {
  int n = base.size();
  std::vector<uint64_t> up(n + 1);
  for (int x = 0; x < n; ++x) {
    up[x] = base.up_mask(x);
    if (dset >> x & 1) up[x] |= bit(n);
  }
  up[n] = bit(n);
  return Poset::from_up_masks(n + 1, std::move(up));
}

}  // namespace

std::vector<Poset> enumerate_posets(int n_max, const Budget& budget) {
  if (n_max < 0) return {};
  if (n_max > budget.enum_poset_max)
    throw Error("enumerate_posets: n_max " + std::to_string(n_max) +
                " exceeds budget " + std::to_string(budget.enum_poset_max));
  std::vector<Poset> out;
  out.emplace_back();
  std::vector<Poset> prev = {Poset()};
  for (int k = 1; k <= n_max; ++k) {
    // Every poset of size k is some size k-1 poset plus a maximal element
    // over one of its down-sets; dedupe by canonical form.
    std::map<std::vector<uint64_t>, Poset> level;
    for (const Poset& base : prev)
      for (uint64_t dset : downsets_of(base)) {
        Poset ext = extend_with_max(base, dset);
        Canonical canon = canonical_form(ext);
        level.emplace(std::move(canon.form), std::move(ext));
      }
    prev.clear();
    prev.reserve(level.size());
    for (auto& [form, ps] : level) {
      out.push_back(ps);
      prev.push_back(std::move(ps));
    }
  }
  return out;
}

}  // namespace paq
