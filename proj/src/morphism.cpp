#include "paq/morphism.hpp"

#include <algorithm>
#include <cassert>

namespace paq {

uint64_t PpMorphism::image_mask() const {
  uint64_t m = 0;
  for (int y : map) m |= bit(y);
  return m;
}

std::string PpFailure::describe() const {
  switch (kind) {
    case Kind::arity:
      return "map arity/range error at element " + std::to_string(element);
    case Kind::monotonicity:
      return "monotonicity violated: " + std::to_string(element) +
             " <= " + std::to_string(other) + " but images are not ordered";
    case Kind::maxima:
      return "maxima not preserved at element " + std::to_string(element) +
             ": f[M(x)] != M(f(x))";
  }
  return "";
}

std::optional<PpFailure> check_pp_morphism(std::span<const int> f,
                                           const Poset& p, const Poset& q) {
  if (static_cast<int>(f.size()) != p.size())
    return PpFailure{PpFailure::Kind::arity, static_cast<int>(f.size())};
  for (int x = 0; x < p.size(); ++x)
    if (f[x] < 0 || f[x] >= q.size())
      return PpFailure{PpFailure::Kind::arity, x};
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (x != y && p.leq(x, y) && !q.leq(f[x], f[y]))
        return PpFailure{PpFailure::Kind::monotonicity, x, y};
  for (int x = 0; x < p.size(); ++x) {
    uint64_t image_of_max = 0;
    for_each_bit(p.max_above(x), [&](int t) { image_of_max |= bit(f[t]); });
    if (image_of_max != q.max_above(f[x]))
      return PpFailure{PpFailure::Kind::maxima, x};
  }
  return std::nullopt;
}

bool is_pp_morphism(std::span<const int> f, const Poset& p, const Poset& q) {
  return !check_pp_morphism(f, p, q).has_value();
}

namespace {

// Backtracking over images. Maximal elements are placed first (they must land
// on maximal elements and determine f[M(x)] for everything below); each
// remaining element then has an exact candidate set {y : M(y) = f[M(x)]}.
// In surjective / must-hit modes, branches die as soon as a needed target
// point can no longer be reached.
struct Kernel {
  const Poset& p;
  const Poset& q;
  bool surjective = false;
  int must_hit = -1;
  bool collect_all = false;
  size_t collect_cap = 2'000'000;

  std::vector<int> maxima;  // p's maximal elements, ascending
  std::vector<int> nonmax;  // the rest, ascending
  std::vector<int> f;
  uint64_t assigned = 0;
  uint64_t image = 0;
  std::vector<int> assigned_list;
  std::vector<std::vector<int>> found;
  bool done = false;

  Kernel(const Poset& p_, const Poset& q_) : p(p_), q(q_) {
    for (int x = 0; x < p.size(); ++x)
      (p.is_maximal(x) ? maxima : nonmax).push_back(x);
    f.assign(p.size(), -1);
  }

  bool constrained() const { return surjective || must_hit >= 0; }

  // Sound over-approximation of the target points this branch can still put
  // in the image. A maximal target is reachable while any maximal source is
  // unplaced; other targets y need some unplaced source x whose placed maxima
  // already sit inside M(y) with enough unplaced maxima left to fill it.
  uint64_t reachable() const {
    uint64_t hit = image;
    if (static_cast<int>(assigned_list.size()) <
        static_cast<int>(maxima.size()))
      hit |= q.maximal_mask();
    for (int x : nonmax) {
      if (assigned >> x & 1) continue;
      uint64_t placed_img = 0;
      int unplaced = 0;
      for_each_bit(p.max_above(x), [&](int t) {
        if (assigned >> t & 1)
          placed_img |= bit(f[t]);
        else
          ++unplaced;
      });
      for (int y = 0; y < q.size(); ++y) {
        if (hit >> y & 1) continue;
        uint64_t need = q.max_above(y);
        if ((placed_img & ~need) == 0 &&
            popcount(need & ~placed_img) <= unplaced)
          hit |= bit(y);
      }
    }
    return hit;
  }

  bool prune() const {
    if (!constrained()) return false;
    int unplaced = p.size() - static_cast<int>(assigned_list.size());
    if (surjective && popcount(q.all_mask() & ~image) > unplaced) return true;
    uint64_t hit = reachable();
    if (surjective && hit != q.all_mask()) return true;
    if (must_hit >= 0 && !(hit >> must_hit & 1)) return true;
    return false;
  }

  void leaf() {
    if (surjective && image != q.all_mask()) return;
    if (must_hit >= 0 && !(image >> must_hit & 1)) return;
    assert(is_pp_morphism(f, p, q));
    if (found.size() >= collect_cap)
      throw Error("pp-morphism enumeration exceeds cap");
    found.push_back(f);
    if (!collect_all) done = true;
  }

  void place(int x, int y) {
    f[x] = y;
    assigned |= bit(x);
    image |= bit(y);
    assigned_list.push_back(x);
  }

  void unplace(int x) {
    assigned_list.pop_back();
    assigned &= ~bit(x);
    f[x] = -1;
    image = 0;
    for (int z : assigned_list) image |= bit(f[z]);
  }

  bool monotone_ok(int x, int y) const {
    for (int z : assigned_list) {
      if (p.leq(z, x) && !q.leq(f[z], y)) return false;
      if (p.leq(x, z) && !q.leq(y, f[z])) return false;
    }
    return true;
  }

  void extend(const std::vector<int>& order, size_t i) {
    if (done) return;
    if (i == order.size()) {
      leaf();
      return;
    }
    if (prune()) return;
    int x = order[i];
    uint64_t need = 0;
    for_each_bit(p.max_above(x), [&](int t) { need |= bit(f[t]); });
    for (int y = 0; y < q.size() && !done; ++y) {
      if (q.max_above(y) != need) continue;
      if (!monotone_ok(x, y)) continue;
      place(x, y);
      extend(order, i + 1);
      unplace(x);
    }
  }

  void assign_maxima(size_t i) {
    if (done) return;
    if (i == maxima.size()) {
      // All of f[M(x)] is now fixed; order the rest by candidate count.
      std::vector<std::pair<int, int>> rest;
      for (int x : nonmax) {
        uint64_t need = 0;
        for_each_bit(p.max_above(x), [&](int t) { need |= bit(f[t]); });
        int count = 0;
        for (int y = 0; y < q.size(); ++y)
          if (q.max_above(y) == need) ++count;
        if (count == 0) return;
        rest.emplace_back(count, x);
      }
      std::sort(rest.begin(), rest.end());
      std::vector<int> order;
      order.reserve(rest.size());
      for (auto& [c, x] : rest) order.push_back(x);
      extend(order, 0);
      return;
    }
    if (prune()) return;
    int x = maxima[i];
    uint64_t targets = q.maximal_mask();
    for (int y = 0; y < q.size() && !done; ++y) {
      if (!(targets >> y & 1)) continue;
      place(x, y);
      assign_maxima(i + 1);
      unplace(x);
    }
  }

  void run() {
    if (p.empty()) {
      if (surjective && !q.empty()) return;
      if (must_hit >= 0) return;
      found.push_back({});
      return;
    }
    if (q.empty()) return;
    assign_maxima(0);
  }
};

PpMorphism wrap(const Poset& p, const Poset& q, std::vector<int> map) {
  return PpMorphism{p, q, std::move(map)};
}

}  // namespace

std::vector<PpMorphism> enumerate_pp_morphisms(const Poset& p, const Poset& q,
                                               std::optional<size_t> limit) {
  Kernel k(p, q);
  k.collect_all = true;
  k.run();
  std::sort(k.found.begin(), k.found.end());
  if (limit && k.found.size() > *limit) k.found.resize(*limit);
  std::vector<PpMorphism> out;
  out.reserve(k.found.size());
  for (auto& m : k.found) out.push_back(wrap(p, q, std::move(m)));
  return out;
}

std::optional<PpMorphism> exists_surjective_pp(const Poset& p,
                                               const Poset& q) {
  Kernel k(p, q);
  k.surjective = true;
  k.run();
  if (k.found.empty()) return std::nullopt;
  return wrap(p, q, std::move(k.found.front()));
}

CoverageReport covered_points(const Poset& p, const Poset& q) {
  Kernel k(p, q);
  k.collect_all = true;
  k.run();

  CoverageReport report;
  report.target = q;
  report.witness_of.assign(q.size(), -1);
  std::vector<uint64_t> images;
  images.reserve(k.found.size());
  for (const auto& m : k.found) {
    uint64_t img = 0;
    for (int y : m) img |= bit(y);
    images.push_back(img);
    report.covered |= img;
  }

  // One witness per uncovered-frontier point: for each target point in turn,
  // if no selected witness reaches it, pick the map through it that covers
  // the most still-unwitnessed points (ties to the lexicographically least
  // map). Not globally optimized.
  uint64_t witnessed = 0;
  std::vector<size_t> selected;
  for (int y = 0; y < q.size(); ++y) {
    if (!(report.covered >> y & 1)) continue;
    if (!(witnessed >> y & 1)) {
      size_t best = k.found.size();
      int best_gain = -1;
      for (size_t i = 0; i < k.found.size(); ++i) {
        if (!(images[i] >> y & 1)) continue;
        int gain = popcount(images[i] & ~witnessed);
        if (gain > best_gain ||
            (gain == best_gain && best < k.found.size() &&
             k.found[i] < k.found[best])) {
          best_gain = gain;
          best = i;
        }
      }
      selected.push_back(best);
      witnessed |= images[best];
      report.witnesses.push_back(wrap(p, q, k.found[best]));
    }
    for (size_t s = 0; s < selected.size(); ++s)
      if (images[selected[s]] >> y & 1) {
        report.witness_of[y] = static_cast<int>(s);
        break;
      }
  }
  return report;
}

std::optional<CopiesSurjection> exists_surjection_from_copies(const Poset& p,
                                                              const Poset& q) {
  CoverageReport cov = covered_points(p, q);
  if (cov.covered != q.all_mask()) return std::nullopt;
  CopiesSurjection out;
  out.copies = static_cast<int>(cov.witnesses.size());
  out.maps = std::move(cov.witnesses);
  return out;
}

std::vector<Poset> pp_morphic_images(const Poset& p, const Budget& budget) {
  if (p.size() > budget.images_poset_max)
    throw Error("pp_morphic_images: poset size exceeds budget " +
                std::to_string(budget.images_poset_max));
  Budget inner = budget;
  inner.enum_poset_max = std::max(inner.enum_poset_max, p.size());
  int source_maxima = popcount(p.maximal_mask());
  int largest_maxset = 0;
  for (int x = 0; x < p.size(); ++x)
    largest_maxset = std::max(largest_maxset, popcount(p.max_above(x)));

  std::vector<Poset> out;
  for (const Poset& q : enumerate_posets(p.size(), inner)) {
    if (popcount(q.maximal_mask()) > source_maxima) continue;
    bool feasible = true;
    for (int y = 0; y < q.size(); ++y)
      if (popcount(q.max_above(y)) > largest_maxset) feasible = false;
    if (!feasible) continue;
    if (q.empty() != p.empty()) continue;
    if (exists_surjective_pp(p, q)) out.push_back(q);
  }
  return out;
}

PpMorphism compose(const PpMorphism& g, const PpMorphism& f) {
  if (g.source.size() != f.target.size())
    throw Error("compose: inner posets have different sizes");
  std::vector<int> map(f.map.size());
  for (size_t x = 0; x < f.map.size(); ++x) map[x] = g.map[f.map[x]];
  return PpMorphism{f.source, g.target, std::move(map)};
}

}  // namespace paq
