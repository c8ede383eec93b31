#include "paq/palgebra.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>

namespace paq {

std::string PAlgebra::name(int a) const {
  if (a < static_cast<int>(element_names.size()) && !element_names[a].empty())
    return element_names[a];
  return std::to_string(a);
}

std::string AlgebraViolation::describe() const {
  std::string s = law + " violated at (";
  for (size_t i = 0; i < witness.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(witness[i]);
  }
  return s + ")";
}

namespace {

void check_tables(const PAlgebra& a) {
  int n = a.size;
  if (n <= 0) throw Error("p-algebra must have at least one element");
  size_t nn = static_cast<size_t>(n) * n;
  if (a.meet.size() != nn || a.join.size() != nn ||
      a.star.size() != static_cast<size_t>(n))
    throw Error("p-algebra tables are not total");
  auto in_range = [n](int v) { return v >= 0 && v < n; };
  for (int v : a.meet)
    if (!in_range(v)) throw Error("meet table entry out of range");
  for (int v : a.join)
    if (!in_range(v)) throw Error("join table entry out of range");
  for (int v : a.star)
    if (!in_range(v)) throw Error("star table entry out of range");
  if (!in_range(a.zero) || !in_range(a.one))
    throw Error("zero/one out of range");
}

}  // namespace

std::optional<AlgebraViolation> check_p_algebra(const PAlgebra& a) {
  check_tables(a);
  int n = a.size;
  for (int x = 0; x < n; ++x) {
    if (a.m(x, x) != x) return AlgebraViolation{"meet-idempotence", {x}};
    if (a.j(x, x) != x) return AlgebraViolation{"join-idempotence", {x}};
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (a.m(x, y) != a.m(y, x))
        return AlgebraViolation{"meet-commutativity", {x, y}};
      if (a.j(x, y) != a.j(y, x))
        return AlgebraViolation{"join-commutativity", {x, y}};
      if (a.m(x, a.j(x, y)) != x)
        return AlgebraViolation{"absorption", {x, y}};
      if (a.j(x, a.m(x, y)) != x)
        return AlgebraViolation{"absorption", {x, y}};
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (a.m(a.m(x, y), z) != a.m(x, a.m(y, z)))
          return AlgebraViolation{"meet-associativity", {x, y, z}};
        if (a.j(a.j(x, y), z) != a.j(x, a.j(y, z)))
          return AlgebraViolation{"join-associativity", {x, y, z}};
      }
  for (int x = 0; x < n; ++x) {
    if (a.m(x, a.zero) != a.zero) return AlgebraViolation{"bounds", {x}};
    if (a.j(x, a.one) != a.one) return AlgebraViolation{"bounds", {x}};
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (a.m(x, a.j(y, z)) != a.j(a.m(x, y), a.m(x, z)))
          return AlgebraViolation{"distributivity", {x, y, z}};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      bool disjoint = a.m(x, y) == a.zero;
      bool below_star = a.leq(x, a.star[y]);
      if (disjoint != below_star)
        return AlgebraViolation{"pseudocomplement", {x, y}};
    }
  return std::nullopt;
}

PAlgebra epsilon(const Poset& p, const Budget& budget) {
  if (p.size() > budget.epsilon_poset_max)
    throw Error("epsilon: poset size exceeds budget " +
                std::to_string(budget.epsilon_poset_max));
  std::vector<uint64_t> ups = upsets_of(p);
  long long n = static_cast<long long>(ups.size());
  if (n > budget.epsilon_algebra_max)
    throw Error("epsilon: " + std::to_string(n) +
                " upsets exceed the algebra budget " +
                std::to_string(budget.epsilon_algebra_max));

  auto index_of = [&](uint64_t m) {
    auto it = std::lower_bound(ups.begin(), ups.end(), m);
    assert(it != ups.end() && *it == m);
    return static_cast<int>(it - ups.begin());
  };

  PAlgebra a;
  a.size = static_cast<int>(n);
  a.meet.resize(n * n);
  a.join.resize(n * n);
  a.star.resize(n);
  for (int i = 0; i < a.size; ++i)
    for (int k = 0; k < a.size; ++k) {
      a.meet[i * a.size + k] = index_of(ups[i] & ups[k]);
      a.join[i * a.size + k] = index_of(ups[i] | ups[k]);
    }
  for (int i = 0; i < a.size; ++i) {
    // Largest upset disjoint from ups[i]: everything outside its down-closure.
    uint64_t s = 0;
    for (int x = 0; x < p.size(); ++x)
      if ((p.up_mask(x) & ups[i]) == 0) s |= bit(x);
    a.star[i] = index_of(s);
  }
  a.zero = index_of(0);
  a.one = index_of(p.all_mask());
  a.upset_masks = std::move(ups);
  a.element_names.reserve(n);
  for (uint64_t m : a.upset_masks) {
    std::string name = "{";
    bool first = true;
    for_each_bit(m, [&](int x) {
      if (!first) name += ",";
      name += p.label(x);
      first = false;
    });
    a.element_names.push_back(name + "}");
  }
  return a;
}

Poset delta(const PAlgebra& a) {
  if (auto bad = check_p_algebra(a))
    throw Error("delta: invalid p-algebra: " + bad->describe());
  // x is join-irreducible iff the join of its strict lower set falls short
  // of x (finite lattice).
  std::vector<int> ji;
  for (int x = 0; x < a.size; ++x) {
    if (x == a.zero) continue;
    int below = a.zero;
    for (int u = 0; u < a.size; ++u)
      if (u != x && a.leq(u, x)) below = a.j(below, u);
    if (below != x) ji.push_back(x);
  }
  int n = static_cast<int>(ji.size());
  std::vector<uint64_t> up(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a.leq(ji[k], ji[i]))  // converse of the lattice order
        up[i] |= bit(k);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int x : ji) labels.push_back(a.name(x));
  return Poset::from_up_masks(n, std::move(up), std::move(labels));
}

int ibm_term(const PAlgebra& a, std::span<const int> assignment) {
  int acc = a.zero;
  int vars = static_cast<int>(assignment.size());
  for (int i = 0; i < vars; ++i) {
    int inner = assignment[i];
    for (int k = 0; k < vars; ++k)
      if (k != i) inner = a.m(inner, a.star[assignment[k]]);
    acc = a.j(acc, a.star[inner]);
  }
  return acc;
}

IbmResult evaluate_ibm(const PAlgebra& a, int m, const Budget& budget) {
  if (m < 1) throw Error("evaluate_ibm: m must be positive");
  check_tables(a);
  int vars = m + 1;
  long long total = 1;
  for (int i = 0; i < vars; ++i) {
    if (total > budget.ibm_tuple_budget / a.size)
      throw Error("evaluate_ibm: assignment space exceeds the budget");
    total *= a.size;
  }

  // Stripe on the first variable; each worker scans its stripes in
  // lexicographic order, and the overall first falsifier is the one from the
  // least stripe.
  std::vector<std::vector<int>> first_in_stripe(a.size);
  std::atomic<int> best_stripe{a.size};
  auto scan = [&](long long lo, long long hi) {
    std::vector<int> t(vars);
    for (long long s = lo; s < hi; ++s) {
      if (static_cast<int>(s) >= best_stripe.load()) return;
      std::fill(t.begin(), t.end(), 0);
      t[0] = static_cast<int>(s);
      while (true) {
        if (ibm_term(a, t) != a.one) {
          first_in_stripe[s] = t;
          int cur = best_stripe.load();
          while (static_cast<int>(s) < cur &&
                 !best_stripe.compare_exchange_weak(cur, static_cast<int>(s)))
            ;
          break;
        }
        int pos = vars - 1;
        while (pos >= 1 && t[pos] == a.size - 1) t[pos--] = 0;
        if (pos < 1) break;
        ++t[pos];
      }
    }
  };
  int jobs = total > 1'000'000 ? budget.jobs : 1;
  parallel_chunks(a.size, jobs, scan);

  IbmResult r;
  for (int s = 0; s < a.size; ++s)
    if (!first_in_stripe[s].empty()) {
      r.satisfied = false;
      r.falsifier = first_in_stripe[s];
      return r;
    }
  r.satisfied = true;
  return r;
}

PAlgebra product(const PAlgebra& a, const PAlgebra& b) {
  check_tables(a);
  check_tables(b);
  PAlgebra c;
  c.size = a.size * b.size;
  auto enc = [&](int x, int y) { return x * b.size + y; };
  c.meet.resize(static_cast<size_t>(c.size) * c.size);
  c.join.resize(static_cast<size_t>(c.size) * c.size);
  c.star.resize(c.size);
  for (int x1 = 0; x1 < a.size; ++x1)
    for (int y1 = 0; y1 < b.size; ++y1) {
      int e1 = enc(x1, y1);
      c.star[e1] = enc(a.star[x1], b.star[y1]);
      for (int x2 = 0; x2 < a.size; ++x2)
        for (int y2 = 0; y2 < b.size; ++y2) {
          int e2 = enc(x2, y2);
          c.meet[e1 * c.size + e2] = enc(a.m(x1, x2), b.m(y1, y2));
          c.join[e1 * c.size + e2] = enc(a.j(x1, x2), b.j(y1, y2));
        }
    }
  c.zero = enc(a.zero, b.zero);
  c.one = enc(a.one, b.one);
  return c;
}

namespace {

// Embedding search. Images of join-irreducibles determine the whole map
// (every element is the join of the irreducibles below it), so only those
// branch; assigned irreducibles must agree with the source order both ways
// and stay injective. The completed map is verified against the full tables.
struct EmbedSearch {
  const PAlgebra& a;
  const PAlgebra& b;
  std::vector<int> ji;
  std::vector<int> img;
  std::vector<bool> used;
  std::optional<std::vector<int>> result;

  EmbedSearch(const PAlgebra& a_, const PAlgebra& b_) : a(a_), b(b_) {
    for (int x = 0; x < a.size; ++x) {
      if (x == a.zero) continue;
      int below = a.zero;
      for (int u = 0; u < a.size; ++u)
        if (u != x && a.leq(u, x)) below = a.j(below, u);
      if (below != x) ji.push_back(x);
    }
    img.assign(ji.size(), -1);
    used.assign(b.size, false);
  }

  bool complete_and_check() {
    std::vector<int> phi(a.size);
    for (int x = 0; x < a.size; ++x) {
      int v = b.zero;
      for (size_t i = 0; i < ji.size(); ++i)
        if (a.leq(ji[i], x)) v = b.j(v, img[i]);
      phi[x] = v;
    }
    if (phi[a.one] != b.one) return false;
    std::vector<bool> seen(b.size, false);
    for (int v : phi) {
      if (seen[v]) return false;
      seen[v] = true;
    }
    for (int x = 0; x < a.size; ++x) {
      if (b.star[phi[x]] != phi[a.star[x]]) return false;
      for (int y = 0; y < a.size; ++y) {
        if (b.m(phi[x], phi[y]) != phi[a.m(x, y)]) return false;
        if (b.j(phi[x], phi[y]) != phi[a.j(x, y)]) return false;
      }
    }
    result = std::move(phi);
    return true;
  }

  bool rec(size_t i) {
    if (i == ji.size()) return complete_and_check();
    for (int v = 0; v < b.size; ++v) {
      if (used[v] || v == b.zero) continue;
      bool ok = true;
      for (size_t k = 0; k < i && ok; ++k) {
        bool src = a.leq(ji[k], ji[i]);
        if (src != b.leq(img[k], v)) ok = false;
        bool src2 = a.leq(ji[i], ji[k]);
        if (src2 != b.leq(v, img[k])) ok = false;
      }
      if (!ok) continue;
      img[i] = v;
      used[v] = true;
      if (rec(i + 1)) return true;
      used[v] = false;
      img[i] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> find_embedding(const PAlgebra& sub,
                                               const PAlgebra& into) {
  check_tables(sub);
  check_tables(into);
  if (sub.size > into.size) return std::nullopt;
  EmbedSearch s(sub, into);
  s.rec(0);
  return s.result;
}

std::optional<std::vector<int>> algebra_isomorphism(const PAlgebra& a,
                                                    const PAlgebra& b) {
  if (a.size != b.size) return std::nullopt;
  return find_embedding(a, b);  // injective + equal size = bijective
}

}  // namespace paq
