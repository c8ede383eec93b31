#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// deliberately avoid the library's search kernels: brute force over raw maps
// and relations only.

#include <algorithm>
#include <vector>

#include "paq/morphism.hpp"
#include "paq/palgebra.hpp"
#include "paq/poset.hpp"
#include "paq/quasivar.hpp"

namespace fixtures {

using namespace paq;

// The three reduced posets on a 3-element base with non-empty family, in
// canonical element order: 0,1,2 the singleton maxima, then the family pairs
// by value, bottom last.
inline Poset one_pair() { return make_reduced(3, {0b011}).realized; }
inline Poset two_pair() { return make_reduced(3, {0b011, 0b110}).realized; }
inline Poset three_pair() {
  return make_reduced(3, {0b011, 0b101, 0b110}).realized;
}

inline Poset chain(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return Poset::from_pairs(n, pairs);
}

inline Poset antichain(int n) { return Poset::from_pairs(n, {}); }

// All total maps p -> q, odometer order.
template <typename Fn>
void for_all_maps(int domain, int codomain, Fn fn) {
  if (domain == 0) {
    fn(std::vector<int>{});
    return;
  }
  if (codomain == 0) return;
  std::vector<int> f(domain, 0);
  while (true) {
    fn(f);
    int pos = domain - 1;
    while (pos >= 0 && f[pos] == codomain - 1) f[pos--] = 0;
    if (pos < 0) return;
    ++f[pos];
  }
}

// Oracle: every pp-morphism p -> q by filtering all total maps.
inline std::vector<std::vector<int>> all_pp_maps_brute(const Poset& p,
                                                       const Poset& q) {
  std::vector<std::vector<int>> out;
  for_all_maps(p.size(), q.size(), [&](const std::vector<int>& f) {
    if (is_pp_morphism(f, p, q)) out.push_back(f);
  });
  return out;
}

// Oracle: all partial orders on n labeled points, as up-mask tables. Each
// unordered pair independently gets <, > or incomparable; transitivity is
// checked on the closure-free relation.
inline std::vector<std::vector<uint64_t>> all_labeled_orders(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::vector<uint64_t>> out;
  std::vector<int> state(pairs.size(), 0);  // 0 incomparable, 1 i<j, 2 j<i
  while (true) {
    std::vector<uint64_t> up(n);
    for (int i = 0; i < n; ++i) up[i] = bit(i);
    for (size_t k = 0; k < pairs.size(); ++k) {
      if (state[k] == 1) up[pairs[k].first] |= bit(pairs[k].second);
      if (state[k] == 2) up[pairs[k].second] |= bit(pairs[k].first);
    }
    bool transitive = true;
    for (int x = 0; x < n && transitive; ++x)
      for (int y = 0; y < n && transitive; ++y) {
        if (!(up[x] >> y & 1)) continue;
        if (up[y] & ~up[x]) transitive = false;
      }
    if (transitive) out.push_back(up);
    size_t pos = 0;
    while (pos < state.size() && state[pos] == 2) state[pos++] = 0;
    if (pos == state.size()) return out;
    ++state[pos];
  }
}

// The m-atom Boolean algebra with one extra cover of its top, built from raw
// tables (independent of epsilon): elements 0..2^m-1 are the subsets of the
// atom set, element 2^m the added top.
inline PAlgebra bm_algebra(int m) {
  int boolean = 1 << m;
  int top = boolean;  // the extra element
  PAlgebra a;
  a.size = boolean + 1;
  a.meet.resize(static_cast<size_t>(a.size) * a.size);
  a.join.resize(static_cast<size_t>(a.size) * a.size);
  a.star.resize(a.size);
  auto mt = [&](int x, int y) -> int& { return a.meet[x * a.size + y]; };
  auto jn = [&](int x, int y) -> int& { return a.join[x * a.size + y]; };
  for (int x = 0; x < boolean; ++x)
    for (int y = 0; y < boolean; ++y) {
      mt(x, y) = x & y;
      jn(x, y) = x | y;
    }
  for (int x = 0; x <= top; ++x) {
    mt(x, top) = x;
    mt(top, x) = x;
    jn(x, top) = top;
    jn(top, x) = top;
  }
  int full = boolean - 1;
  for (int x = 0; x < boolean; ++x) a.star[x] = x == 0 ? top : (full & ~x);
  a.star[top] = 0;
  a.zero = 0;
  a.one = top;
  return a;
}

}  // namespace fixtures
