#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paq/common.hpp"

namespace paq {

/// Finite poset on elements 0..n-1, n <= 64. The order is stored as full
/// up-set bit rows: bit y of up_mask(x) means x <= y. Values are immutable
/// after construction; every operation below is a pure function.
class Poset {
 public:
  Poset() = default;  // the empty poset

  /// Takes the relation verbatim (no closure, no reflexive fill). Pair with
  /// validate() when the rows come from an untrusted source.
  static Poset from_up_masks(int n, std::vector<uint64_t> up,
                             std::vector<std::string> labels = {});

  /// Reflexive-transitive closure of the given pairs (i <= j). Antisymmetry
  /// is not enforced here; loaders validate afterwards.
  static Poset from_pairs(int n, std::span<const std::pair<int, int>> pairs,
                          std::vector<std::string> labels = {});
  static Poset from_pairs(int n,
                          std::initializer_list<std::pair<int, int>> pairs,
                          std::vector<std::string> labels = {}) {
    return from_pairs(
        n, std::span<const std::pair<int, int>>(pairs.begin(), pairs.size()),
        std::move(labels));
  }

  int size() const { return n_; }
  bool empty() const { return n_ == 0; }
  bool leq(int x, int y) const { return up_[x] >> y & 1; }
  uint64_t up_mask(int x) const { return up_[x]; }
  uint64_t down_mask(int x) const;
  uint64_t all_mask() const { return mask_n(n_); }
  uint64_t maximal_mask() const { return max_mask_; }
  bool is_maximal(int x) const { return max_mask_ >> x & 1; }
  /// M(x): the maximal elements above x.
  uint64_t max_above(int x) const { return up_[x] & max_mask_; }

  bool has_labels() const;
  /// Stored label, or the decimal index when none was set.
  std::string label(int x) const;
  const std::vector<std::string>& raw_labels() const { return labels_; }
  Poset with_labels(std::vector<std::string> labels) const;

  /// Cover relation (x covered by y), derived on demand for display.
  std::vector<std::pair<int, int>> cover_pairs() const;

 private:
  int n_ = 0;
  std::vector<uint64_t> up_;
  uint64_t max_mask_ = 0;
  std::vector<std::string> labels_;
};

/// M(x) together with its owner; the shape used by certificates and reports.
struct MaxSet {
  int owner = -1;
  uint64_t maxima = 0;
};

struct OrderViolation {
  std::string axiom;         // "reflexivity" | "antisymmetry" | "transitivity"
  std::vector<int> witness;  // 1, 2 or 3 elements
  std::string describe() const;
};

/// Checks the three order axioms; reports the first violation found
/// (reflexivity, then antisymmetry, then transitivity, witnesses in
/// ascending element order).
std::optional<OrderViolation> validate(const Poset& p);

MaxSet maximal_above(const Poset& p, int x);

/// One bottom below m pairwise-incomparable maxima (m+1 elements); the
/// one-point poset for m = 0.
Poset make_bm_poset(int m);

struct DisjointUnion {
  Poset poset;
  std::vector<int> component;  // element -> input index
  std::vector<int> offset;     // input index -> first element
};
DisjointUnion disjoint_union(std::span<const Poset> parts);
inline DisjointUnion disjoint_union(std::initializer_list<Poset> parts) {
  return disjoint_union(std::span<const Poset>(parts.begin(), parts.size()));
}

struct Canonical {
  std::vector<int> to_canonical;  // old index -> canonical index
  std::vector<uint64_t> form;     // up rows under the canonical labeling
};

/// Canonical relabeling: iterative up/down refinement, then backtracking for
/// the lexicographically least relabeled relation. Label-independent.
Canonical canonical_form(const Poset& p);

/// An order-isomorphism p -> q when one exists (element i of p maps to
/// result[i]); nullopt otherwise.
std::optional<std::vector<int>> is_isomorphic(const Poset& p, const Poset& q);

/// All posets of size 0..n_max, one per isomorphism class, ordered by size
/// then canonical form.
std::vector<Poset> enumerate_posets(int n_max, const Budget& budget = {});

/// All up-closed subsets as bit masks, ascending. Requires size <= 25.
std::vector<uint64_t> upsets_of(const Poset& p);
/// All down-closed subsets as bit masks, ascending. Requires size <= 25.
std::vector<uint64_t> downsets_of(const Poset& p);

}  // namespace paq
