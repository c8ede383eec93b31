#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paq/poset.hpp"

namespace paq {

/// Finite p-algebra given by operation tables: a bounded distributive
/// lattice with a pseudocomplement, x meet y = 0 iff x <= star(y).
/// Tables are row-major (entry(a,b) = table[a*size+b]).
struct PAlgebra {
  int size = 0;
  std::vector<int> meet;
  std::vector<int> join;
  std::vector<int> star;
  int zero = 0;
  int one = 0;
  std::vector<std::string> element_names;  // optional
  std::vector<uint64_t> upset_masks;       // set when built by epsilon()

  int m(int a, int b) const { return meet[a * size + b]; }
  int j(int a, int b) const { return join[a * size + b]; }
  bool leq(int a, int b) const { return m(a, b) == a; }
  std::string name(int a) const;
};

struct AlgebraViolation {
  std::string law;
  std::vector<int> witness;
  std::string describe() const;
};

/// Exhaustive table check of all lattice axioms, distributivity, bounds and
/// the pseudocomplement law; nullopt when everything holds. Malformed tables
/// (wrong arity, entries out of range) raise Error instead.
std::optional<AlgebraViolation> check_p_algebra(const PAlgebra& a);

/// The p-algebra of upsets of p: meet is intersection, join is union,
/// star(U) is the complement of the down-closure of U. Element i's upset is
/// upset_masks[i]; masks are in ascending order, so zero = 0 and
/// one = size-1.
PAlgebra epsilon(const Poset& p, const Budget& budget = {});

/// The dual poset: join-irreducible elements under the converse of the
/// lattice order. Accepts any valid finite p-algebra table, not only
/// epsilon() outputs.
Poset delta(const PAlgebra& a);

/// Evaluates the (m+1)-variable identity
///   OR_i star(x_i meet AND_{j != i} star(x_j)) = 1
/// over all assignments, in lexicographic order; satisfied, or the first
/// falsifying tuple.
struct IbmResult {
  bool satisfied = false;
  std::vector<int> falsifier;  // empty when satisfied
};
IbmResult evaluate_ibm(const PAlgebra& a, int m, const Budget& budget = {});

/// Evaluates the identity's left side at one assignment (used to re-check
/// falsifiers independently of the sweep).
int ibm_term(const PAlgebra& a, std::span<const int> assignment);

PAlgebra product(const PAlgebra& a, const PAlgebra& b);

/// An injective homomorphism sub -> into preserving meet, join, star and the
/// bounds, when one exists. Backtracking over the images of sub's
/// join-irreducibles; meant for small algebras (test/verification paths).
std::optional<std::vector<int>> find_embedding(const PAlgebra& sub,
                                               const PAlgebra& into);

/// Table bijection preserving all operations, when one exists.
std::optional<std::vector<int>> algebra_isomorphism(const PAlgebra& a,
                                                    const PAlgebra& b);

}  // namespace paq
