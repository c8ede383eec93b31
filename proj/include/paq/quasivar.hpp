#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "paq/morphism.hpp"
#include "paq/poset.hpp"

namespace paq {

/// Poset of subsets of a base {0..base_size-1} ordered by reverse inclusion:
/// the base itself (bottom), all singletons (the maxima), and the family
/// members. Family members equal to the base or to a singleton are absorbed.
struct ReducedPoset {
  int base_size = 0;
  std::vector<uint32_t> family;   // canonical: popcount >= 2, != base, sorted
  std::vector<uint32_t> carrier;  // per realized element, sorted by (size, value)
  Poset realized;
};

ReducedPoset make_reduced(int base_size, std::vector<uint32_t> family);

/// Whether the upset algebra of x lies in the m-th variety, decided by the
/// max-set criterion: every element has at most m maximal elements above it.
/// No algebra is built.
bool in_pa_m(const Poset& x, int m);

/// Witness that the m-th variety is contained in the quasivariety generated
/// by x's upset algebra: a surjective pp-morphism onto make_bm_poset(m).
std::optional<PpMorphism> contains_pa_m(const Poset& x, int m);

/// Membership of x's upset algebra in the quasivariety generated by the
/// upset algebras of gens: every point of x must be covered by the image of
/// a pp-morphism from some generator.
struct MembershipCertificate {
  enum class Verdict { member, non_member };
  Verdict verdict = Verdict::non_member;
  std::vector<PpMorphism> witnesses;
  std::vector<int> witness_gen;  // generator index per witness
  std::vector<int> witness_of;   // target point -> witness index (-1 uncovered)
  int blocker = -1;              // first uncovered point (non-member case)

  bool is_member() const { return verdict == Verdict::member; }
};
MembershipCertificate member(const Poset& x, std::span<const Poset> gens);

/// Quasivariety order on single generators: generated-by-p included in
/// generated-by-q, decided via member(p, [q]).
bool quasivariety_leq(const Poset& p, const Poset& q);

/// The reduction: distinct max-sets of p ordered by reverse inclusion,
/// together with the canonical map x -> M(x) (a surjective pp-morphism).
struct Reduction {
  Poset poset;
  std::vector<int> map;           // p element -> reduction element
  std::vector<uint64_t> maxsets;  // reduction element -> max-set in p
};
Reduction reduction(const Poset& p);

/// Collapses the base to exactly m+1 blocks along the fibers of a found
/// surjection onto make_bm_poset(m), splitting the largest block (ties to
/// the lexicographically first) until m+1 remain. The result keeps the m-th
/// variety below it and stays inside the quasivariety generated by p; both
/// inclusions are re-checked.
ReducedPoset shrink_to_base(const ReducedPoset& p, int m);

/// Whether the family fits inside {{a,b}, M-{a}, M-{b}} for some distinct
/// base elements a, b (the containment criterion for bases of size m+1);
/// reports the lexicographically smallest witness pair.
struct AdmitsResult {
  bool admits = false;
  int a = -1;
  int b = -1;
};
AdmitsResult family_admits_pa_m(int base_size,
                                std::span<const uint32_t> family, int m);

/// The reduced poset on m+1 base elements whose family is the full set
/// {{a,b}, M-{a}, M-{b}} for the two lexicographically first base elements.
ReducedPoset the_cover(int m);

/// Whether p generates a cover: its family must be the full three-member
/// set for some base pair. With cross_check (m <= 3 only), the answer is
/// compared against an exhaustive search for strictly intermediate
/// quasivarieties over all reduced posets on the same base.
bool is_cover_among_reduced(const ReducedPoset& p, int m,
                            bool cross_check = false);

/// All families of subsets of sizes 2..m over a base of size m+1, in a fixed
/// order (the power set of the candidate list). Shared by the cover checks.
std::vector<std::vector<uint32_t>> enumerate_reduced_families(int m);

}  // namespace paq
