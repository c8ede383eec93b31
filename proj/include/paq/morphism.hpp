#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paq/poset.hpp"

namespace paq {

/// A maxima-preserving monotone map between finite posets: monotone, and
/// M(map(x)) = map[M(x)] for every x. Carries its endpoints so certificates
/// are self-contained.
struct PpMorphism {
  Poset source;
  Poset target;
  std::vector<int> map;

  uint64_t image_mask() const;
  bool is_surjective() const { return image_mask() == target.all_mask(); }
};

struct PpFailure {
  enum class Kind { arity, monotonicity, maxima };
  Kind kind;
  int element = -1;  // offending source element
  int other = -1;    // second element for monotonicity
  std::string describe() const;
};

/// nullopt when f is a pp-morphism p -> q; otherwise the first failure
/// (arity, then monotonicity by element pair, then maxima by element).
std::optional<PpFailure> check_pp_morphism(std::span<const int> f,
                                           const Poset& p, const Poset& q);
bool is_pp_morphism(std::span<const int> f, const Poset& p, const Poset& q);

/// All pp-morphisms p -> q in lexicographic order of the map array,
/// truncated to limit if given.
std::vector<PpMorphism> enumerate_pp_morphisms(
    const Poset& p, const Poset& q,
    std::optional<size_t> limit = std::nullopt);

/// A surjective pp-morphism p ->> q when one exists. Pruned backtracking:
/// maxima are placed first, the rest of the map extends downward against
/// exact maxima-set candidates.
std::optional<PpMorphism> exists_surjective_pp(const Poset& p, const Poset& q);

/// Which target points lie in the image of at least one pp-morphism from p,
/// with one re-checkable witness per covered point.
struct CoverageReport {
  Poset target;
  uint64_t covered = 0;
  std::vector<PpMorphism> witnesses;
  std::vector<int> witness_of;  // target point -> index into witnesses, -1 if uncovered
};
CoverageReport covered_points(const Poset& p, const Poset& q);

/// Surjection from finitely many copies of p onto q, when one exists. The
/// returned morphisms' images jointly cover q; their count is at most |q|.
struct CopiesSurjection {
  int copies = 0;
  std::vector<PpMorphism> maps;
};
std::optional<CopiesSurjection> exists_surjection_from_copies(const Poset& p,
                                                              const Poset& q);

/// All surjective-pp-morphic images of p, pairwise non-isomorphic, ordered
/// by size then canonical form.
std::vector<Poset> pp_morphic_images(const Poset& p, const Budget& budget = {});

/// g after f; requires f's target size to match g's source size.
PpMorphism compose(const PpMorphism& g, const PpMorphism& f);

}  // namespace paq
