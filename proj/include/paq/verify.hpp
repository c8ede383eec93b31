#pragma once

#include <string>
#include <utility>
#include <vector>

#include "paq/quasivar.hpp"

namespace paq {

/// Machine-checkable verification run. Certificates re-validate through the
/// public operations only; the counterexample (when present) names the exact
/// inputs that refute the claim. Two runs produce identical reports apart
/// from the wall time.
struct CheckReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  bool pass = false;
  std::vector<std::string> lines;
  std::vector<std::pair<std::string, std::string>> certificates;  // label, text
  std::string counterexample;
  double seconds = 0.0;
};

/// Deliberate faults for mutation testing: each one must be caught by the
/// check it is wired into.
enum class SeededFault {
  none,
  drop_maxima_preservation,  // surjection search ignores maxima (duality)
  corrupt_star_table,        // epsilon outputs get a broken star (lemma-mplus1)
  skip_cover_family,         // cover enumeration omits one family (unique-cover)
};

/// The max-set criterion against exhaustive identity evaluation, for all
/// posets of size <= n_max and all 1 <= m <= m_max.
CheckReport check_lemma_mplus1(int n_max, int m_max,
                               SeededFault fault = SeededFault::none,
                               const Budget& budget = {});

/// The m = 2 chain of strict inclusions between the quasivarieties of the
/// three one-pair/two-pair/three-pair reduced posets, with coverage
/// certificates and blockers.
CheckReport check_m2_chain(SeededFault fault = SeededFault::none);

/// Exhaustive cover search over all reduced posets with base m+1 (m = 2 or
/// 3): exactly one minimal quasivariety above the variety, isomorphic to
/// the_cover(m).
CheckReport check_unique_cover(int m, SeededFault fault = SeededFault::none);

/// The three-pair poset has exactly three pp-morphic images: itself, the
/// two-maxima dual, and the point.
CheckReport check_images_of_r(SeededFault fault = SeededFault::none);

/// Both duality round trips plus arrow duality (surjective pp-morphism
/// exists iff the upset algebras embed the other way) over all enumerated
/// posets; n_max <= 5.
CheckReport check_duality(int n_max, SeededFault fault = SeededFault::none,
                          const Budget& budget = {});

/// The default verification battery, in a fixed order.
std::vector<CheckReport> check_all(const Budget& budget = {});

}  // namespace paq
