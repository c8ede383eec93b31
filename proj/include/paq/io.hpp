#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "paq/morphism.hpp"
#include "paq/palgebra.hpp"
#include "paq/poset.hpp"
#include "paq/quasivar.hpp"

namespace paq::io {

// Line-oriented text formats. '#' starts a comment in all of them.
//
//   poset <n>            header; then `le <i> <j>` and `label <i> <text>`
//   palg <n>             header; then `meet <i> <j> <k>`, `join <i> <j> <k>`,
//                        `star <i> <k>`, `zero <i>`, `one <i>`
//   ppmap <k>            header; then k `pair <src> <dst>` lines; a file may
//                        hold several blocks
//   reduced <n>          header (base size); then `set <i,j,...>` per family
//                        member

/// Reads a poset, applying the reflexive-transitive closure and validating
/// the result (Error on antisymmetry violations).
Poset read_poset(std::istream& in);
/// Reads the relation verbatim: no closure, no reflexive fill. For auditing
/// raw relations with validate().
Poset read_poset_raw(std::istream& in);
void write_poset(std::ostream& out, const Poset& p);

PAlgebra read_palgebra(std::istream& in);
void write_palgebra(std::ostream& out, const PAlgebra& a);

std::vector<std::vector<int>> read_ppmaps(std::istream& in);
void write_ppmap(std::ostream& out, std::span<const int> map);
void write_ppmaps(std::ostream& out, std::span<const PpMorphism> maps);
std::string ppmaps_text(std::span<const PpMorphism> maps);

ReducedPoset read_reduced(std::istream& in);
void write_reduced(std::ostream& out, const ReducedPoset& r);

/// Hasse diagram in DOT, covers only, maxima drawn at the top rank.
std::string to_dot(const Poset& p);

// File conveniences; Error with the path on open failure.
Poset load_poset(const std::string& path, bool raw = false);
PAlgebra load_palgebra(const std::string& path);
std::vector<std::vector<int>> load_ppmaps(const std::string& path);
ReducedPoset load_reduced(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace paq::io
