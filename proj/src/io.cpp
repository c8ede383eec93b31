#include "paq/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace paq::io {

namespace {

struct Lines {
  std::istream& in;
  int number = 0;

  // Next meaningful line, split into tokens; comments and blanks skipped.
  bool next(std::vector<std::string>& tokens, std::string& raw) {
    std::string line;
    while (std::getline(in, line)) {
      ++number;
      size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ss(line);
      tokens.clear();
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (!tokens.empty()) {
        raw = line;
        return true;
      }
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("line " + std::to_string(number) + ": " + what);
  }

  int to_int(const std::string& tok) const {
    try {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw Error("");
      return v;
    } catch (...) {
      fail("expected an integer, got '" + tok + "'");
    }
  }
};

Poset read_poset_impl(std::istream& in, bool closure) {
  Lines lines{in};
  std::vector<std::string> t;
  std::string raw;
  if (!lines.next(t, raw) || t[0] != "poset" || t.size() != 2)
    lines.fail("expected 'poset <n>'");
  int n = lines.to_int(t[1]);
  if (n < 0 || n > 64) lines.fail("poset size out of range");

  std::vector<std::pair<int, int>> pairs;
  std::vector<std::string> labels(n);
  bool any_label = false;
  while (lines.next(t, raw)) {
    if (t[0] == "le" && t.size() == 3) {
      int i = lines.to_int(t[1]), j = lines.to_int(t[2]);
      if (i < 0 || i >= n || j < 0 || j >= n) lines.fail("element out of range");
      pairs.emplace_back(i, j);
    } else if (t[0] == "label" && t.size() >= 3) {
      int i = lines.to_int(t[1]);
      if (i < 0 || i >= n) lines.fail("element out of range");
      size_t at = raw.find(t[1]);
      at = raw.find_first_not_of(" \t", at + t[1].size());
      labels[i] = raw.substr(at);
      any_label = true;
    } else {
      lines.fail("unknown directive '" + t[0] + "'");
    }
  }
  if (!any_label) labels.clear();

  if (closure) {
    Poset p = Poset::from_pairs(n, pairs, std::move(labels));
    if (auto bad = validate(p)) throw Error("invalid order: " + bad->describe());
    return p;
  }
  std::vector<uint64_t> up(n, 0);
  for (auto [i, j] : pairs) up[i] |= bit(j);
  return Poset::from_up_masks(n, std::move(up), std::move(labels));
}

}  // namespace

Poset read_poset(std::istream& in) { return read_poset_impl(in, true); }
Poset read_poset_raw(std::istream& in) { return read_poset_impl(in, false); }

void write_poset(std::ostream& out, const Poset& p) {
  out << "poset " << p.size() << "\n";
  for (auto [x, y] : p.cover_pairs()) out << "le " << x << " " << y << "\n";
  if (p.has_labels())
    for (int x = 0; x < p.size(); ++x)
      out << "label " << x << " " << p.label(x) << "\n";
}

PAlgebra read_palgebra(std::istream& in) {
  Lines lines{in};
  std::vector<std::string> t;
  std::string raw;
  if (!lines.next(t, raw) || t[0] != "palg" || t.size() != 2)
    lines.fail("expected 'palg <n>'");
  int n = lines.to_int(t[1]);
  if (n < 1) lines.fail("algebra size must be positive");

  PAlgebra a;
  a.size = n;
  a.meet.assign(static_cast<size_t>(n) * n, -1);
  a.join.assign(static_cast<size_t>(n) * n, -1);
  a.star.assign(n, -1);
  a.zero = a.one = -1;
  auto elem = [&](const std::string& tok) {
    int v = lines.to_int(tok);
    if (v < 0 || v >= n) lines.fail("element out of range");
    return v;
  };
  while (lines.next(t, raw)) {
    if (t[0] == "meet" && t.size() == 4)
      a.meet[elem(t[1]) * n + elem(t[2])] = elem(t[3]);
    else if (t[0] == "join" && t.size() == 4)
      a.join[elem(t[1]) * n + elem(t[2])] = elem(t[3]);
    else if (t[0] == "star" && t.size() == 3)
      a.star[elem(t[1])] = elem(t[2]);
    else if (t[0] == "zero" && t.size() == 2)
      a.zero = elem(t[1]);
    else if (t[0] == "one" && t.size() == 2)
      a.one = elem(t[1]);
    else
      lines.fail("unknown directive '" + t[0] + "'");
  }
  for (int v : a.meet)
    if (v < 0) throw Error("meet table incomplete");
  for (int v : a.join)
    if (v < 0) throw Error("join table incomplete");
  for (int v : a.star)
    if (v < 0) throw Error("star table incomplete");
  if (a.zero < 0 || a.one < 0) throw Error("zero/one missing");
  return a;
}

void write_palgebra(std::ostream& out, const PAlgebra& a) {
  out << "palg " << a.size << "\n";
  out << "zero " << a.zero << "\n";
  out << "one " << a.one << "\n";
  for (int i = 0; i < a.size; ++i) out << "star " << i << " " << a.star[i] << "\n";
  for (int i = 0; i < a.size; ++i)
    for (int k = 0; k < a.size; ++k)
      out << "meet " << i << " " << k << " " << a.m(i, k) << "\n";
  for (int i = 0; i < a.size; ++i)
    for (int k = 0; k < a.size; ++k)
      out << "join " << i << " " << k << " " << a.j(i, k) << "\n";
}

std::vector<std::vector<int>> read_ppmaps(std::istream& in) {
  Lines lines{in};
  std::vector<std::string> t;
  std::string raw;
  std::vector<std::vector<int>> out;
  while (lines.next(t, raw)) {
    if (t[0] != "ppmap" || t.size() != 2) lines.fail("expected 'ppmap <k>'");
    int k = lines.to_int(t[1]);
    if (k < 0) lines.fail("negative map size");
    std::vector<int> map(k, -1);
    for (int i = 0; i < k; ++i) {
      if (!lines.next(t, raw) || t[0] != "pair" || t.size() != 3)
        lines.fail("expected 'pair <src> <dst>'");
      int s = lines.to_int(t[1]), d = lines.to_int(t[2]);
      if (s < 0 || s >= k) lines.fail("source element out of range");
      map[s] = d;
    }
    for (int v : map)
      if (v < 0) lines.fail("ppmap block leaves a source unmapped");
    out.push_back(std::move(map));
  }
  return out;
}

void write_ppmap(std::ostream& out, std::span<const int> map) {
  out << "ppmap " << map.size() << "\n";
  for (size_t s = 0; s < map.size(); ++s)
    out << "pair " << s << " " << map[s] << "\n";
}

void write_ppmaps(std::ostream& out, std::span<const PpMorphism> maps) {
  for (const PpMorphism& m : maps) write_ppmap(out, m.map);
}

std::string ppmaps_text(std::span<const PpMorphism> maps) {
  std::ostringstream ss;
  write_ppmaps(ss, maps);
  return ss.str();
}

ReducedPoset read_reduced(std::istream& in) {
  Lines lines{in};
  std::vector<std::string> t;
  std::string raw;
  if (!lines.next(t, raw) || t[0] != "reduced" || t.size() != 2)
    lines.fail("expected 'reduced <base>'");
  int base = lines.to_int(t[1]);
  std::vector<uint32_t> family;
  while (lines.next(t, raw)) {
    if (t[0] != "set" || t.size() != 2) lines.fail("expected 'set <i,j,...>'");
    uint32_t mask = 0;
    std::istringstream ss(t[1]);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int v = lines.to_int(item);
      if (v < 0 || v >= base) lines.fail("base element out of range");
      mask |= static_cast<uint32_t>(bit(v));
    }
    if (mask == 0) lines.fail("empty family member");
    family.push_back(mask);
  }
  return make_reduced(base, std::move(family));
}

void write_reduced(std::ostream& out, const ReducedPoset& r) {
  out << "reduced " << r.base_size << "\n";
  for (uint32_t f : r.family) {
    out << "set ";
    bool first = true;
    for_each_bit(f, [&](int x) {
      if (!first) out << ",";
      out << x;
      first = false;
    });
    out << "\n";
  }
}

std::string to_dot(const Poset& p) {
  std::ostringstream out;
  out << "digraph poset {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=ellipse];\n";
  out << "  edge [arrowhead=none];\n";
  for (int x = 0; x < p.size(); ++x) {
    std::string label = p.label(x);
    std::string quoted;
    for (char c : label) {
      if (c == '"' || c == '\\') quoted += '\\';
      quoted += c;
    }
    out << "  n" << x << " [label=\"" << quoted << "\"];\n";
  }
  for (auto [x, y] : p.cover_pairs())
    out << "  n" << x << " -> n" << y << ";\n";
  if (p.maximal_mask()) {
    out << "  { rank=sink;";
    for_each_bit(p.maximal_mask(), [&](int x) { out << " n" << x << ";"; });
    out << " }\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

Poset load_poset(const std::string& path, bool raw) {
  auto in = open_in(path);
  return raw ? read_poset_raw(in) : read_poset(in);
}

PAlgebra load_palgebra(const std::string& path) {
  auto in = open_in(path);
  return read_palgebra(in);
}

std::vector<std::vector<int>> load_ppmaps(const std::string& path) {
  auto in = open_in(path);
  return read_ppmaps(in);
}

ReducedPoset load_reduced(const std::string& path) {
  auto in = open_in(path);
  return read_reduced(in);
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace paq::io
