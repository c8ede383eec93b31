#include "paq/quasivar.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace paq {

namespace {

std::string set_text(uint32_t mask) {
  std::string s = "{";
  bool first = true;
  for_each_bit(mask, [&](int x) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  });
  return s + "}";
}

std::vector<uint32_t> canonical_family(int base_size,
                                       std::span<const uint32_t> family) {
  uint32_t full = static_cast<uint32_t>(mask_n(base_size));
  std::vector<uint32_t> out;
  for (uint32_t f : family) {
    if (f == 0) throw Error("reduced poset: empty family member");
    if (f & ~full) throw Error("reduced poset: family member outside base");
    if (popcount(f) <= 1 || f == full) continue;  // absorbed
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](uint32_t a, uint32_t b) {
    return std::pair(popcount(a), a) < std::pair(popcount(b), b);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ReducedPoset make_reduced(int base_size, std::vector<uint32_t> family) {
  if (base_size < 1) throw Error("reduced poset: base must be non-empty");
  if (base_size > 32) throw Error("reduced poset: base too large");
  ReducedPoset r;
  r.base_size = base_size;
  r.family = canonical_family(base_size, family);

  uint32_t full = static_cast<uint32_t>(mask_n(base_size));
  for (int i = 0; i < base_size; ++i)
    r.carrier.push_back(static_cast<uint32_t>(bit(i)));
  for (uint32_t f : r.family) r.carrier.push_back(f);
  if (base_size > 1) r.carrier.push_back(full);

  int n = static_cast<int>(r.carrier.size());
  std::vector<uint64_t> up(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if ((r.carrier[k] & ~r.carrier[i]) == 0)  // carrier[k] subset: i <= k
        up[i] |= bit(k);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (uint32_t c : r.carrier) labels.push_back(set_text(c));
  r.realized = Poset::from_up_masks(n, std::move(up), std::move(labels));
  assert(!validate(r.realized));
  return r;
}

bool in_pa_m(const Poset& x, int m) {
  if (m < 1) throw Error("in_pa_m: m must be positive");
  for (int i = 0; i < x.size(); ++i)
    if (popcount(x.max_above(i)) > m) return false;
  return true;
}

std::optional<PpMorphism> contains_pa_m(const Poset& x, int m) {
  if (m < 1) throw Error("contains_pa_m: m must be positive");
  return exists_surjective_pp(x, make_bm_poset(m));
}

MembershipCertificate member(const Poset& x, std::span<const Poset> gens) {
  if (gens.empty()) throw Error("member: generator list must be non-empty");
  MembershipCertificate cert;
  cert.witness_of.assign(x.size(), -1);

  std::vector<CoverageReport> reports;
  reports.reserve(gens.size());
  for (const Poset& g : gens) reports.push_back(covered_points(g, x));

  uint64_t covered = 0;
  for (const auto& rep : reports) covered |= rep.covered;
  if (covered != x.all_mask()) {
    cert.verdict = MembershipCertificate::Verdict::non_member;
    cert.blocker = std::countr_zero(x.all_mask() & ~covered);
    return cert;
  }

  cert.verdict = MembershipCertificate::Verdict::member;
  uint64_t witnessed = 0;
  for (int y = 0; y < x.size(); ++y) {
    if (witnessed >> y & 1) {
      for (size_t w = 0; w < cert.witnesses.size(); ++w)
        if (cert.witnesses[w].image_mask() >> y & 1) {
          cert.witness_of[y] = static_cast<int>(w);
          break;
        }
      continue;
    }
    for (size_t g = 0; g < reports.size(); ++g) {
      if (!(reports[g].covered >> y & 1)) continue;
      const PpMorphism& wit =
          reports[g].witnesses[reports[g].witness_of[y]];
      cert.witness_of[y] = static_cast<int>(cert.witnesses.size());
      cert.witnesses.push_back(wit);
      cert.witness_gen.push_back(static_cast<int>(g));
      witnessed |= wit.image_mask();
      break;
    }
  }
  return cert;
}

bool quasivariety_leq(const Poset& p, const Poset& q) {
  return member(p, std::span<const Poset>(&q, 1)).is_member();
}

Reduction reduction(const Poset& p) {
  Reduction r;
  std::vector<uint64_t> sets;
  for (int x = 0; x < p.size(); ++x) sets.push_back(p.max_above(x));
  std::sort(sets.begin(), sets.end(), [](uint64_t a, uint64_t b) {
    return std::pair(popcount(a), a) < std::pair(popcount(b), b);
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  int n = static_cast<int>(sets.size());
  std::vector<uint64_t> up(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if ((sets[k] & ~sets[i]) == 0) up[i] |= bit(k);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (uint64_t s : sets) {
    std::string text = "{";
    bool first = true;
    for_each_bit(s, [&](int x) {
      if (!first) text += ",";
      text += p.label(x);
      first = false;
    });
    labels.push_back(text + "}");
  }
  r.poset = Poset::from_up_masks(n, std::move(up), std::move(labels));
  r.maxsets = std::move(sets);
  r.map.resize(p.size());
  for (int x = 0; x < p.size(); ++x) {
    auto it = std::find(r.maxsets.begin(), r.maxsets.end(), p.max_above(x));
    r.map[x] = static_cast<int>(it - r.maxsets.begin());
  }
  assert(p.empty() || is_pp_morphism(r.map, p, r.poset));
  return r;
}

ReducedPoset shrink_to_base(const ReducedPoset& p, int m) {
  if (m < 1) throw Error("shrink_to_base: m must be positive");
  if (p.base_size < m + 1)
    throw Error("shrink_to_base: base smaller than m+1 (base-collapse "
                "hypothesis fails)");
  std::optional<PpMorphism> f = contains_pa_m(p.realized, m);
  if (!f)
    throw Error("shrink_to_base: no surjection onto the m-generator dual "
                "(containment hypothesis fails)");

  // Fibers of base elements under a |-> f({a}). Singletons occupy carrier
  // indices 0..base_size-1 in base order.
  std::map<int, uint32_t> fiber;
  for (int a = 0; a < p.base_size; ++a) fiber[f->map[a]] |= bit(a);
  std::vector<uint32_t> blocks;
  for (auto& [value, mask] : fiber) blocks.push_back(mask);
  auto block_order = [](uint32_t a, uint32_t b) {
    return std::countr_zero(a) < std::countr_zero(b);
  };
  std::sort(blocks.begin(), blocks.end(), block_order);

  while (static_cast<int>(blocks.size()) < m + 1) {
    // Largest block, ties to the lexicographically first; split off its
    // smallest member.
    size_t pick = 0;
    for (size_t i = 1; i < blocks.size(); ++i)
      if (popcount(blocks[i]) > popcount(blocks[pick])) pick = i;
    uint32_t low = static_cast<uint32_t>(bit(std::countr_zero(blocks[pick])));
    blocks[pick] &= ~low;
    blocks.push_back(low);
    std::sort(blocks.begin(), blocks.end(), block_order);
  }

  std::vector<int> pi(p.base_size, -1);
  for (size_t i = 0; i < blocks.size(); ++i)
    for_each_bit(blocks[i], [&](int a) { pi[a] = static_cast<int>(i); });

  std::vector<uint32_t> images;
  for (uint32_t c : p.carrier) {
    uint32_t img = 0;
    for_each_bit(c, [&](int a) { img |= bit(pi[a]); });
    images.push_back(img);
  }
  ReducedPoset result = make_reduced(m + 1, images);

  if (!contains_pa_m(result.realized, m))
    throw Error("shrink_to_base: collapsed poset lost the containment "
                "guarantee");
  if (!member(result.realized, std::span<const Poset>(&p.realized, 1))
           .is_member())
    throw Error("shrink_to_base: collapsed poset left the generated "
                "quasivariety");
  return result;
}

AdmitsResult family_admits_pa_m(int base_size,
                                std::span<const uint32_t> family, int m) {
  if (m < 2) throw Error("family_admits_pa_m: m must be at least 2");
  if (base_size != m + 1)
    throw Error("family_admits_pa_m: base size must be m+1");
  std::vector<uint32_t> fam = canonical_family(base_size, family);
  uint32_t full = static_cast<uint32_t>(mask_n(base_size));
  for (int a = 0; a < base_size; ++a)
    for (int b = a + 1; b < base_size; ++b) {
      uint32_t pair = static_cast<uint32_t>(bit(a) | bit(b));
      uint32_t coa = full & ~static_cast<uint32_t>(bit(a));
      uint32_t cob = full & ~static_cast<uint32_t>(bit(b));
      bool ok = true;
      for (uint32_t f : fam)
        if (f != pair && f != coa && f != cob) ok = false;
      if (ok) return AdmitsResult{true, a, b};
    }
  return AdmitsResult{};
}

ReducedPoset the_cover(int m) {
  if (m < 2) throw Error("the_cover: defined for m >= 2 only");
  uint32_t full = static_cast<uint32_t>(mask_n(m + 1));
  std::vector<uint32_t> family = {
      static_cast<uint32_t>(bit(0) | bit(1)),
      full & ~static_cast<uint32_t>(bit(0)),
      full & ~static_cast<uint32_t>(bit(1)),
  };
  return make_reduced(m + 1, std::move(family));
}

std::vector<std::vector<uint32_t>> enumerate_reduced_families(int m) {
  if (m < 2) throw Error("enumerate_reduced_families: m must be at least 2");
  int base = m + 1;
  uint32_t full = static_cast<uint32_t>(mask_n(base));
  std::vector<uint32_t> candidates;
  for (uint32_t s = 1; s <= full; ++s)
    if (popcount(s) >= 2 && popcount(s) <= m) candidates.push_back(s);
  if (candidates.size() > 20)
    throw Error("enumerate_reduced_families: family space too large");
  std::vector<std::vector<uint32_t>> out;
  for (uint64_t pick = 0; pick < bit(static_cast<int>(candidates.size()));
       ++pick) {
    std::vector<uint32_t> fam;
    for_each_bit(pick, [&](int i) { fam.push_back(candidates[i]); });
    out.push_back(std::move(fam));
  }
  return out;
}

bool is_cover_among_reduced(const ReducedPoset& p, int m, bool cross_check) {
  if (p.base_size != m + 1)
    throw Error("is_cover_among_reduced: base size must be m+1");
  if (!family_admits_pa_m(p.base_size, p.family, m).admits)
    throw Error("is_cover_among_reduced: family does not admit the variety");

  uint32_t full = static_cast<uint32_t>(mask_n(p.base_size));
  bool by_theorem = false;
  for (int a = 0; a < p.base_size && !by_theorem; ++a)
    for (int b = a + 1; b < p.base_size && !by_theorem; ++b) {
      std::vector<uint32_t> want = {
          static_cast<uint32_t>(bit(a) | bit(b)),
          full & ~static_cast<uint32_t>(bit(a)),
          full & ~static_cast<uint32_t>(bit(b)),
      };
      if (canonical_family(p.base_size, want) == p.family) by_theorem = true;
    }

  if (cross_check) {
    if (m > 3)
      throw Error("is_cover_among_reduced: cross-check limited to m <= 3");
    // Is anything in the admissible landscape strictly between the variety
    // and p? Minimality over the full enumeration, by membership both ways.
    std::vector<Poset> rivals;
    for (const auto& fam : enumerate_reduced_families(m)) {
      if (!family_admits_pa_m(m + 1, fam, m).admits) continue;
      rivals.push_back(make_reduced(m + 1, fam).realized);
    }
    bool minimal = true;
    for (const Poset& y : rivals) {
      if (quasivariety_leq(y, p.realized) &&
          !quasivariety_leq(p.realized, y)) {
        minimal = false;
        break;
      }
    }
    if (minimal != by_theorem)
      throw Error("is_cover_among_reduced: cross-check disagrees with the "
                  "family characterization");
  }
  return by_theorem;
}

}  // namespace paq
