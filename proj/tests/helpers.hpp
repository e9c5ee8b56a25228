#pragma once

// Shared constructions and independent brute-force oracles for the test
// suites. Oracles deliberately avoid the library's algorithms: closure by
// pairwise-product saturation, classes by full conjugation scans, and so
// on, so they can stand as independent checks.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "charsupp/group.hpp"

namespace charsupp::testing {

inline Group make_cyclic(uint32_t m) {
  return Group::from_mult(
      m, [m](Elt a, Elt b) { return (a + b) % m; }, {m > 1 ? 1u : 0u});
}

inline Group make_abelian(const std::vector<uint32_t>& factors) {
  uint32_t order = 1;
  for (uint32_t d : factors) order *= d;
  auto mult = [factors](Elt a, Elt b) {
    Elt av = a, bv = b;
    std::vector<uint32_t> digits(factors.size());
    for (size_t i = factors.size(); i-- > 0;) {
      uint32_t d = factors[i];
      digits[i] = (av % d + bv % d) % d;
      av /= d;
      bv /= d;
    }
    Elt out = 0;
    for (size_t i = 0; i < factors.size(); ++i) out = out * factors[i] + digits[i];
    return out;
  };
  std::vector<Elt> gens;
  uint32_t stride = order;
  for (uint32_t d : factors) {
    stride /= d;
    gens.push_back(stride);
  }
  return Group::from_mult(order, mult, gens);
}

// Heisenberg group of order 27 (extraspecial, exponent 3): triples
// (a,b,c) = I + a E12 + b E23 + c E13 over F_3, index a*9 + b*3 + c.
inline Group make_heisenberg3() {
  auto mult = [](Elt x, Elt y) {
    uint32_t a1 = x / 9, b1 = (x / 3) % 3, c1 = x % 3;
    uint32_t a2 = y / 9, b2 = (y / 3) % 3, c2 = y % 3;
    uint32_t a = (a1 + a2) % 3;
    uint32_t b = (b1 + b2) % 3;
    uint32_t c = (c1 + c2 + a1 * b2) % 3;
    return a * 9 + b * 3 + c;
  };
  return Group::from_mult(27, mult, {9, 3});
}

inline std::vector<Perm> d16_perm_generators() {
  Perm r{1, 2, 3, 4, 5, 6, 7, 0};
  Perm s{7, 6, 5, 4, 3, 2, 1, 0};
  return {r, s};
}

// Independent closure oracle: saturate the set under pairwise products.
inline std::set<Perm> closure_oracle(const std::vector<Perm>& gens) {
  std::set<Perm> elems(gens.begin(), gens.end());
  Perm id(gens.at(0).size());
  std::iota(id.begin(), id.end(), 0);
  elems.insert(id);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> snapshot(elems.begin(), elems.end());
    for (const auto& f : snapshot)
      for (const auto& g : snapshot) {
        Perm h(f.size());
        for (size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];
        if (elems.insert(h).second) grew = true;
      }
  }
  return elems;
}

// Independent conjugacy oracle: full scans over the whole group.
inline std::vector<std::vector<Elt>> classes_oracle(const Group& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::vector<Elt>> classes;
  for (Elt x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::set<Elt> cls;
    for (Elt h = 0; h < g.order(); ++h) cls.insert(g.conjugate(x, h));
    std::vector<Elt> v(cls.begin(), cls.end());
    for (Elt y : v) seen[y] = 1;
    classes.push_back(std::move(v));
  }
  return classes;
}

// Independent commutator-closure oracle for one series step.
inline std::vector<Elt> commutator_closure_oracle(const Group& g,
                                                  const std::vector<Elt>& u,
                                                  const std::vector<Elt>& v) {
  std::set<Elt> members{0};
  std::set<Elt> seeds;
  for (Elt x : u)
    for (Elt y : v) seeds.insert(g.commutator(x, y));
  members.insert(seeds.begin(), seeds.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elt> snapshot(members.begin(), members.end());
    for (Elt a : snapshot)
      for (Elt b : snapshot)
        if (members.insert(g.mult(a, b)).second) grew = true;
    for (Elt a : snapshot)
      if (members.insert(g.inverse(a)).second) grew = true;
  }
  return {members.begin(), members.end()};
}

// True when mapping from's generators to images extends to an isomorphism.
inline bool isomorphic_by_generator_map(const Group& from, const Group& to,
                                        const std::vector<Elt>& images) {
  if (from.order() != to.order()) return false;
  auto map = extend_generator_map(from, to, images);
  if (!map) return false;
  std::vector<char> hit(to.order(), 0);
  for (Elt v : *map) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

}  // namespace charsupp::testing
