#pragma once

// Independent character-table oracle: induce every linear character of
// every subgroup (transversal-sum formula) and peel off irreducibles by
// exact inner products. Independent of the class-matrix / eigenspace /
// Fourier-lift path in the library; p-groups are monomial, so this finds
// every row for the desk-scale corpus.

#include <algorithm>
#include <string>
#include <vector>

#include "charsupp/characters.hpp"
#include "charsupp/group.hpp"

namespace charsupp::testing {

// Minimal independent dual of a finite abelian group.
struct OracleDual {
  std::vector<uint32_t> orders;
  std::vector<std::vector<uint32_t>> coords;  // element -> exponent tuple
  uint32_t exponent = 1;

  uint32_t count() const {
    uint32_t n = 1;
    for (uint32_t o : orders) n *= o;
    return n;
  }
  Cyclo value(uint32_t k, Elt x) const {
    uint64_t expo = 0;
    uint32_t kk = k;
    for (size_t i = orders.size(); i-- > 0;) {
      uint32_t ci = kk % orders[i];
      kk /= orders[i];
      expo = (expo + static_cast<uint64_t>(ci) * coords[x][i] * (exponent / orders[i])) %
             exponent;
    }
    return Cyclo::root_of_unity(exponent, static_cast<int64_t>(expo));
  }
};

inline OracleDual oracle_dual(const Group& a) {
  OracleDual dual;
  dual.exponent = a.exponent();
  std::vector<Elt> basis;
  if (a.order() > 1) {
    // Max-order element, then recurse on the quotient and lift each basis
    // element to a representative of the same order.
    struct Frame {
      Group group;
      std::vector<Elt> lift_to_top;  // element of this group -> top-group element
    };
    Group cur = a;
    std::vector<Elt> lift(a.order());
    for (Elt x = 0; x < a.order(); ++x) lift[x] = x;
    while (cur.order() > 1) {
      Elt best = 0;
      for (Elt x = 0; x < cur.order(); ++x)
        if (cur.element_order(x) > cur.element_order(best)) best = x;
      basis.push_back(lift[best]);
      dual.orders.push_back(cur.element_order(best));
      Subgroup c = generated(cur, std::vector<Elt>{best});
      auto q = quotient(cur, c);
      // Lift each quotient element to a same-order representative.
      std::vector<Elt> next_lift(q.group.order());
      for (Elt y = 0; y < q.group.order(); ++y) {
        uint32_t want = q.group.element_order(y);
        for (Elt x = 0; x < cur.order(); ++x) {
          if (q.projection[x] == y && cur.element_order(x) == want) {
            next_lift[y] = lift[x];
            break;
          }
        }
      }
      cur = q.group;
      lift = std::move(next_lift);
    }
  }
  // Exponent tuples -> elements, inverted to coordinates.
  uint32_t total = 1;
  for (uint32_t o : dual.orders) total *= o;
  if (total != a.order()) throw GroupError("oracle dual: basis does not factor the group");
  dual.coords.assign(a.order(), std::vector<uint32_t>(dual.orders.size(), 0));
  std::vector<char> seen(a.order(), 0);
  for (uint32_t k = 0; k < total; ++k) {
    uint32_t kk = k;
    std::vector<uint32_t> tuple(dual.orders.size());
    for (size_t i = dual.orders.size(); i-- > 0;) {
      tuple[i] = kk % dual.orders[i];
      kk /= dual.orders[i];
    }
    Elt elt = 0;
    for (size_t i = 0; i < tuple.size(); ++i) elt = a.mult(elt, a.power(basis[i], tuple[i]));
    if (seen[elt]) throw GroupError("oracle dual: tuple collision");
    seen[elt] = 1;
    dual.coords[elt] = std::move(tuple);
  }
  return dual;
}

// Induction by summation over a left transversal (independent of the
// library's average-over-G formula).
inline ClassFunction induce_oracle(const Group& g, const ClassPartition& classes,
                                   const Subgroup& h,
                                   const std::vector<Cyclo>& values_on_members) {
  std::vector<Elt> transversal;
  std::vector<char> covered(g.order(), 0);
  for (Elt x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    transversal.push_back(x);
    for (Elt m : h.members) covered[g.mult(x, m)] = 1;
  }
  ClassFunction out;
  for (uint32_t c = 0; c < classes.count(); ++c) {
    Cyclo acc;
    for (Elt t : transversal) {
      Elt y = g.conjugate(classes.reps[c], t);  // t^-1 rep t
      auto it = std::lower_bound(h.members.begin(), h.members.end(), y);
      if (it != h.members.end() && *it == y)
        acc += values_on_members[static_cast<size_t>(it - h.members.begin())];
    }
    out.values.push_back(acc);
  }
  return out;
}

struct OracleRow {
  std::vector<Cyclo> values;
  uint32_t degree = 0;
};

inline std::vector<OracleRow> oracle_table(const Group& g) {
  const ClassPartition classes = conjugacy_classes(g);
  const uint32_t n = g.order();
  std::vector<OracleRow> found;
  uint64_t sumsq = 0;
  auto subs = all_subgroups(g);
  for (const Subgroup& h : subs) {
    if (sumsq == n) break;
    // Realize the subgroup and its abelianization.
    std::vector<Elt> members = h.members;
    Group gcopy = g;
    auto mult = [gcopy, members](Elt a, Elt b) {
      Elt prod = gcopy.mult(members[a], members[b]);
      auto lo = std::lower_bound(members.begin(), members.end(), prod);
      return static_cast<Elt>(lo - members.begin());
    };
    std::vector<Elt> gens;
    {
      Subgroup span = trivial_subgroup(g);
      std::vector<Elt> pg;
      for (Elt m : members) {
        if (span.contains(m)) continue;
        pg.push_back(m);
        span = generated(g, pg);
        if (span.order() == h.order()) break;
      }
      for (Elt x : pg) gens.push_back(h.index_of(x));
      if (gens.empty()) gens.push_back(0);
    }
    Group sub = Group::from_mult(h.order(), mult, gens);
    Subgroup der = derived_subgroup(sub, whole_group(sub));
    auto q = quotient(sub, der);
    OracleDual dual = oracle_dual(q.group);
    for (uint32_t k = 0; k < dual.count() && sumsq < n; ++k) {
      std::vector<Cyclo> lam;
      lam.reserve(members.size());
      for (uint32_t idx = 0; idx < members.size(); ++idx)
        lam.push_back(dual.value(k, q.projection[idx]));
      ClassFunction psi = induce_oracle(g, classes, h, lam);
      // Subtract the constituents already found.
      for (const OracleRow& row : found) {
        Cyclo c = inner_product(classes, psi.values, row.values, n);
        if (c.is_zero()) continue;
        Rational m = c.as_rational();
        for (uint32_t cc = 0; cc < classes.count(); ++cc)
          psi.values[cc] -= row.values[cc].scaled(m);
      }
      bool zero = true;
      for (const Cyclo& v : psi.values)
        if (!v.is_zero()) { zero = false; break; }
      if (zero) continue;
      Cyclo norm = inner_product(classes, psi.values, psi.values, n);
      if (norm == Cyclo::one()) {
        OracleRow row;
        row.degree = static_cast<uint32_t>(psi.values[0].as_rational().num());
        for (Cyclo& v : psi.values) v = v.embedded(g.exponent());
        row.values = std::move(psi.values);
        sumsq += static_cast<uint64_t>(row.degree) * row.degree;
        found.push_back(std::move(row));
      }
    }
  }
  if (sumsq != n) throw GroupError("oracle table incomplete");
  std::sort(found.begin(), found.end(), [](const OracleRow& a, const OracleRow& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    std::string ka, kb;
    for (const auto& v : a.values) ka += v.str() + " ";
    for (const auto& v : b.values) kb += v.str() + " ";
    return ka < kb;
  });
  return found;
}

// Exact equality with the library table, up to the shared deterministic
// row order.
inline bool oracle_matches_table(const Group& g, const CharacterTable& t) {
  auto rows = oracle_table(g);
  if (rows.size() != t.count()) return false;
  for (uint32_t k = 0; k < t.count(); ++k) {
    if (rows[k].degree != t.rows[k].degree) return false;
    for (uint32_t c = 0; c < t.classes.count(); ++c)
      if (rows[k].values[c] != t.rows[k].values[c]) return false;
  }
  return true;
}

}  // namespace charsupp::testing
