#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "charsupp/group.hpp"
#include "charsupp/util.hpp"
#include "helpers.hpp"

using namespace charsupp;
using namespace charsupp::testing;

TEST_CASE("closure from generators") {
  Perm id{0, 1, 2};
  Group trivial = closure_from_generators({id});
  CHECK(trivial.order() == 1);

  Group d16 = closure_from_generators(d16_perm_generators());
  CHECK(d16.order() == 16);
  CHECK(closure_oracle(d16_perm_generators()).size() == 16);
  CHECK(d16.exponent() == 8);
  CHECK(d16.prime() == 2);

  // Regular representation of C3 x C3.
  std::vector<Perm> regs(2, Perm(9));
  for (Elt x = 0; x < 9; ++x) {
    regs[0][x] = (x + 3) % 9;
    regs[1][x] = (x / 3) * 3 + (x + 1) % 3;
  }
  Group c3c3 = closure_from_generators(regs);
  CHECK(c3c3.order() == 9);
  CHECK(c3c3.exponent() == 3);
  CHECK(closure_oracle(regs).size() == 9);

  CHECK_THROWS_AS(closure_from_generators({Perm{1, 1, 0}}), GroupError);
  GroupConfig small;
  small.closure_cap = 8;
  CHECK_THROWS_AS(closure_from_generators(d16_perm_generators(), small), CapError);
}

TEST_CASE("group invariants on a sample of constructions") {
  std::vector<Group> groups;
  groups.push_back(make_cyclic(12));
  groups.push_back(make_abelian({3, 3}));
  groups.push_back(make_heisenberg3());
  groups.push_back(closure_from_generators(d16_perm_generators()));
  for (const Group& g : groups) {
    CHECK(g.order() % g.exponent() == 0);
    for (Elt a = 0; a < g.order(); ++a) {
      CHECK(g.mult(a, g.inverse(a)) == 0);
      CHECK(g.mult(0, a) == a);
    }
    // Associativity (full check at these sizes).
    for (Elt a = 0; a < g.order(); ++a)
      for (Elt b = 0; b < g.order(); ++b)
        for (Elt c = 0; c < g.order(); ++c)
          REQUIRE(g.mult(g.mult(a, b), c) == g.mult(a, g.mult(b, c)));
  }
}

TEST_CASE("conjugacy classes") {
  Group ab9 = make_abelian({3, 3});
  ClassPartition cl9 = conjugacy_classes(ab9);
  CHECK(cl9.count() == 9);
  for (uint32_t s : cl9.sizes) CHECK(s == 1);

  Group d16 = closure_from_generators(d16_perm_generators());
  ClassPartition cl16 = conjugacy_classes(d16);
  CHECK(cl16.count() == 7);
  // Sorted by (element order, size, minimal member): identity, central
  // rotation, the two reflection classes, then rotations of order 4 and 8.
  CHECK(cl16.sizes == std::vector<uint32_t>{1, 1, 4, 4, 2, 2, 2});
  // Identity class first, singleton.
  CHECK(cl16.classes[0] == std::vector<Elt>{0});

  Group h27 = make_heisenberg3();
  ClassPartition cl27 = conjugacy_classes(h27);
  CHECK(cl27.count() == 11);
  uint32_t singletons = 0, threes = 0;
  for (uint32_t s : cl27.sizes) {
    if (s == 1) ++singletons;
    if (s == 3) ++threes;
  }
  CHECK(singletons == 3);
  CHECK(threes == 8);

  // Against the brute-force oracle, and the counting identity.
  for (const Group& g : {ab9, d16, h27}) {
    auto oracle = classes_oracle(g);
    ClassPartition cl = conjugacy_classes(g);
    CHECK(cl.count() == oracle.size());
    std::set<std::vector<Elt>> a(cl.classes.begin(), cl.classes.end());
    std::set<std::vector<Elt>> b(oracle.begin(), oracle.end());
    CHECK(a == b);
    uint32_t total = 0;
    for (uint32_t s : cl.sizes) total += s;
    CHECK(total == g.order());
  }
}

TEST_CASE("centralizers and orbit-stabilizer") {
  Group d16 = closure_from_generators(d16_perm_generators());
  CHECK(centralizer(d16, 0).order() == 16);
  // The rotation generator has order 8; its centralizer is <r>.
  Elt r = d16.generators()[0];
  CHECK(d16.element_order(r) == 8);
  Subgroup cr = centralizer(d16, r);
  CHECK(cr.order() == 8);
  for (Elt x : cr.members) CHECK(d16.element_order(x) <= 8);

  Group h27 = make_heisenberg3();
  Elt noncentral = h27.generators()[0];
  CHECK(centralizer(h27, noncentral).order() == 9);

  // Centralizer of a subgroup: C(<r>) = <r> in D16, C(Z) = G.
  Subgroup rot = generated(d16, std::vector<Elt>{r});
  CHECK(centralizer(d16, rot).members == rot.members);
  CHECK(centralizer(d16, center(d16)).order() == 16);

  for (const Group& g : {d16, h27}) {
    ClassPartition cl = conjugacy_classes(g);
    for (uint32_t c = 0; c < cl.count(); ++c) {
      Subgroup cent = centralizer(g, cl.reps[c]);
      CHECK(cent.order() * cl.sizes[c] == g.order());
    }
  }
  CHECK_THROWS_AS(centralizer(d16, 999), GroupError);
}

TEST_CASE("series report") {
  Group ab = make_abelian({3, 3});
  SeriesReport ra = series_report(ab);
  CHECK(ra.nilpotence_class == 1);
  CHECK(ra.derived_length == 1);
  CHECK(ra.is_metabelian);

  Group d16 = closure_from_generators(d16_perm_generators());
  SeriesReport rd = series_report(d16);
  CHECK(rd.nilpotence_class == 3);
  CHECK(rd.derived_length == 2);
  CHECK(rd.is_metabelian);
  CHECK(rd.class_at_most_3);
  CHECK(rd.center.order() == 2);

  // Oracle: independent commutator closure for the first steps.
  std::vector<Elt> whole(d16.order());
  std::iota(whole.begin(), whole.end(), 0);
  auto l2 = commutator_closure_oracle(d16, whole, whole);
  CHECK(l2 == rd.lower_central[1].members);
  auto l3 = commutator_closure_oracle(d16, l2, whole);
  CHECK(l3 == rd.lower_central[2].members);

  // Series terms are normal and strictly decreasing until stable.
  for (const Group& g : {d16, make_heisenberg3()}) {
    SeriesReport rep = series_report(g);
    for (const Subgroup& term : rep.lower_central) CHECK(is_normal(g, term));
    for (const Subgroup& term : rep.derived) CHECK(is_normal(g, term));
    for (size_t i = 1; i < rep.lower_central.size(); ++i)
      CHECK(rep.lower_central[i].order() < rep.lower_central[i - 1].order());
  }
}

TEST_CASE("quotients") {
  Group d16 = closure_from_generators(d16_perm_generators());

  auto whole = whole_group(d16);
  auto q1 = quotient(d16, whole);
  CHECK(q1.group.order() == 1);

  auto triv = trivial_subgroup(d16);
  auto q2 = quotient(d16, triv);
  CHECK(q2.group.order() == 16);
  std::set<Elt> images(q2.projection.begin(), q2.projection.end());
  CHECK(images.size() == 16);

  Subgroup z = center(d16);
  auto q3 = quotient(d16, z);
  CHECK(q3.group.order() == 8);
  CHECK(series_report(q3.group).nilpotence_class == 2);

  // Projection is a homomorphism (exhaustive at this size).
  for (Elt a = 0; a < d16.order(); ++a)
    for (Elt b = 0; b < d16.order(); ++b)
      CHECK(q3.projection[d16.mult(a, b)] ==
            q3.group.mult(q3.projection[a], q3.projection[b]));

  Subgroup bad;
  bad.parent = &d16;
  bad.members = {0, d16.generators()[1]};  // reflection: not normal
  CHECK_FALSE(is_normal(d16, bad));
  CHECK_THROWS_AS(quotient(d16, bad), GroupError);
}

TEST_CASE("semidirect products") {
  Group c8 = make_cyclic(8);
  Group c2 = make_cyclic(2);

  // Inversion action gives the dihedral group of order 16.
  Perm invert(8);
  for (Elt x = 0; x < 8; ++x) invert[x] = (8 - x) % 8;
  Action act = Action::from_generator_images(c2, c8, {invert});
  Group d16 = semidirect_product(c8, c2, act);
  CHECK(d16.order() == 16);
  CHECK(series_report(d16).nilpotence_class == 3);

  // Same group as the permutation closure: generator map r -> (a,0),
  // s -> (0,h) extends to an isomorphism.
  Group d16p = closure_from_generators(d16_perm_generators());
  CHECK(isomorphic_by_generator_map(d16p, d16, {d16.generators()[0], d16.generators()[1]}));

  // Trivial action = direct product, element for element.
  Group dp = direct_product(c8, c2);
  Group sd = semidirect_product(c8, c2, Action::trivial(c2, c8));
  for (Elt a = 0; a < dp.order(); ++a)
    for (Elt b = 0; b < dp.order(); ++b) CHECK(dp.mult(a, b) == sd.mult(a, b));

  // (C3 x C3) x| C3 with a unipotent action: order 27, class 2.
  Group base = make_abelian({3, 3});
  Group c3 = make_cyclic(3);
  // (x, y) -> (x + y, y).
  Perm unipotent(9);
  for (Elt v = 0; v < 9; ++v) {
    Elt x = v / 3, y = v % 3;
    unipotent[v] = ((x + y) % 3) * 3 + y;
  }
  Action uact = Action::from_generator_images(c3, base, {unipotent});
  Group g27 = semidirect_product(base, c3, uact);
  CHECK(g27.order() == 27);
  CHECK(series_report(g27).nilpotence_class == 2);

  // A embeds normally, H as a complement.
  Subgroup a_embedded;
  a_embedded.parent = &g27;
  for (Elt x = 0; x < 9; ++x) a_embedded.members.push_back(x * 3);
  CHECK(is_normal(g27, a_embedded));

  // Non-automorphism images are rejected.
  Perm not_auto{0, 2, 1, 3, 4, 5, 6, 7, 8};
  CHECK_THROWS_AS(Action::from_generator_images(c3, base, {not_auto}), GroupError);
}

TEST_CASE("subgroup algebra") {
  Group d16 = closure_from_generators(d16_perm_generators());
  Elt r = d16.generators()[0];
  Elt s = d16.generators()[1];

  Subgroup u = generated(d16, std::vector<Elt>{r});
  CHECK(u.order() == 8);
  CHECK(intersect(u, u).members == u.members);

  // C = <r^2 s>, order 2, non-central; conjugating by r moves it.
  Elt r2s = d16.mult(d16.mult(r, r), s);
  CHECK(d16.element_order(r2s) == 2);
  Subgroup c = generated(d16, std::vector<Elt>{r2s});
  CHECK(c.order() == 2);
  Subgroup cg = conjugate_subgroup(c, r);
  CHECK(cg.members != c.members);
  CHECK(intersect(c, cg).order() == 1);

  // Normal closure of the only cyclic subgroup of order 8 is itself.
  Subgroup nc = normal_closure(d16, std::vector<Elt>{r});
  CHECK(nc.members == u.members);

  // Product sets.
  ProductSet uv = product_set(u, c);
  CHECK(uv.elements.size() == 16);
  CHECK(uv.is_subgroup);
  Subgroup z = center(d16);
  ProductSet zc = product_set(z, c);
  CHECK(zc.elements.size() == 4);
  CHECK(zc.is_subgroup);

  // Lagrange holds for everything produced here.
  for (const Subgroup& sub : {u, c, cg, nc, z}) CHECK(16 % sub.order() == 0);
}

TEST_CASE("subgroup enumeration") {
  Group d16 = closure_from_generators(d16_perm_generators());
  auto subs = all_subgroups(d16);
  // D16 has 19 subgroups in total.
  CHECK(subs.size() == 19);
  for (const auto& s : subs) CHECK(16 % s.order() == 0);

  auto normals = normal_subgroups(d16);
  for (const auto& n : normals) CHECK(is_normal(d16, n));
  std::set<std::vector<Elt>> normal_sets;
  for (const auto& n : normals) normal_sets.insert(n.members);
  uint32_t count_from_all = 0;
  for (const auto& s : subs)
    if (s.is_normal) {
      ++count_from_all;
      CHECK(normal_sets.count(s.members) == 1);
    }
  CHECK(count_from_all == normals.size());

  auto chief = chief_series(d16);
  CHECK(chief.size() == 5);
  for (size_t i = 1; i < chief.size(); ++i) {
    CHECK(chief[i - 1].order() == 2 * chief[i].order());
    CHECK(is_normal(d16, chief[i]));
  }
}

TEST_CASE("power and element orders") {
  Group c12 = make_cyclic(12);
  CHECK(c12.power(1, 0) == 0);
  CHECK(c12.power(1, 5) == 5);
  CHECK(c12.power(1, -1) == 11);
  CHECK(c12.element_order(2) == 6);
  CHECK(c12.exponent() == 12);
}
