#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "charsupp/families.hpp"
#include "helpers.hpp"

using namespace charsupp;
using namespace charsupp::testing;

namespace {

void check_certificate(const FamilySpec& spec) {
  INFO("family ", family_id(spec));
  Group g = build_family(spec);
  FamilyCertificate cert = family_certificate(spec);
  CHECK(g.order() == cert.order);
  CHECK(g.exponent() == cert.exponent);
  SeriesReport rep = series_report(g);
  CHECK(rep.nilpotence_class == cert.nilpotence_class);
  CHECK(rep.derived_length == cert.derived_length);
}

}  // namespace

TEST_CASE("family certificates re-derive") {
  check_certificate({Family::abelian, 3, {3, 3}});
  check_certificate({Family::abelian, 2, {8}});
  check_certificate({Family::dihedral, 2, {8}});
  check_certificate({Family::dihedral, 2, {16}});
  check_certificate({Family::dihedral, 2, {64}});
  check_certificate({Family::quaternion, 2, {8}});
  check_certificate({Family::quaternion, 2, {32}});
  check_certificate({Family::semidihedral, 2, {16}});
  check_certificate({Family::semidihedral, 2, {64}});
  check_certificate({Family::extraspecial, 3, {3}});
  check_certificate({Family::extraspecial, 3, {9}});
  check_certificate({Family::extraspecial, 5, {5}});
  check_certificate({Family::unitriangular, 3, {3}});
  check_certificate({Family::unitriangular, 3, {4}});
  check_certificate({Family::unitriangular, 2, {4}});
  check_certificate({Family::wreath_cyclic, 2, {}});
  check_certificate({Family::wreath_cyclic, 3, {}});
}

TEST_CASE("family spot identities") {
  // dihedral(16) is the closure of the octagon permutations.
  Group d16 = build_family({Family::dihedral, 2, {16}});
  Group d16p = closure_from_generators(d16_perm_generators());
  CHECK(isomorphic_by_generator_map(d16p, d16, {d16.generators()[0], d16.generators()[1]}));

  // abelian(3,3) has 9 singleton classes.
  Group ab = build_family({Family::abelian, 3, {3, 3}});
  CHECK(conjugacy_classes(ab).count() == 9);

  // unitriangular(4,3): order 729, class 3.
  Group ut = build_family({Family::unitriangular, 3, {4}});
  CHECK(ut.order() == 729);
  CHECK(series_report(ut).nilpotence_class == 3);

  // Quaternion groups have a unique involution.
  for (uint32_t m : {8u, 16u, 32u}) {
    Group q = build_family({Family::quaternion, 2, {m}});
    uint32_t involutions = 0;
    for (Elt x = 0; x < q.order(); ++x)
      if (q.element_order(x) == 2) ++involutions;
    CHECK(involutions == 1);
  }

  // wreath_cyclic(2) is dihedral of order 8.
  Group w2 = build_family({Family::wreath_cyclic, 2, {}});
  CHECK(w2.order() == 8);
  CHECK(series_report(w2).nilpotence_class == 2);
  CHECK(w2.exponent() == 4);
}

TEST_CASE("build determinism") {
  FamilySpec spec{Family::unitriangular, 3, {3}};
  Group a = build_family(spec);
  Group b = build_family(spec);
  REQUIRE(a.order() == b.order());
  for (Elt x = 0; x < a.order(); ++x)
    for (Elt y = 0; y < a.order(); ++y) REQUIRE(a.mult(x, y) == b.mult(x, y));
}

TEST_CASE("invalid family parameters") {
  CHECK_THROWS_AS(build_family({Family::dihedral, 2, {12}}), GroupError);
  CHECK_THROWS_AS(build_family({Family::dihedral, 2, {4}}), GroupError);
  CHECK_THROWS_AS(build_family({Family::semidihedral, 2, {8}}), GroupError);
  CHECK_THROWS_AS(build_family({Family::extraspecial, 2, {4}}), GroupError);
  CHECK_THROWS_AS(build_family({Family::extraspecial, 3, {27}}), GroupError);
  CHECK_THROWS_AS(build_family({Family::unitriangular, 3, {5}}), GroupError);
  CHECK_THROWS_AS(build_family({Family::abelian, 3, {6}}), GroupError);
}

TEST_CASE("corpus profiles") {
  auto quick = corpus(CorpusProfile::quick, "");
  CHECK(quick.size() >= 30);
  std::set<std::string> ids;
  for (const auto& e : quick) {
    CHECK(ids.insert(e.id).second);
    CHECK(e.group->order() <= 729);
    // Group invariants: Lagrange-style counting over classes.
    auto cl = conjugacy_classes(*e.group);
    uint32_t total = 0;
    for (uint32_t s : cl.sizes) total += s;
    CHECK(total == e.group->order());
  }
  CHECK(ids.count("dihedral(16)") == 1);
  CHECK(ids.count("unitriangular(3,4)") == 1);
  CHECK(ids.count("wreath_cyclic(3)") == 1);
}
