#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "charsupp/families.hpp"
#include "charsupp/support.hpp"
#include "charsupp/util.hpp"
#include "helpers.hpp"

using namespace charsupp;
using namespace charsupp::testing;

namespace {

uint32_t find_faithful_row(const CharacterTable& t) {
  for (uint32_t k = 0; k < t.count(); ++k)
    if (character_structure(t, k).faithful) return k;
  FAIL("no faithful row");
  return 0;
}

bool any_unexpected_fail(const std::vector<CheckLine>& lines,
                         const ExpectedFailures& declared = {}) {
  for (const auto& l : lines)
    if (l.result == CheckResult::fail && !declared.matches(l)) return true;
  return false;
}

}  // namespace

TEST_CASE("support profiles") {
  TableContext ctx;
  auto d16p = std::make_shared<const Group>(build_family({Family::dihedral, 2, {16}}));
  const Group& d16 = *d16p;
  const CharacterTable& t = ctx.table_of(d16p);

  // Trivial character is supported everywhere.
  for (uint32_t k = 0; k < t.count(); ++k) {
    SupportProfile prof = support_profile(t, k);
    CHECK(prof.k_supp >= 1);
    CHECK(prof.support_classes[0] == 0);  // identity class always in support
    // Baseline: k_supp <= |P| / chi(1).
    CHECK(static_cast<uint64_t>(prof.k_supp) * t.rows[k].degree <= d16.order());
    if (t.rows[k].degree == 1 && character_structure(t, k).kernel.order() == 16)
      CHECK(prof.k_supp == 7);
  }

  // Faithful degree-2 row: support classes have orders 1, 2, 8, 8.
  uint32_t k = find_faithful_row(t);
  SupportProfile prof = support_profile(t, k);
  CHECK(prof.k_supp == 4);
  CHECK(prof.max_order == 8);
  std::multiset<uint32_t> orders;
  for (uint32_t c : prof.support_classes)
    orders.insert(d16.element_order(t.classes.reps[c]));
  CHECK(orders == std::multiset<uint32_t>{1, 2, 8, 8});
  CHECK(prof.bound_count == 4);
  CHECK(prof.order_bound_str() == "2^(5/2)");

  // Extraspecial 27 nonlinear rows are GVZ: support equals Z(chi).
  auto h27p = std::make_shared<const Group>(build_family({Family::extraspecial, 3, {3}}));
  const CharacterTable& th = ctx.table_of(h27p);
  uint32_t kh = find_faithful_row(th);
  SupportProfile ph = support_profile(th, kh);
  CHECK(ph.gvz);
  CHECK(ph.k_supp == 3);

  // Column-orthogonality consequence per character.
  for (uint32_t row = 0; row < t.count(); ++row) {
    Cyclo acc;
    for (uint32_t c = 0; c < t.classes.count(); ++c) {
      const Cyclo& v = t.value(row, c);
      acc += (v * v.conjugate()).scaled(Rational(t.classes.sizes[c]));
    }
    CHECK(acc == Cyclo::from_rational(Rational(16)));
  }
}

TEST_CASE("trace character matches restriction of the induced character") {
  // A = C8, H = C2 acting by inversion; lambda faithful.
  Group a = make_cyclic(8);
  Group h = make_cyclic(2);
  Perm invert(8);
  for (Elt x = 0; x < 8; ++x) invert[x] = (8 - x) % 8;
  Action act = Action::from_generator_images(h, a, {invert});
  std::vector<Cyclo> lam;
  for (Elt x = 0; x < 8; ++x) lam.push_back(Cyclo::root_of_unity(8, x));

  std::vector<Cyclo> tr = trace_character(act, lam);
  for (Elt x = 0; x < 8; ++x)
    CHECK(tr[x] == Cyclo::root_of_unity(8, x) + Cyclo::root_of_unity(8, -int64_t(x)));

  // Same thing through the semidirect product: restriction of lambda^(AH).
  Group ah = semidirect_product(a, h, act);
  ClassPartition cl = conjugacy_classes(ah);
  Subgroup a_sub;
  a_sub.parent = &ah;
  for (Elt x = 0; x < 8; ++x) a_sub.members.push_back(x * 2);
  std::vector<Cyclo> lam_members;
  for (Elt x = 0; x < 8; ++x) lam_members.push_back(lam[x]);
  ClassFunction ind = induce(ah, cl, a_sub, lam_members);
  for (Elt x = 0; x < 8; ++x)
    CHECK(tr[x] == ind.values[cl.class_of[x * 2]]);

  // H trivial: the trace is lambda itself.
  Group h1 = Group::from_mult(1, [](Elt, Elt) { return 0u; }, {0});
  Action triv = Action::trivial(h1, a);
  std::vector<Cyclo> tr1 = trace_character(triv, lam);
  for (Elt x = 0; x < 8; ++x) CHECK(tr1[x] == lam[x]);

  // H-invariant lambda: the trace is |H| * lambda.
  std::vector<Cyclo> lam4;
  for (Elt x = 0; x < 8; ++x) lam4.push_back(Cyclo::root_of_unity(2, x));  // (-1)^x
  std::vector<Cyclo> tr4 = trace_character(act, lam4);
  for (Elt x = 0; x < 8; ++x) CHECK(tr4[x] == lam4[x].scaled(Rational(2)));
}

TEST_CASE("sigma on the dihedral instance") {
  Group a = make_cyclic(8);
  Group h = make_cyclic(2);
  Perm invert(8);
  for (Elt x = 0; x < 8; ++x) invert[x] = (8 - x) % 8;
  Action act = Action::from_generator_images(h, a, {invert});
  std::vector<Cyclo> lam;
  for (Elt x = 0; x < 8; ++x) lam.push_back(Cyclo::root_of_unity(8, x));
  SigmaReport rep = sigma(act, lam);
  // tr vanishes exactly at x = 2, 6; stabilizers are 2 at x = 0, 4.
  CHECK(rep.sigma == 8);
  CHECK(rep.stabilizer_of_lambda == 1);
  CHECK(rep.bound == 8);
  CHECK(rep.both_abelian);
  CHECK(rep.holds);

  // H trivial: sigma = |A| with equality.
  Group h1 = Group::from_mult(1, [](Elt, Elt) { return 0u; }, {0});
  SigmaReport rep1 = sigma(Action::trivial(h1, a), lam);
  CHECK(rep1.sigma == 8);
  CHECK(rep1.bound == 8);
}

TEST_CASE("sigma dichotomy and descent lemmas on random instances") {
  // For an H-invariant index-p subgroup B of A, either C_H(lambda_B) =
  // C_H(lambda), or the index is p and the trace vanishes off B; and
  // sigma(A) <= sigma(B) + (|A| - |B|) |C_H(lambda)|.
  Rng rng(515151);
  uint32_t dichotomy_checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const uint32_t p = rng.below(2) == 0 ? 2 : 3;
    std::vector<uint32_t> factors{p * p, p};
    Group a = build_family({Family::abelian, p, factors});
    Group h = build_family({Family::abelian, p, {p}});
    // Action: transvection-flavored automorphism of order p.
    const uint32_t na = a.order();
    Perm alpha(na);
    for (Elt x = 0; x < na; ++x) {
      // (u, v) -> (u + p*v', v) in mixed radix: u < p^2 (stride p), v < p.
      uint32_t u = x / p, v = x % p;
      uint32_t u2 = (u + p * v) % (p * p);
      alpha[x] = u2 * p + v;
    }
    Action act = Action::from_generator_images(h, a, {alpha});
    AbelianDual dual = abelian_dual(a);
    uint32_t lam_idx = static_cast<uint32_t>(rng.below(dual.count()));
    std::vector<Cyclo> lam(na);
    for (Elt x = 0; x < na; ++x) lam[x] = dual.value(lam_idx, x);

    SigmaReport full = sigma(act, lam);
    CHECK(full.holds);

    // Enumerate H-invariant index-p subgroups B.
    auto subs = all_subgroups(a);
    std::vector<Cyclo> tr = trace_character(act, lam);
    for (const Subgroup& b : subs) {
      if (b.order() * p != a.order()) continue;
      bool invariant = true;
      for (Elt x : b.members)
        if (!b.contains(alpha[x])) { invariant = false; break; }
      if (!invariant) continue;
      ++dichotomy_checked;
      // C_H(lambda_B): acting elements fixing lambda on B.
      uint32_t stab_b = 0;
      for (Elt hh = 0; hh < h.order(); ++hh) {
        bool fixes = true;
        for (Elt x : b.members)
          if (lam[act.apply(hh, x)] != lam[x]) { fixes = false; break; }
        if (fixes) ++stab_b;
      }
      bool case1 = stab_b == full.stabilizer_of_lambda;
      bool trace_vanishes_off_b = true;
      for (Elt x = 0; x < na; ++x)
        if (!b.contains(x) && !tr[x].is_zero()) trace_vanishes_off_b = false;
      bool case2 = stab_b == p * full.stabilizer_of_lambda && trace_vanishes_off_b;
      CHECK((case1 || case2));

      // Descent inequality over B with the restricted character.
      uint64_t sigma_b = 0;
      for (Elt x : b.members) {
        if (tr[x].is_zero()) continue;
        uint32_t st = 0;
        for (Elt hh = 0; hh < h.order(); ++hh)
          if (act.apply(hh, x) == x) ++st;
        sigma_b += st;
      }
      CHECK(full.sigma <= sigma_b + static_cast<uint64_t>(a.order() - b.order()) *
                                        full.stabilizer_of_lambda);
    }
  }
  CHECK(dichotomy_checked > 0);
}

TEST_CASE("seeded sigma suite holds") {
  SigmaSampleConfig cfg;
  cfg.count = 60;
  cfg.seed = 7;
  auto lines = sigma_random_suite(cfg);
  CHECK_FALSE(any_unexpected_fail(lines));
  uint32_t equalities = 0;
  for (const auto& l : lines)
    if (l.name == "equality_trivial_H") {
      ++equalities;
      CHECK(l.result == CheckResult::pass);
    }
  CHECK(equalities == 6);
  // Deterministic given the seed.
  auto again = sigma_random_suite(cfg);
  REQUIRE(again.size() == lines.size());
  for (size_t i = 0; i < lines.size(); ++i) CHECK(again[i].render() == lines[i].render());
}

TEST_CASE("theorem suites on hypothesis-satisfying groups") {
  TableContext ctx;
  for (FamilySpec spec : {FamilySpec{Family::extraspecial, 3, {3}},
                          FamilySpec{Family::extraspecial, 3, {9}},
                          FamilySpec{Family::wreath_cyclic, 3, {}},
                          FamilySpec{Family::abelian, 3, {9, 3}},
                          FamilySpec{Family::dihedral, 2, {16}},
                          FamilySpec{Family::quaternion, 2, {16}}}) {
    auto g = std::make_shared<const Group>(build_family(spec));
    std::string id = family_id(spec);
    auto a_lines = verify_theorem_A(ctx, g, id);
    CHECK_FALSE(any_unexpected_fail(a_lines));
    auto c_lines = verify_theorem_C(ctx, g, id);
    CHECK_FALSE(any_unexpected_fail(c_lines));
  }
}

TEST_CASE("theorem B on dihedral 16: the p = 2 negative controls") {
  TableContext ctx;
  auto d16 = std::make_shared<const Group>(build_family({Family::dihedral, 2, {16}}));
  auto lines = verify_theorem_B(ctx, d16, "dihedral(16)");
  bool closure_failed = false, divides_failed = false;
  for (const auto& l : lines) {
    if (l.result != CheckResult::fail) continue;
    if (l.name == "power_closure") closure_failed = true;
    if (l.name == "order_divides") divides_failed = true;
    // B(1)/B(2) never fail, even at p = 2.
    CHECK(l.name != "modulus_squared");
    CHECK(l.name != "root_of_unity");
    CHECK(l.name != "class_count");
  }
  CHECK(closure_failed);
  CHECK(divides_failed);

  // Declaring them as negative controls absorbs the failures.
  ExpectedFailures declared;
  declared.add_token("B.power_closure@dihedral(16)");
  declared.add_token("B.order_divides@dihedral(16)");
  CHECK_FALSE(any_unexpected_fail(lines, declared));
}

TEST_CASE("theorem B on odd-p class-3 groups") {
  TableContext ctx;
  for (FamilySpec spec : {FamilySpec{Family::extraspecial, 3, {3}},
                          FamilySpec{Family::extraspecial, 3, {9}},
                          FamilySpec{Family::wreath_cyclic, 3, {}}}) {
    auto g = std::make_shared<const Group>(build_family(spec));
    auto lines = verify_theorem_B(ctx, g, family_id(spec));
    CHECK_FALSE(any_unexpected_fail(lines));
  }
  // Class-4 groups are skipped.
  auto d32 = std::make_shared<const Group>(build_family({Family::dihedral, 2, {32}}));
  auto skipped = verify_theorem_B(ctx, d32, "dihedral(32)");
  REQUIRE(skipped.size() == 1);
  CHECK(skipped[0].result == CheckResult::skip);
}

TEST_CASE("lemma suite") {
  TableContext ctx;
  for (FamilySpec spec : {FamilySpec{Family::extraspecial, 3, {3}},
                          FamilySpec{Family::dihedral, 2, {16}},
                          FamilySpec{Family::quaternion, 2, {16}},
                          FamilySpec{Family::wreath_cyclic, 3, {}}}) {
    auto g = std::make_shared<const Group>(build_family(spec));
    auto lines = verify_lemmas(ctx, g, family_id(spec));
    CHECK_FALSE(any_unexpected_fail(lines));
    // Extraspecial: the frc five is harvested and a witness found.
    if (spec.family == Family::extraspecial) {
      bool witness_line = false;
      for (const auto& l : lines)
        if (l.name == "frc_witness" && l.result == CheckResult::pass) witness_line = true;
      CHECK(witness_line);
    }
  }
}

TEST_CASE("frc witness search on the extraspecial five") {
  TableContext ctx;
  auto gp = std::make_shared<const Group>(build_family({Family::extraspecial, 3, {3}}));
  const Group& g = *gp;
  const CharacterTable& t = ctx.table_of(gp);
  uint32_t k = find_faithful_row(t);
  Subgroup whole = whole_group(g);
  Subgroup z = center(g);
  std::vector<Cyclo> theta;
  for (Elt x : whole.members) theta.push_back(t.value(k, t.classes.class_of[x]));
  std::vector<Cyclo> phi;
  for (Elt x : z.members)
    phi.push_back(t.value(k, t.classes.class_of[x]).scaled(Rational(1, 3)));
  FrcResult res = frc_witness_search(t, k, whole, z, theta, phi, 729);
  CHECK(res.found);
  // With K = G the only admissible witness is U = L.
  CHECK(res.witness.members == z.members);
  CHECK(res.support_is_conjugate_union);

  // K = L degenerate five: U = G.
  std::vector<Cyclo> phi_z = phi;
  FrcResult degen = frc_witness_search(t, k, z, z, phi_z, phi_z, 729);
  CHECK(degen.found);
  CHECK(degen.witness.order() == g.order());

  // Bad five: non-normal K is rejected.
  Subgroup bad = generated(g, std::vector<Elt>{g.generators()[0]});
  if (!is_normal(g, bad)) {
    std::vector<Cyclo> vals(bad.members.size(), Cyclo::one());
    CHECK_THROWS_AS(frc_witness_search(t, k, bad, z, vals, phi, 729), CharError);
  }
}

TEST_CASE("report line protocol") {
  CheckLine line;
  line.suite = "A";
  line.name = "k_supp_bound";
  line.group_id = "dihedral(16)";
  line.chi = 4;
  line.result = CheckResult::pass;
  line.expected = "k*deg^2<=|P|";
  line.got = "4*4=16<=16";
  std::string text = line.render();
  CHECK(text == "CHECK A.k_supp_bound group=dihedral(16) chi=4 result=PASS "
                "expected=k*deg^2<=|P| got=4*4=16<=16");
  auto parsed = parse_check_line(text);
  REQUIRE(parsed.has_value());
  CHECK(parsed->render() == text);
  CHECK_FALSE(parse_check_line("nonsense").has_value());
  CHECK_FALSE(parse_check_line("CHECK missing.fields group=x").has_value());

  ExpectedFailures ef;
  ef.load_manifest("# comment\nexpect-fail B.power_closure@dihedral(16)\n");
  CheckLine fail_line = line;
  fail_line.suite = "B";
  fail_line.name = "power_closure";
  fail_line.result = CheckResult::fail;
  CHECK(ef.matches(fail_line));
  fail_line.group_id = "dihedral(32)";
  CHECK_FALSE(ef.matches(fail_line));
  CHECK_THROWS(ef.load_manifest("expect-fail no_dot_token\n"));
}
