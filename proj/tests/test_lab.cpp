#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lab/section5.hpp"

using namespace cqe;

TEST_CASE("locus polynomial matches its defining expansion") {
  // Oracle: expand (s - y)^4 + (s - y) - (y^4 + y) symbolically and drop the
  // vanishing top terms; the result must equal the published coefficients.
  MultiPoly s = MultiPoly::var("s"), y = MultiPoly::var("y");
  MultiPoly z = s - y;
  MultiPoly direct = z.pow(4) + z - y.pow(4) - y;
  CHECK(direct == r_locus_poly("y", "s"));
  auto coeffs = r_locus_poly("y", "s").coeffs_in("y");
  REQUIRE(coeffs.size() == 4);
  CHECK(coeffs[3] == MultiPoly::parse("-4*s"));
  CHECK(coeffs[2] == MultiPoly::parse("6*s^2"));
  CHECK(coeffs[1] == MultiPoly::parse("-4*s^3 - 2"));
  CHECK(coeffs[0] == MultiPoly::parse("s^4 + s"));
}

TEST_CASE("context construction anchors root sums") {
  ThetaContext q = build_theta_context(ThetaFamily::QuarticXPlusA, 4, Rat(1), 128);
  CHECK(q.roots.size() == 4);
  CHECK(q.separation.sign() > 0);
  ThetaContext z = build_theta_context(ThetaFamily::PowerPlusPrev, 6, Rat(1), 128);
  CHECK(z.roots.size() == 6);
  ComplexBall sum;
  for (const auto& r : z.roots) sum = sum + r.box();
  CHECK((sum - ComplexBall::from_rational(Rat(-1), Rat(0), 160)).contains_zero());
}

TEST_CASE("degenerate parameters are rejected, not mis-certified") {
  // z^2 + z + 1/4 = (z + 1/2)^2 has a double root.
  CHECK_THROWS(build_theta_context(ThetaFamily::PowerPlusPrev, 2, Rat(1, 4), 96));
}

TEST_CASE("triangle satisfies the ternary relation, the star does not") {
  ThetaContext ctx = build_theta_context(ThetaFamily::QuarticXPlusA, 4, Rat(1), 128);
  auto [hub, rim] = triangle_star_configs(ctx);

  // Vieta anchors: the roots sum to zero, so the hub entries add to
  // +2*z4 and the rim entries to -2*z4.
  {
    ComplexBall twice = ctx.root_ball(3, 128).scale(Rat(2), 128);
    ComplexBall sh, sr;
    for (const auto& v : hub.values) sh = sh + root_sum_ball(ctx, v, 128);
    for (const auto& v : rim.values) sr = sr + root_sum_ball(ctx, v, 128);
    CHECK((sh - twice).contains_zero());
    CHECK((sr + twice).contains_zero());
  }
  // The tuples are distinct entrywise.
  for (size_t i = 0; i < 3; ++i) CHECK_FALSE(root_sums_equal(ctx, hub.values[i], rim.values[i]));

  CheckTResult t_hub = check_T(ctx, hub);
  CHECK(t_hub.satisfied);
  CHECK(t_hub.witness_root_index == 3);
  CheckTResult t_rim = check_T(ctx, rim);
  CHECK_FALSE(t_rim.satisfied);
  CHECK(t_rim.separation.sign() > 0);
}

TEST_CASE("the triangle/star split holds across every certified parameter") {
  for (const Rat& a : {Rat(2), Rat(-3), Rat(5, 7)}) {
    ThetaContext ctx = build_theta_context(ThetaFamily::QuarticXPlusA, 4, a, 128);
    auto [hub, rim] = triangle_star_configs(ctx);
    CHECK(check_T(ctx, hub).satisfied);
    CHECK_FALSE(check_T(ctx, rim).satisfied);
  }
}

TEST_CASE("the zero tuple has empty loci") {
  ThetaContext ctx = build_theta_context(ThetaFamily::QuarticXPlusA, 4, Rat(1), 96);
  ConfigTuple zero;
  zero.values = {RootSum{{}, Rat(0)}, RootSum{{}, Rat(0)}, RootSum{{}, Rat(0)}};
  CheckTResult r = check_T(ctx, zero);
  CHECK_FALSE(r.satisfied);
}

TEST_CASE("subset sums of the quartic context") {
  ThetaContext ctx = build_theta_context(ThetaFamily::QuarticXPlusA, 4, Rat(1), 128);
  auto k1 = subset_sum_injective(ctx, 1);
  CHECK(k1.injective);
  CHECK(k1.pairs == 6);
  auto k2 = subset_sum_injective(ctx, 2);
  CHECK(k2.injective);
  CHECK(k2.pairs == 15);
  auto k4 = subset_sum_injective(ctx, 4);
  CHECK(k4.injective);
  CHECK(k4.pairs == 0);  // single subset, vacuous
}

TEST_CASE("predicate-indexed sums have the right support sizes") {
  int n = 3;
  ThetaContext ctx = build_theta_context(ThetaFamily::PowerPlusPrev, 4, Rat(1), 128);
  RootAssignment id{0, 1, 2, 3};
  SectionTuples tup = build_section5_tuples(n, ctx, id, id);
  REQUIRE(tup.s.size() == 3);
  for (const auto& v : tup.s) CHECK(v.indices.size() == 2);  // |X_i| = 2^(n-2)
  // Identity assignments give different tuples on the two sides.
  bool all_equal = true;
  for (size_t i = 0; i < 3; ++i)
    if (!root_sums_equal(ctx, tup.s[i], tup.t[i])) all_equal = false;
  CHECK_FALSE(all_equal);
}

TEST_CASE("no bijection reproduces the odd-side sums") {
  ThetaContext ctx = build_theta_context(ThetaFamily::PowerPlusPrev, 4, Rat(1), 128);
  ClaimBReport rep = claim_B_check(3, ctx);
  CHECK(rep.passed);
  CHECK(rep.matching_psi == 0);
  CHECK(rep.searched == 24);
  CHECK(rep.tuple_satisfiable_even);
  CHECK(rep.tampered_sanity);
  CHECK(rep.double_precision_agrees);
}

TEST_CASE("alignment witnesses for relabeled reducts") {
  Bijection lam = lambda_witness_check(3, {1, 2}, {1, 2});
  CHECK(lam.size() == 4);
  Bijection shifted = lambda_witness_check(3, {2, 3}, {1, 2});
  CHECK(shifted.size() == 4);
  // All 24 diagonal pairs of injections for n = 4.
  int count = 0;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c) {
        if (a == b || a == c || b == c) continue;
        std::vector<int> inj{a, b, c};
        CHECK(lambda_witness_check(4, inj, inj).size() == 8);
        ++count;
      }
  CHECK(count == 24);
}

TEST_CASE("binary relation instance: a pair sum relates to its member") {
  ThetaContext ctx = build_theta_context(ThetaFamily::PowerPlusPrev, 4, Rat(1), 128);
  CHECK(relation_R(ctx, RootSum{{0, 1}, Rat(0)}, 0, 2));
  CHECK(relation_R(ctx, RootSum{{0, 1}, Rat(0)}, 1, 2));
  CHECK_FALSE(relation_R(ctx, RootSum{{0, 1}, Rat(0)}, 2, 2));
}

TEST_CASE("binarized and sum definitions agree on a small battery") {
  ThetaContext ctx = build_theta_context(ThetaFamily::PowerPlusPrev, 4, Rat(1), 128);
  BinarizationReport rep = binarization_check(3, ctx, 6);
  CHECK(rep.passed);
  CHECK(rep.positives >= 4);
  CHECK(rep.negatives >= 6);
}

#include "qe/equivalence.hpp"
#include "report/acceptance.hpp"

TEST_CASE("the eliminated ternary relation agrees with the experiment tuples") {
  // Load the shipped vocabulary, evaluate the defining formula at the hub
  // and rim tuples of the quartic context: the hub satisfies it, the rim
  // does not.  This ties the elimination pipeline to the exact experiments.
  ConstructibleCurveOracle oracle(3, 128);
  oracle.load_signature_json(read_text_file(default_data_dir() + "/corpus_signature.json"));
  FormulaPtr t_formula =
      parse_formula("(exists y (and (rel y s1) (rel y s2) (rel y s3)))", oracle.sig());
  ThetaContext ctx = build_theta_context(ThetaFamily::QuarticXPlusA, 4, Rat(1), 128);
  auto [hub, rim] = triangle_star_configs(ctx);
  auto tuple_point = [&](const ConfigTuple& cfg) {
    std::map<std::string, AlgebraicNumber> pt;
    pt.emplace("s1", root_sum_value(ctx, cfg.values[0]));
    pt.emplace("s2", root_sum_value(ctx, cfg.values[1]));
    pt.emplace("s3", root_sum_value(ctx, cfg.values[2]));
    return pt;
  };
  CHECK(eval_formula(t_formula, oracle, tuple_point(hub)));
  CHECK_FALSE(eval_formula(t_formula, oracle, tuple_point(rim)));

  // The defining membership itself: (0, -1) lies on the relation (witness
  // z = -1 shares the quartic value with y = 0), while the removed points
  // with s = 2y do not.
  const CurveSet& rel = oracle.geometry_of("rel");
  Point on{AlgebraicNumber(Rat(0)), AlgebraicNumber(Rat(-1))};
  CHECK(rel.membership(on));
  for (const auto& removed : rel.minus.points) CHECK_FALSE(rel.membership(removed));
}
