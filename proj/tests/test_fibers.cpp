#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curves/fibers.hpp"

using namespace cqe;

namespace {

std::map<std::string, AlgebraicNumber> at(const std::string& v, const Rat& r) {
  return {{v, AlgebraicNumber(r)}};
}

}  // namespace

TEST_CASE("eliminating the shared variable from two graphs yields the diagonal") {
  auto c = eliminate_variable({{MultiPoly::parse("y - x1"), "x1", "y"},
                               {MultiPoly::parse("y - x2"), "x2", "y"}},
                              {"x1", "x2"});
  REQUIRE(c.link_components.size() == 1);
  const auto& link = c.link_components[0].links.at(1);
  CHECK((link == MultiPoly::parse("x1 - x2") || link == MultiPoly::parse("x2 - x1")));
}

TEST_CASE("projection of parabola and circle onto x hits the quartic roots") {
  auto c = eliminate_variable({{MultiPoly::parse("y - x^2"), "x", "y"},
                               {MultiPoly::parse("x^2 + y^2 - 1"), "x", "y"}},
                              {"x"});
  REQUIRE(c.extra.points.size() == 4);
  // Every projected point satisfies x^4 + x^2 - 1 = 0.
  UPoly quartic = MultiPoly::parse("x^4 + x^2 - 1").to_upoly("x");
  for (const auto& p : c.extra.points) CHECK(upoly_zero_at(quartic, p.at(0)));
}

TEST_CASE("a single graph projects onto the full line") {
  auto c = eliminate_variable({{MultiPoly::parse("y - x1"), "x1", "y"}}, {"x1"});
  CHECK(c.full);
}

TEST_CASE("fiber counting at rational points") {
  std::vector<SharedCurve> graph{{MultiPoly::parse("y - x^2"), "x", "y"}};
  auto fc = fiber_count_at(graph, at("x", Rat(3)));
  CHECK_FALSE(fc.infinite);
  CHECK(fc.count == 1);

  std::vector<SharedCurve> degen{{MultiPoly::parse("x*y - 2*y + x - 2"), "x", "y"}};
  CHECK(fiber_count_at(degen, at("x", Rat(2))).infinite);

  std::vector<SharedCurve> tangent{{MultiPoly::parse("y^2 - x"), "x", "y"}};
  auto fc2 = fiber_count_at(tangent, at("x", Rat(0)));
  CHECK_FALSE(fc2.infinite);
  CHECK(fc2.count == 1);  // the double root counts once
}

TEST_CASE("infinite fiber loci") {
  auto l1 = infinite_fiber_locus(MultiPoly::parse("x*y - 2*y + x - 2"), "x", "y");
  REQUIRE(l1.size() == 1);
  CHECK(alg_equal(l1[0], AlgebraicNumber(Rat(2))));
  CHECK(infinite_fiber_locus(MultiPoly::parse("y - x^2"), "x", "y").empty());
  auto l3 = infinite_fiber_locus(MultiPoly::parse("x^2*y + x"), "x", "y");
  REQUIRE(l3.size() == 1);
  CHECK(alg_equal(l3[0], AlgebraicNumber(Rat(0))));
}

TEST_CASE("generic fiber data for the documented examples") {
  auto g1 = generic_fiber_data({{MultiPoly::parse("y^2 - x"), "x", "y"}}, 21);
  CHECK(g1.generic_count == 2);
  bool has_zero = false;
  for (const auto& e : g1.exceptional)
    if (alg_equal(e, AlgebraicNumber(Rat(0)))) has_zero = true;
  CHECK(has_zero);

  auto g2 = generic_fiber_data({{MultiPoly::parse("y - x^2"), "x", "y"}}, 21);
  CHECK(g2.generic_count == 1);
  CHECK(g2.exceptional.empty());

  auto g3 = generic_fiber_data({{MultiPoly::parse("y - x"), "x", "y"},
                                {MultiPoly::parse("y + x"), "x", "y"}},
                               21);
  CHECK(g3.generic_count == 0);
  REQUIRE_FALSE(g3.exceptional.empty());
  bool zero_candidate = false;
  for (const auto& e : g3.exceptional)
    if (alg_equal(e, AlgebraicNumber(Rat(0)))) zero_candidate = true;
  CHECK(zero_candidate);
  auto fc = fiber_count_at({{MultiPoly::parse("y - x"), "x", "y"},
                            {MultiPoly::parse("y + x"), "x", "y"}},
                           at("x", Rat(0)));
  CHECK(fc.count == 1);
}

TEST_CASE("fiber counts agree with brute-force isolation on random instances") {
  SeededRng rng(0x50f4);
  int done = 0;
  while (done < 50) {
    // Random bivariate of y-degree <= 6 with a planted structure.
    MultiPoly p;
    int dy = 1 + static_cast<int>(rng.next() % 6);
    for (int k = 0; k <= dy; ++k) {
      Rat c = rng.next_rational(6, 3);
      if (k == dy && c == 0) c = Rat(1);
      unsigned dx = static_cast<unsigned>(rng.next() % 3);
      p = p + MultiPoly::var("x").pow(dx) * MultiPoly::var("y").pow(static_cast<unsigned>(k)) * c;
    }
    if (p.degree("y") < 1) continue;
    Rat x0 = rng.next_rational(12, 5);
    MultiPoly spec = p.substitute("x", x0);
    if (spec.is_zero() || spec.degree("y") < 1) continue;
    auto fc = fiber_count_at({{p, "x", "y"}}, at("x", x0));
    auto roots = isolate_roots(spec.to_upoly("y"), 80);
    CHECK_FALSE(fc.infinite);
    CHECK(fc.count == static_cast<int>(roots.size()));
    ++done;
  }
}

TEST_CASE("elimination rejects conjuncts with no dependence on the bound variable") {
  CHECK_THROWS_AS(eliminate_variable({{MultiPoly::parse("x - 2"), "x", "y"}}, {"x"}),
                  std::domain_error);
}

TEST_CASE("gcd jump certificates cover specialization collapses") {
  MultiPoly f = MultiPoly::parse("y^2 - x");
  MultiPoly g = MultiPoly::parse("y^2 - 2*y + x");
  GcdJump gj = gcd_with_jump(f, g, "y");
  CHECK(gj.h.is_constant());  // coprime generically
  // At the jump parameters the specializations share a root; x = 1/2 gives
  // y^2 = 1/2 and (y-1)^2 = 1/2 with the common root handled by candidates.
  REQUIRE_FALSE(gj.jump.is_constant());
  UPoly jump = gj.jump.to_upoly("x");
  // Verify: any x0 where the specializations share a root must kill jump.
  SeededRng rng(3);
  for (int t = 0; t < 25; ++t) {
    Rat x0 = rng.next_rational(8, 4);
    UPoly fs = f.substitute("x", x0).to_upoly("y");
    UPoly gs = g.substitute("x", x0).to_upoly("y");
    bool share = gcd(fs, gs).degree() >= 1;
    if (share) CHECK(jump.eval(x0) == 0);
  }
}

TEST_CASE("projection soundness: true solutions land in the superset, which stays slim") {
  // System: y = x1^2 and y = x2^3 share y; project onto (x1, x2).
  std::vector<SharedCurve> curves{{MultiPoly::parse("y - x1^2"), "x1", "y"},
                                  {MultiPoly::parse("y - x2^3"), "x2", "y"}};
  CurveSet proj = eliminate_variable(curves, {"x1", "x2"});
  SeededRng rng(0xacce);
  int solution_points = 0;
  while (solution_points < 100) {
    Rat x1 = rng.next_rational(10, 4);
    // Solve the fibers: y = x1^2, then x2 must be a cube root of y.
    Rat y = x1 * x1;
    auto res = solve_bivariate_at(MultiPoly::parse("y - x2^3"), "y", AlgebraicNumber(y), "x2");
    for (const auto& x2 : std::get<std::vector<AlgebraicNumber>>(res)) {
      Point pt{AlgebraicNumber(x1), x2};
      CHECK(proj.membership(pt));
      ++solution_points;
    }
  }
  // Exactness spot-checks: points of the superset link carry a shared-y
  // witness except over degenerate parameters.
  REQUIRE(proj.link_components.size() >= 1);
  const LinkComponent& lc = proj.link_components[0];
  int witnessed = 0;
  SeededRng rng2(0xbeef);
  while (witnessed < 20) {
    Rat p = rng2.next_rational(6, 3);
    AlgebraicNumber pv(p);
    auto sols = solve_bivariate_at(lc.links.at(1), pos_var(0), pv, pos_var(1));
    if (std::holds_alternative<AllSolutions>(sols)) continue;
    for (const auto& x2 : std::get<std::vector<AlgebraicNumber>>(sols)) {
      std::map<std::string, AlgebraicNumber> x0{{"x1", pv}, {"x2", x2}};
      FiberCount fc = fiber_count_at(curves, x0);
      CHECK((fc.infinite || fc.count >= 1));
      ++witnessed;
    }
  }
}

TEST_CASE("dimension audit: projection components have finite fibers over sampled parameters") {
  std::vector<SharedCurve> curves{{MultiPoly::parse("y - x1^2"), "x1", "y"},
                                  {MultiPoly::parse("x2^2 + y^2 - 1"), "x2", "y"}};
  CurveSet proj = eliminate_variable(curves, {"x1", "x2"});
  SeededRng rng(0xd1a);
  for (const auto& lc : proj.link_components) {
    for (int t = 0; t < 64; ++t) {
      Rat r = rng.next_rational(50, 9);
      for (const auto& [j, link] : lc.links) {
        MultiPoly spec = link.substitute(pos_var(static_cast<size_t>(lc.param_index)), r);
        // Pin links (free of the parameter) keep their own variable; either
        // way the fiber in coordinate j stays finite.
        CHECK_FALSE(spec.is_zero());
      }
    }
  }
}
