#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curves/curveset.hpp"
#include "lab/theta.hpp"

using namespace cqe;

namespace {

Point rational_point(std::initializer_list<Rat> coords) {
  Point p;
  for (const Rat& c : coords) p.emplace_back(c);
  return p;
}

}  // namespace

TEST_CASE("plane curve membership at rational points") {
  CurveSet parab = CurveSet::from_plane(MultiPoly::parse("x2 - x1^2"));
  CHECK(parab.membership(rational_point({Rat(2), Rat(4)})));
  CHECK_FALSE(parab.membership(rational_point({Rat(2), Rat(5)})));
}

TEST_CASE("link membership at algebraic points on the shared-value curve") {
  // {(u,v) : u^4 + u = v^4 + v} at a pair of distinct roots of X^4 + X + 1:
  // both sides evaluate to -1.
  ThetaContext ctx = build_theta_context(ThetaFamily::QuarticXPlusA, 4, Rat(1), 96);
  CurveSet plane = CurveSet::from_plane(MultiPoly::parse("x1^4 + x1 - x2^4 - x2"));
  Point pt{ctx.roots[0], ctx.roots[1]};
  CHECK(plane.membership(pt));
  Point off{ctx.roots[0], AlgebraicNumber(Rat(1, 2))};
  CHECK_FALSE(plane.membership(off));

  // Same set presented as a link system (parameter x1 tied to x2).
  LinkComponent lc;
  lc.arity = 2;
  lc.param_index = 0;
  lc.links[1] = MultiPoly::parse("x1^4 + x1 - x2^4 - x2");
  CurveSet linked = CurveSet::empty_set(2);
  linked.link_components.push_back(lc);
  CHECK(linked.membership(pt));
  CHECK_FALSE(linked.membership(off));
}

TEST_CASE("sampling a parabola produces points of the form (r, r^2)") {
  CurveSet parab = CurveSet::from_plane(MultiPoly::parse("x2 - x1^2"));
  auto pts = parab.sample_points(3, 11);
  REQUIRE(pts.size() == 3);
  for (const auto& p : pts) {
    REQUIRE(p.size() == 2);
    CHECK(parab.membership(p));
  }
}

TEST_CASE("sampling a finite point set repeats its members") {
  CurveSet single = CurveSet::from_points(2, {rational_point({Rat(0), Rat(0)})});
  auto pts = single.sample_points(4, 3);
  REQUIRE(pts.size() == 4);
  for (const auto& p : pts) CHECK(points_equal(p, rational_point({Rat(0), Rat(0)})));
}

TEST_CASE("sampling an empty set reports") {
  CurveSet empty = CurveSet::empty_set(2);
  CHECK_THROWS_AS(empty.sample_points(2, 5), std::runtime_error);
}

TEST_CASE("minus points are removed last") {
  CurveSet c = CurveSet::from_plane(MultiPoly::parse("x2 - x1"));
  c.minus.arity = 2;
  c.minus.add(rational_point({Rat(1), Rat(1)}));
  CHECK_FALSE(c.membership(rational_point({Rat(1), Rat(1)})));
  CHECK(c.membership(rational_point({Rat(2), Rat(2)})));
}

TEST_CASE("serialization round-trips across the documented kinds") {
  CurveSet plane = CurveSet::from_plane(MultiPoly::parse("x1^2 + x2^2 - 1"));
  CurveSet again = CurveSet::parse_json(plane.to_json());
  CHECK(again.planes.size() == 1);
  CHECK(again.planes[0].p == plane.planes[0].p);

  CurveSet pts = CurveSet::from_points(2, {rational_point({Rat(1), Rat(2)})});
  CurveSet pts2 = CurveSet::parse_json(pts.to_json());
  CHECK(pts2.extra.points.size() == 1);
  CHECK(points_equal(pts2.extra.points[0], rational_point({Rat(1), Rat(2)})));

  LinkComponent lc;
  lc.arity = 3;
  lc.param_index = 0;
  lc.links[1] = MultiPoly::parse("x2 - x1^2");
  lc.links[2] = MultiPoly::parse("x3 - x1^3");
  CurveSet links = CurveSet::empty_set(3);
  links.link_components.push_back(lc);
  CurveSet links2 = CurveSet::parse_json(links.to_json());
  REQUIRE(links2.link_components.size() == 1);
  CHECK(links2.link_components[0].links.at(2) == lc.links.at(2));

  CurveSet cof = CurveSet::full_line();
  cof.minus.add({AlgebraicNumber(Rat(7))});
  CurveSet cof2 = CurveSet::parse_json(cof.to_json());
  CHECK(cof2.full);
  CHECK(cof2.minus.points.size() == 1);
}

TEST_CASE("dimension audit: component fibers over sampled parameters stay finite") {
  LinkComponent lc;
  lc.arity = 3;
  lc.param_index = 0;
  lc.links[1] = MultiPoly::parse("x2^2 - x1");
  lc.links[2] = MultiPoly::parse("x3 - x1^2");
  SeededRng rng(64);
  for (int t = 0; t < 64; ++t) {
    Rat r = rng.next_rational(100, 9);
    for (const auto& [j, link] : lc.links) {
      MultiPoly spec = link.substitute(pos_var(static_cast<size_t>(lc.param_index)), r);
      CHECK_FALSE(spec.is_zero());  // a vanishing specialization would be an infinite fiber
    }
  }
}
