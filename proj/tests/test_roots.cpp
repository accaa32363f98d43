#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/rootisolation.hpp"

using namespace cqe;

TEST_CASE("x^2 - 1 isolates to +-1") {
  UPoly p({Rat(-1), Rat(0), Rat(1)});
  auto roots = isolate_roots(p, 100);
  REQUIRE(roots.size() == 2);
  CHECK((roots[0] - ComplexBall::from_rational(Rat(-1), Rat(0), 128)).contains_zero());
  CHECK((roots[1] - ComplexBall::from_rational(Rat(1), Rat(0), 128)).contains_zero());
}

TEST_CASE("quartic root sums match the missing-cubic-term coefficient") {
  // x^4 + x + 1: the coefficient of x^3 is 0, so the roots sum to 0.
  UPoly p({Rat(1), Rat(1), Rat(0), Rat(0), Rat(1)});
  auto roots = isolate_roots(p, 128);
  REQUIRE(roots.size() == 4);
  ComplexBall sum;
  for (const auto& r : roots) sum = sum + r;
  CHECK(sum.contains_zero());
}

TEST_CASE("z^4 + z^3 + 1 root sum is -1") {
  UPoly p({Rat(1), Rat(0), Rat(0), Rat(1), Rat(1)});
  auto roots = isolate_roots(p, 128);
  REQUIRE(roots.size() == 4);
  ComplexBall sum;
  for (const auto& r : roots) sum = sum + r;
  CHECK((sum - ComplexBall::from_rational(Rat(-1), Rat(0), 160)).contains_zero());
}

TEST_CASE("isolated balls are pairwise disjoint and meet the radius bound") {
  UPoly p({Rat(3), Rat(-2), Rat(0), Rat(1), Rat(0), Rat(0), Rat(2)});
  auto roots = isolate_roots(p, 120);
  Dyadic limit = Dyadic::pow2(-120);
  for (size_t i = 0; i < roots.size(); ++i) {
    CHECK(roots[i].radius() <= limit);
    for (size_t j = i + 1; j < roots.size(); ++j) CHECK(balls_disjoint(roots[i], roots[j]));
  }
}

TEST_CASE("expanding the isolated roots reconstructs the square-free input") {
  SeededRng rng(0x4321);
  for (int t = 0; t < 8; ++t) {
    int deg = 2 + static_cast<int>(rng.next() % 7);
    std::vector<Rat> cs;
    for (int i = 0; i < deg; ++i) cs.push_back(rng.next_rational(5, 3));
    cs.push_back(Rat(1));
    UPoly p = squarefree_part(UPoly(std::move(cs)));
    if (p.degree() < 2) continue;
    auto roots = isolate_roots(p, 100);
    REQUIRE(static_cast<int>(roots.size()) == p.degree());
    std::vector<ComplexBall> coeff{ComplexBall::from_rational(Rat(1), Rat(0), 160)};
    for (const auto& r : roots) {
      std::vector<ComplexBall> next(coeff.size() + 1);
      for (size_t i = 0; i < coeff.size(); ++i) {
        next[i + 1] = (next[i + 1] + coeff[i]).rounded(160);
        next[i] = (next[i] - coeff[i] * r).rounded(160);
      }
      coeff = next;
    }
    for (int k = 0; k <= p.degree(); ++k) {
      ComplexBall diff =
          coeff[static_cast<size_t>(k)] - ComplexBall::from_rational(p.coeff(k), Rat(0), 160);
      CHECK(diff.contains_zero());
    }
  }
}

TEST_CASE("repeated factors are collapsed before isolation") {
  // (x-1)^2 (x+2): two distinct roots.
  UPoly p = UPoly({Rat(-1), Rat(1)}) * UPoly({Rat(-1), Rat(1)}) * UPoly({Rat(2), Rat(1)});
  auto roots = isolate_roots(p, 80);
  CHECK(roots.size() == 2);
}

TEST_CASE("refinement shrinks an isolating ball for the same root") {
  UPoly p({Rat(-2), Rat(0), Rat(1)});  // x^2 - 2
  auto roots = isolate_roots(p, 64);
  REQUIRE(roots.size() == 2);
  ComplexBall refined = refine_root_ball(p, roots[1], 256);
  CHECK(refined.radius() <= Dyadic::pow2(-256));
  CHECK(balls_overlap(refined, roots[1]));
}

TEST_CASE("precision requests beyond the cap are explicit failures") {
  UPoly p({Rat(-2), Rat(0), Rat(1)});
  CHECK_THROWS_AS(isolate_roots(p, kPrecisionCapBits + 1), PrecisionExceeded);
}

TEST_CASE("ball-coefficient isolation certifies simple roots") {
  // Coefficients of (x - 1)(x - 3) given as tight balls.
  std::vector<ComplexBall> cs{ComplexBall::from_rational(Rat(3), Rat(0), 96),
                              ComplexBall::from_rational(Rat(-4), Rat(0), 96),
                              ComplexBall::from_rational(Rat(1), Rat(0), 96)};
  auto disks = isolate_roots_ball_coeffs(cs, 40);
  REQUIRE(disks.size() == 2);
  CHECK((disks[0] - ComplexBall::from_rational(Rat(1), Rat(0), 96)).contains_zero());
  CHECK((disks[1] - ComplexBall::from_rational(Rat(3), Rat(0), 96)).contains_zero());
}
