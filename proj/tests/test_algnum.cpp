#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/algnum.hpp"

using namespace cqe;

namespace {

AlgebraicNumber nth_root_of(const UPoly& p, size_t idx, long prec = 96) {
  UPoly sf = squarefree_part(p);
  auto balls = isolate_roots(sf, prec);
  return AlgebraicNumber(sf, balls.at(idx));
}

}  // namespace

TEST_CASE("sqrt2 plus its negative is zero") {
  UPoly x2m2({Rat(-2), Rat(0), Rat(1)});
  AlgebraicNumber s2 = nth_root_of(x2m2, 1);
  AlgebraicNumber sum = alg_add(s2, alg_neg(s2));
  CHECK(alg_is_zero(sum));
  CHECK(alg_equal(sum, AlgebraicNumber(Rat(0))));
}

TEST_CASE("rationals pass through addition") {
  AlgebraicNumber a(Rat(1, 2)), b(Rat(1, 3));
  AlgebraicNumber c = alg_add(a, b);
  CHECK(c.is_rational());
  CHECK(c.rational_value() == Rat(5, 6));
}

TEST_CASE("sqrt2 + sqrt3 has annihilator dividing w^4 - 10w^2 + 1") {
  AlgebraicNumber s2 = nth_root_of(UPoly({Rat(-2), Rat(0), Rat(1)}), 1);
  AlgebraicNumber s3 = nth_root_of(UPoly({Rat(-3), Rat(0), Rat(1)}), 1);
  AlgebraicNumber sum = alg_add(s2, s3);
  UPoly target({Rat(1), Rat(0), Rat(-10), Rat(0), Rat(1)});
  auto [q, r] = UPoly::divmod(target, sum.minpoly());
  CHECK(r.is_zero());
  CHECK(upoly_zero_at(target, sum));
}

TEST_CASE("addition is commutative and associative on random algebraic triples") {
  UPoly p1({Rat(-2), Rat(0), Rat(1)});
  UPoly p2({Rat(-3), Rat(0), Rat(1)});
  UPoly p3({Rat(1), Rat(1), Rat(0), Rat(0), Rat(1)});
  std::vector<AlgebraicNumber> pool;
  for (size_t i = 0; i < 2; ++i) pool.push_back(nth_root_of(p1, i));
  for (size_t i = 0; i < 2; ++i) pool.push_back(nth_root_of(p2, i));
  pool.push_back(nth_root_of(p3, 0));
  pool.push_back(nth_root_of(p3, 3));
  SeededRng rng(1234);
  for (int t = 0; t < 6; ++t) {
    const auto& a = pool[rng.next() % pool.size()];
    const auto& b = pool[rng.next() % pool.size()];
    const auto& c = pool[rng.next() % pool.size()];
    CHECK(alg_equal(alg_add(a, b), alg_add(b, a)));
    CHECK(alg_equal(alg_add(alg_add(a, b), c), alg_add(a, alg_add(b, c))));
  }
}

TEST_CASE("equality distinguishes conjugate roots") {
  UPoly p({Rat(-2), Rat(0), Rat(1)});
  AlgebraicNumber neg = nth_root_of(p, 0), pos = nth_root_of(p, 1);
  CHECK_FALSE(alg_equal(neg, pos));
  CHECK(alg_equal(pos, pos));
  CHECK(alg_separation_lower(neg, pos).sign() > 0);
}

TEST_CASE("scaling and rational shifts track the minimal polynomial") {
  AlgebraicNumber s2 = nth_root_of(UPoly({Rat(-2), Rat(0), Rat(1)}), 1);
  AlgebraicNumber twice = alg_scale(s2, Rat(2));  // sqrt(8)
  CHECK(upoly_zero_at(UPoly({Rat(-8), Rat(0), Rat(1)}), twice));
  AlgebraicNumber shifted = alg_add_rat(s2, Rat(1));
  CHECK(upoly_zero_at(UPoly({Rat(-1), Rat(-2), Rat(1)}), shifted));  // (w-1)^2 = 2
}

TEST_CASE("bivariate zero test at algebraic pairs") {
  MultiPoly g = MultiPoly::parse("u^2 + v^2 - 5");
  AlgebraicNumber s2 = nth_root_of(UPoly({Rat(-2), Rat(0), Rat(1)}), 1);
  AlgebraicNumber s3 = nth_root_of(UPoly({Rat(-3), Rat(0), Rat(1)}), 1);
  CHECK(bivariate_zero_at(g, "u", s2, "v", s3));
  CHECK_FALSE(bivariate_zero_at(g, "u", s2, "v", s2));
  MultiPoly diag = MultiPoly::parse("u - v");
  CHECK(bivariate_zero_at(diag, "u", s2, "v", s2));
  CHECK_FALSE(bivariate_zero_at(diag, "u", s2, "v", alg_neg(s2)));
}

TEST_CASE("solving a bivariate at an algebraic point") {
  // v^2 = u at u = 2: the two square roots of 2.
  MultiPoly g = MultiPoly::parse("v^2 - u");
  AlgebraicNumber two(Rat(2));
  auto res = solve_bivariate_at(g, "u", two, "v");
  REQUIRE(std::holds_alternative<std::vector<AlgebraicNumber>>(res));
  auto vals = std::get<std::vector<AlgebraicNumber>>(res);
  REQUIRE(vals.size() == 2);
  CHECK(upoly_zero_at(UPoly({Rat(-2), Rat(0), Rat(1)}), vals[0]));

  // At an algebraic parameter: v^2 = sqrt(2) has two solutions, each a root
  // of w^4 - 2.
  AlgebraicNumber s2 = nth_root_of(UPoly({Rat(-2), Rat(0), Rat(1)}), 1);
  auto res2 = solve_bivariate_at(g, "u", s2, "v");
  auto vals2 = std::get<std::vector<AlgebraicNumber>>(res2);
  REQUIRE(vals2.size() == 2);
  for (const auto& v : vals2) CHECK(upoly_zero_at(UPoly({Rat(-2), Rat(0), Rat(0), Rat(0), Rat(1)}), v));

  // Vanishing specialization: (u - 2) * v at u = 2 has every v as a solution.
  MultiPoly h = MultiPoly::parse("u*v - 2*v");
  auto res3 = solve_bivariate_at(h, "u", two, "v");
  CHECK(std::holds_alternative<AllSolutions>(res3));
}

TEST_CASE("midpoint ordering is a deterministic total order on distinct values") {
  UPoly p({Rat(1), Rat(1), Rat(0), Rat(0), Rat(1)});
  std::vector<AlgebraicNumber> roots;
  for (size_t i = 0; i < 4; ++i) roots.push_back(nth_root_of(p, i));
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = 0; j < roots.size(); ++j) {
      if (i == j) continue;
      CHECK(alg_midpoint_less(roots[i], roots[j]) != alg_midpoint_less(roots[j], roots[i]));
    }
}
