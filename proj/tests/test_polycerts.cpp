#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/polycerts.hpp"

using namespace cqe;

TEST_CASE("perfect squares of polynomials") {
  CHECK(perfect_square_test(MultiPoly::parse("a^2 + 2*a + 1").to_upoly("a")));
  CHECK_FALSE(perfect_square_test(MultiPoly::parse("256*a^3 - 27").to_upoly("a")));
  CHECK(perfect_square_test(MultiPoly::parse("4*a^2").to_upoly("a")));
  CHECK(perfect_square_test(MultiPoly::parse("9/4*a^4 - 3*a^2 + 1").to_upoly("a")));
  CHECK_FALSE(perfect_square_test(MultiPoly::parse("a^2 + 1/2").to_upoly("a")));
  CHECK_THROWS(perfect_square_test(UPoly()));
}

TEST_CASE("linearity-based irreducibility certificates") {
  CHECK(linear_in_a_irreducible(MultiPoly::parse("t^3 - 4*a*t - 1"), "a", "t"));
  CHECK(linear_in_a_irreducible(MultiPoly::parse("X^4 + X + a"), "a", "X"));
  // a*(t^2-1) + (t-1) has the common factor t-1.
  CHECK_FALSE(linear_in_a_irreducible(MultiPoly::parse("a*t^2 - a + t - 1"), "a", "t"));
  CHECK_THROWS(linear_in_a_irreducible(MultiPoly::parse("X^4 + X + a^2"), "a", "X"));
}

TEST_CASE("coefficient gcd in one variable") {
  CHECK(coeff_gcd_in(MultiPoly::parse("x*y - 2*y + x - 2"), "y") == MultiPoly::parse("x - 2"));
  CHECK(coeff_gcd_in(MultiPoly::parse("y - x^2"), "y").is_constant());
  CHECK(coeff_gcd_in(MultiPoly::parse("x^2*y + x"), "y") == MultiPoly::parse("x"));
}

TEST_CASE("small-degree irreducibility over the rationals") {
  CHECK(irreducible_over_q(MultiPoly::parse("x^3 - 4*x - 1").to_upoly("x")));
  CHECK_FALSE(irreducible_over_q(MultiPoly::parse("x^4 + x").to_upoly("x")));        // root 0
  CHECK(irreducible_over_q(MultiPoly::parse("x^4 + x + 1").to_upoly("x")));
  CHECK_FALSE(irreducible_over_q(MultiPoly::parse("x^4 + 4").to_upoly("x")));        // Sophie Germain
  CHECK(irreducible_over_q(MultiPoly::parse("x^4 - 10*x^2 + 1").to_upoly("x")));     // sqrt2+sqrt3
  CHECK_FALSE(irreducible_over_q(MultiPoly::parse("x^4 - 5*x^2 + 6").to_upoly("x")));
  CHECK_FALSE(irreducible_over_q(MultiPoly::parse("4*x^2 - 1").to_upoly("x")));
}

TEST_CASE("rational squares") {
  CHECK(rational_is_square(Rat(9, 4)));
  CHECK(rational_is_square(Rat(0)));
  CHECK_FALSE(rational_is_square(Rat(-4)));
  CHECK_FALSE(rational_is_square(Rat(2)));
  CHECK(rational_is_square(Rat(81)));
}
