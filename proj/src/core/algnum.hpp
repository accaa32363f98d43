#ifndef CQE_CORE_ALGNUM_HPP
#define CQE_CORE_ALGNUM_HPP

#include "core/ball.hpp"
#include "core/multipoly.hpp"
#include "core/rootisolation.hpp"
#include "core/upoly.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cqe {

// A complex algebraic number: a square-free rational polynomial together with
// a complex ball certified to isolate exactly one of its roots.  The box is a
// refinable cache; the represented value never changes.
class AlgebraicNumber {
public:
  AlgebraicNumber() : AlgebraicNumber(Rat(0)) {}
  explicit AlgebraicNumber(const Rat& r);
  // Trusted constructor: ball must isolate exactly one root of the square-free
  // polynomial.  Used by the isolation pipeline which certifies this.
  AlgebraicNumber(UPoly squarefree_minpoly, ComplexBall isolating_box);

  const UPoly& minpoly() const { return minpoly_; }
  const ComplexBall& box() const { return box_; }

  bool is_rational() const { return minpoly_.degree() == 1; }
  Rat rational_value() const;  // requires is_rational()

  // Box with radius <= 2^-bits (refines the cached box).
  const ComplexBall& refined(long bits) const;

  std::string to_string() const;

private:
  UPoly minpoly_;
  mutable ComplexBall box_;
};

bool alg_equal(const AlgebraicNumber& a, const AlgebraicNumber& b);
bool alg_is_zero(const AlgebraicNumber& a);

AlgebraicNumber alg_add(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber alg_neg(const AlgebraicNumber& a);
AlgebraicNumber alg_sub(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber alg_add_rat(const AlgebraicNumber& a, const Rat& r);
AlgebraicNumber alg_scale(const AlgebraicNumber& a, const Rat& c);

// Deterministic total order by midpoint (re, im) at escalating precision;
// the two values must be distinct unless actually equal (equal compares false).
bool alg_midpoint_less(const AlgebraicNumber& a, const AlgebraicNumber& b);

// Is h(alpha) = 0?  Entirely via gcd and a factor-split refinement.
bool upoly_zero_at(const UPoly& h, const AlgebraicNumber& alpha);

// alpha is a root of the divisor g of its own minimal polynomial?
bool root_of_factor(const AlgebraicNumber& alpha, const UPoly& g);

// Exact zero test of a bivariate polynomial at an algebraic pair.
// var_u / var_v name the variables of g bound to alpha / beta.
bool bivariate_zero_at(const MultiPoly& g, const std::string& var_u, const AlgebraicNumber& alpha,
                       const std::string& var_v, const AlgebraicNumber& beta);

// Solutions in var_v of g(alpha, v) = 0.  AllSolutions means the
// specialization vanishes identically.
struct AllSolutions {};
using SolveResult = std::variant<AllSolutions, std::vector<AlgebraicNumber>>;
SolveResult solve_bivariate_at(const MultiPoly& g, const std::string& var_u,
                               const AlgebraicNumber& alpha, const std::string& var_v,
                               long prec = 128);

// Annihilator of {x + y : mpx(x) = 0, mpy(y) = 0}, square-free.
UPoly sum_annihilator(const UPoly& mpx, const UPoly& mpy);

// Certified distance lower bound between two (distinct) values; refines boxes
// until positive.  Returns exact zero when the values are equal.
Dyadic alg_separation_lower(const AlgebraicNumber& a, const AlgebraicNumber& b);

}  // namespace cqe

#endif
