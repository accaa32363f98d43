#ifndef CQE_CORE_MULTIPOLY_HPP
#define CQE_CORE_MULTIPOLY_HPP

#include "core/ball.hpp"
#include "core/rational.hpp"
#include "core/upoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace cqe {

// Sparse multivariate polynomial over Q.  Variables are named; the stored
// variable list is sorted and exponent vectors align with it.  No zero
// coefficients are stored.
class MultiPoly {
public:
  using Exps = std::vector<unsigned>;

  MultiPoly() = default;
  static MultiPoly constant(const Rat& c);
  static MultiPoly var(const std::string& name);
  static MultiPoly from_upoly(const UPoly& p, const std::string& var);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // requires is_constant()

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exps, Rat>& terms() const { return terms_; }
  bool uses_var(const std::string& v) const;
  int degree(const std::string& v) const;  // -1 for the zero polynomial
  int total_degree() const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rat& c) const;
  MultiPoly pow(unsigned k) const;
  bool operator==(const MultiPoly& o) const;

  // Coefficients of v^0..v^deg as polynomials in the remaining variables.
  std::vector<MultiPoly> coeffs_in(const std::string& v) const;
  static MultiPoly from_coeffs_in(const std::string& v, const std::vector<MultiPoly>& cs);
  MultiPoly leading_coeff(const std::string& v) const;
  MultiPoly derivative(const std::string& v) const;

  MultiPoly substitute(const std::string& v, const Rat& value) const;
  MultiPoly substitute(const std::string& v, const MultiPoly& value) const;
  MultiPoly rename_var(const std::string& from, const std::string& to) const;

  Rat eval(const std::map<std::string, Rat>& point) const;
  ComplexBall eval_ball(const std::map<std::string, ComplexBall>& point, long prec) const;

  // Requires all terms to involve only v (or be constant).
  UPoly to_upoly(const std::string& v) const;

  std::string to_string() const;
  // Parses the sparse text form "c1*a^i*t^j + ...".
  static MultiPoly parse(const std::string& text);

private:
  void prune();
  static void align(const MultiPoly& a, const MultiPoly& b, MultiPoly& oa, MultiPoly& ob);
  MultiPoly with_vars(const std::vector<std::string>& vs) const;

  std::vector<std::string> vars_;  // sorted, unique
  std::map<Exps, Rat> terms_;
};

// Standard resultant eliminating v, by fraction-free subresultant PRS.
// Convention: Res(a, c) = c^deg(a) when deg_v(c) = 0; Res with a zero input is 0.
MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& v);

// (-1)^{n(n-1)/2} Res(p, p')/lc(p) with n = deg_v(p); requires n >= 2.
MultiPoly discriminant(const MultiPoly& p, const std::string& v);

// Multivariate gcd (normalized so the lex-leading coefficient is 1).
MultiPoly gcd_multi(const MultiPoly& a, const MultiPoly& b);

// gcd of the coefficients of p viewed as a polynomial in v.
MultiPoly content_in(const MultiPoly& p, const std::string& v);

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);

// p with repeated factors in v collapsed: p / gcd(p, dp/dv), normalized.
MultiPoly squarefree_in(const MultiPoly& p, const std::string& v);

MultiPoly pseudo_rem(const MultiPoly& a, const MultiPoly& b, const std::string& v);

}  // namespace cqe

#endif
