#ifndef CQE_CORE_UPOLY_HPP
#define CQE_CORE_UPOLY_HPP

#include "core/ball.hpp"
#include "core/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace cqe {

// Dense univariate polynomial over Q.  coeffs[k] multiplies x^k; the leading
// coefficient is nonzero unless the polynomial is zero (empty vector).
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

  static UPoly constant(const Rat& c) { return UPoly({c}); }
  static UPoly x() { return UPoly({Rat(0), Rat(1)}); }
  // c * x^k
  static UPoly monomial(const Rat& c, int k);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Rat& coeff(int k) const;
  const Rat& leading() const { return c_.back(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  UPoly operator-() const;
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Rat& c) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  UPoly derivative() const;
  UPoly monic() const;

  Rat eval(const Rat& x) const;
  // Exact complex evaluation at a rational point re + i*im.
  std::pair<Rat, Rat> eval_complex(const Rat& re, const Rat& im) const;
  // Enclosure of p(z) for z in the ball; work at the given precision.
  ComplexBall eval_ball(const ComplexBall& z, long prec) const;

  // Quotient/remainder over Q; divisor must be nonzero.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  // Exact division; throws if the remainder is nonzero.
  UPoly divide_exact(const UPoly& b) const;

  std::string to_string(const std::string& var = "x") const;

private:
  void trim();
  std::vector<Rat> c_;
};

UPoly gcd(const UPoly& a, const UPoly& b);       // monic gcd, or zero if both zero
UPoly squarefree_part(const UPoly& p);           // monic p / gcd(p, p')
bool has_rational_root(const UPoly& p, Rat* root_out = nullptr);

// p(x + c) and p(c * x) — used for minimal-polynomial transforms.
UPoly shift_arg(const UPoly& p, const Rat& c);
UPoly scale_arg(const UPoly& p, const Rat& c);
// p(-x)
UPoly negate_arg(const UPoly& p);

// 1 + max |c_k / c_n|: every complex root has modulus below this.
Rat cauchy_root_bound(const UPoly& p);

}  // namespace cqe

#endif
