#ifndef CQE_CORE_DYADIC_HPP
#define CQE_CORE_DYADIC_HPP

#include "core/rational.hpp"

#include <string>

namespace cqe {

// Binary float man * 2^exp with arbitrary-precision mantissa.  All sums and
// products are exact; precision only drops at explicit round_* calls, which
// keeps enclosure bookkeeping in one place.
class Dyadic {
public:
  Dyadic() : man_(0), exp_(0) {}
  Dyadic(long v) : man_(v), exp_(0) { normalize(); }
  Dyadic(Int man, long exp) : man_(std::move(man)), exp_(exp) { normalize(); }

  static Dyadic pow2(long k) { return Dyadic(Int(1), k); }

  const Int& mantissa() const { return man_; }
  long exponent() const { return exp_; }
  bool is_zero() const { return man_ == 0; }
  int sign() const { return man_.sign(); }

  Dyadic operator-() const { return Dyadic(-man_, exp_); }
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
  Dyadic operator*(const Dyadic& o) const { return Dyadic(man_ * o.man_, exp_ + o.exp_); }

  bool operator==(const Dyadic& o) const { return man_ == o.man_ && exp_ == o.exp_; }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }
  bool operator<(const Dyadic& o) const { return cmp(o) < 0; }
  bool operator<=(const Dyadic& o) const { return cmp(o) <= 0; }
  bool operator>(const Dyadic& o) const { return cmp(o) > 0; }
  bool operator>=(const Dyadic& o) const { return cmp(o) >= 0; }
  int cmp(const Dyadic& o) const;

  Dyadic abs() const { return Dyadic(boost::multiprecision::abs(man_), exp_); }

  // Bits in the mantissa.
  long precision() const { return bit_length(man_); }
  // floor(log2 |x|) for x != 0.
  long magnitude_exponent() const { return bit_length(man_) - 1 + exp_; }

  // Round to at most prec mantissa bits, toward zero / away from zero.
  // The true value lies between round_down and round_up results.
  Dyadic round_down(long prec) const;  // toward zero
  Dyadic round_up(long prec) const;    // away from zero

  Rat to_rational() const;
  static Dyadic from_rational_down(const Rat& q, long prec);  // <= q if q>=0 pattern: toward zero
  static Dyadic from_rational_up(const Rat& q, long prec);    // away from zero
  // Nearest-ish (truncation) value plus a bound on |q - result|.
  static Dyadic from_rational(const Rat& q, long prec, Dyadic* err = nullptr);

  double to_double() const;
  std::string to_string() const;  // exact rational rendering

private:
  void normalize();
  Int man_;
  long exp_;
};

// Upper bound on sqrt(x), x >= 0; result has ~prec mantissa bits.
Dyadic sqrt_upper(const Dyadic& x, long prec);
// Lower bound on sqrt(x), x >= 0.
Dyadic sqrt_lower(const Dyadic& x, long prec);

}  // namespace cqe

#endif
