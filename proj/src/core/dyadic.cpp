#include "core/dyadic.hpp"

#include <cmath>

namespace cqe {

void Dyadic::normalize() {
  if (man_ == 0) {
    exp_ = 0;
    return;
  }
  unsigned long tz = boost::multiprecision::lsb(Int(boost::multiprecision::abs(man_)));
  if (tz > 0) {
    man_ >>= tz;
    exp_ += static_cast<long>(tz);
  }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  if (man_ == 0) return o;
  if (o.man_ == 0) return *this;
  if (exp_ == o.exp_) return Dyadic(man_ + o.man_, exp_);
  if (exp_ > o.exp_) {
    Int shifted = man_ << static_cast<unsigned long>(exp_ - o.exp_);
    return Dyadic(shifted + o.man_, o.exp_);
  }
  Int shifted = o.man_ << static_cast<unsigned long>(o.exp_ - exp_);
  return Dyadic(man_ + shifted, exp_);
}

int Dyadic::cmp(const Dyadic& o) const {
  int s1 = sign(), s2 = o.sign();
  if (s1 != s2) return s1 < s2 ? -1 : 1;
  if (s1 == 0) return 0;
  Dyadic d = *this - o;
  return d.sign();
}

Dyadic Dyadic::round_down(long prec) const {
  long p = precision();
  if (p <= prec) return *this;
  unsigned long drop = static_cast<unsigned long>(p - prec);
  Int m = man_ >= 0 ? Int(man_ >> drop) : Int(-(Int(-man_) >> drop));
  return Dyadic(m, exp_ + static_cast<long>(drop));
}

Dyadic Dyadic::round_up(long prec) const {
  long p = precision();
  if (p <= prec) return *this;
  unsigned long drop = static_cast<unsigned long>(p - prec);
  Int a = boost::multiprecision::abs(man_);
  Int m = (a >> drop) + 1;
  if (man_ < 0) m = -m;
  return Dyadic(m, exp_ + static_cast<long>(drop));
}

Rat Dyadic::to_rational() const {
  if (man_ == 0) return Rat(0);
  if (exp_ >= 0) return Rat(man_ << static_cast<unsigned long>(exp_));
  return Rat(man_, Int(1) << static_cast<unsigned long>(-exp_));
}

Dyadic Dyadic::from_rational(const Rat& q, long prec, Dyadic* err) {
  if (q == 0) {
    if (err) *err = Dyadic();
    return Dyadic();
  }
  Int n = rat_num(q), d = rat_den(q);
  // Scale so the quotient carries prec+1 significant bits.
  long shift = prec + 1 - (bit_length(n) - bit_length(d));
  Int scaled_n = shift >= 0 ? (n << static_cast<unsigned long>(shift)) : n;
  Int scaled_d = shift >= 0 ? d : (d << static_cast<unsigned long>(-shift));
  Int quot = scaled_n / scaled_d;  // truncated toward zero
  Dyadic result(quot, -shift);
  if (err) {
    // |q - result| <= 2^-shift (one ulp of the truncated quotient).
    *err = Dyadic(Int(1), -shift);
  }
  return result;
}

Dyadic Dyadic::from_rational_down(const Rat& q, long prec) {
  return from_rational(q, prec, nullptr);
}

Dyadic Dyadic::from_rational_up(const Rat& q, long prec) {
  Dyadic err;
  Dyadic v = from_rational(q, prec, &err);
  return v.abs() + err;  // valid as magnitude bound helper for q >= 0 usage
}

double Dyadic::to_double() const {
  if (man_ == 0) return 0.0;
  Dyadic r = round_down(52);
  double m = r.mantissa().convert_to<double>();
  return std::ldexp(m, static_cast<int>(r.exponent()));
}

std::string Dyadic::to_string() const { return rational_to_string(to_rational()); }

namespace {

// floor/ceil sqrt of man*2^exp with exp even, via integer sqrt.
Dyadic sqrt_bound(const Dyadic& x, long prec, bool upper) {
  if (x.is_zero()) return Dyadic();
  if (x.sign() < 0) throw std::invalid_argument("sqrt of negative dyadic");
  Int m = x.mantissa();
  long e = x.exponent();
  // Add working bits so the integer sqrt carries enough precision.
  long extra = 2 * prec + 2;
  if (extra % 2 != 0) ++extra;
  m <<= static_cast<unsigned long>(extra);
  e -= extra;
  if (e % 2 != 0) {
    m <<= 1;
    e -= 1;
  }
  Int r = sqrt(m);  // floor sqrt
  if (upper && r * r < m) r += 1;
  Dyadic out(r, e / 2);
  return upper ? out.round_up(prec) : out.round_down(prec);
}

}  // namespace

Dyadic sqrt_upper(const Dyadic& x, long prec) { return sqrt_bound(x, prec, true); }
Dyadic sqrt_lower(const Dyadic& x, long prec) { return sqrt_bound(x, prec, false); }

}  // namespace cqe
