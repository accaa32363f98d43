#include "core/ball.hpp"

#include <sstream>

namespace cqe {

ComplexBall ComplexBall::from_rational(const Rat& re, const Rat& im, long prec) {
  Dyadic er, ei;
  Dyadic dre = Dyadic::from_rational(re, prec, &er);
  Dyadic dim = Dyadic::from_rational(im, prec, &ei);
  return ComplexBall(dre, dim, er + ei);
}

ComplexBall ComplexBall::operator*(const ComplexBall& o) const {
  // (m1 +- r1)(m2 +- r2): new radius |m1| r2 + |m2| r1 + r1 r2.
  Dyadic re = re_ * o.re_ - im_ * o.im_;
  Dyadic im = re_ * o.im_ + im_ * o.re_;
  long prec = 64;
  Dyadic a1 = mid_abs_upper(prec), a2 = o.mid_abs_upper(prec);
  Dyadic rad = a1 * o.rad_ + a2 * rad_ + rad_ * o.rad_;
  return ComplexBall(re, im, rad);
}

ComplexBall ComplexBall::scale(const Rat& c, long prec) const {
  Rat re = re_.to_rational() * c;
  Rat im = im_.to_rational() * c;
  Dyadic er, ei;
  Dyadic dre = Dyadic::from_rational(re, prec, &er);
  Dyadic dim = Dyadic::from_rational(im, prec, &ei);
  Rat ac = abs(c);
  Dyadic crad = Dyadic::from_rational_up(ac, 32);
  return ComplexBall(dre, dim, rad_ * crad + er + ei);
}

ComplexBall ComplexBall::inverse(long prec) const {
  Dyadic lower = mid_abs_lower(prec);
  if (!(lower > rad_)) throw std::domain_error("ball inverse: enclosure contains zero");
  // Exact rational inverse of the midpoint, then directed rounding.
  Rat re = re_.to_rational(), im = im_.to_rational();
  Rat n = re * re + im * im;
  Rat ire = re / n, iim = -im / n;
  Dyadic er, ei;
  Dyadic dre = Dyadic::from_rational(ire, prec, &er);
  Dyadic dim = Dyadic::from_rational(iim, prec, &ei);
  // |1/z - 1/m| <= r / (|m| (|m| - r)) for |z - m| <= r.
  Dyadic denom = lower * (lower - rad_);
  Rat err_bound = rad_.to_rational() / denom.to_rational();
  Dyadic err = Dyadic::from_rational_up(err_bound, 32);
  return ComplexBall(dre, dim, err + er + ei);
}

ComplexBall ComplexBall::operator/(const ComplexBall& o) const {
  return *this * o.inverse(128);
}

ComplexBall ComplexBall::rounded(long prec) const {
  Dyadic re = re_.round_down(prec);
  Dyadic im = im_.round_down(prec);
  Dyadic err_re = (re_ - re).abs();
  Dyadic err_im = (im_ - im).abs();
  Dyadic rad = (rad_ + err_re + err_im).round_up(32);
  return ComplexBall(re, im, rad);
}

Dyadic ComplexBall::mid_abs_upper(long prec) const {
  Dyadic s = re_ * re_ + im_ * im_;
  return sqrt_upper(s, prec);
}

Dyadic ComplexBall::mid_abs_lower(long prec) const {
  Dyadic s = re_ * re_ + im_ * im_;
  return sqrt_lower(s, prec);
}

Dyadic ComplexBall::abs_lower(long prec) const {
  Dyadic lo = mid_abs_lower(prec) - rad_;
  if (lo.sign() < 0) return Dyadic();
  return lo.round_down(prec);
}

std::string ComplexBall::to_string() const {
  std::ostringstream os;
  os << "(" << re_.to_double() << (im_.sign() < 0 ? " - " : " + ")
     << im_.abs().to_double() << "i) +/- " << rad_.to_double();
  return os.str();
}

bool balls_disjoint(const ComplexBall& a, const ComplexBall& b, long prec) {
  ComplexBall d = a - b;
  return d.mid_abs_lower(prec) > a.radius() + b.radius();
}

Dyadic balls_separation_lower(const ComplexBall& a, const ComplexBall& b, long prec) {
  ComplexBall d = a - b;
  Dyadic sep = d.mid_abs_lower(prec) - a.radius() - b.radius();
  if (sep.sign() <= 0) return Dyadic();
  return sep.round_down(prec);
}

bool ball_strictly_inside(const ComplexBall& inner, const ComplexBall& outer, long prec) {
  ComplexBall d = inner - outer;
  Dyadic reach = d.mid_abs_upper(prec) + inner.radius();
  return reach < outer.radius();
}

bool balls_overlap(const ComplexBall& a, const ComplexBall& b, long prec) {
  return !balls_disjoint(a, b, prec);
}

}  // namespace cqe
