#ifndef CQE_CORE_BALL_HPP
#define CQE_CORE_BALL_HPP

#include "core/dyadic.hpp"

#include <string>
#include <utility>

namespace cqe {

// Complex midpoint-radius interval.  Every operation returns an enclosure of
// the exact image set; midpoints are dyadic, rounding slack always goes into
// the radius.
class ComplexBall {
public:
  ComplexBall() = default;
  ComplexBall(Dyadic re, Dyadic im, Dyadic rad)
      : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad)) {}

  static ComplexBall exact(const Dyadic& re, const Dyadic& im) {
    return ComplexBall(re, im, Dyadic());
  }
  static ComplexBall from_rational(const Rat& re, const Rat& im, long prec);

  const Dyadic& real() const { return re_; }
  const Dyadic& imag() const { return im_; }
  const Dyadic& radius() const { return rad_; }
  bool is_exact() const { return rad_.is_zero(); }

  ComplexBall operator-() const { return ComplexBall(-re_, -im_, rad_); }
  ComplexBall operator+(const ComplexBall& o) const {
    return ComplexBall(re_ + o.re_, im_ + o.im_, rad_ + o.rad_);
  }
  ComplexBall operator-(const ComplexBall& o) const { return *this + (-o); }
  ComplexBall operator*(const ComplexBall& o) const;

  ComplexBall scale(const Rat& c, long prec) const;

  // Multiplicative inverse; requires the ball to exclude zero.
  ComplexBall inverse(long prec) const;
  ComplexBall operator/(const ComplexBall& o) const;  // uses o's stored prec hint? no: caller rounds

  // Round midpoint/radius to about prec bits, folding rounding into radius.
  ComplexBall rounded(long prec) const;

  // Enlarge the radius (e.g. by an evaluation error term).
  ComplexBall inflated(const Dyadic& extra) const {
    return ComplexBall(re_, im_, rad_ + extra);
  }

  // Certified bounds on |midpoint| and on |z| over the ball.
  Dyadic mid_abs_upper(long prec) const;
  Dyadic mid_abs_lower(long prec) const;
  Dyadic abs_upper(long prec) const { return (mid_abs_upper(prec) + rad_).round_up(prec); }
  // max(|z|_min, 0) over the ball.
  Dyadic abs_lower(long prec) const;

  bool contains_zero(long prec = 64) const { return !(mid_abs_lower(prec) > rad_); }

  std::string to_string() const;

private:
  Dyadic re_, im_, rad_;
};

// |b1 - b2| certified positive: the balls share no point.
bool balls_disjoint(const ComplexBall& a, const ComplexBall& b, long prec = 64);
// Certified lower bound on the distance between any points of the two balls
// (zero when not certified positive).
Dyadic balls_separation_lower(const ComplexBall& a, const ComplexBall& b, long prec = 64);
// Every point of inner lies strictly inside outer.
bool ball_strictly_inside(const ComplexBall& inner, const ComplexBall& outer, long prec = 64);
// The two balls share at least the candidate region (midpoint distance <= r1 + r2).
bool balls_overlap(const ComplexBall& a, const ComplexBall& b, long prec = 64);

}  // namespace cqe

#endif
