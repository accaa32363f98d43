#include "core/rootisolation.hpp"

#include <algorithm>

namespace cqe {

namespace {

// Approximate complex number used only inside the simultaneous iteration;
// certification never trusts these values.
struct CApprox {
  Dyadic re, im;
};

CApprox capprox_round(const CApprox& z, long prec) {
  return {z.re.round_down(prec), z.im.round_down(prec)};
}

CApprox operator+(const CApprox& a, const CApprox& b) { return {a.re + b.re, a.im + b.im}; }
CApprox operator-(const CApprox& a, const CApprox& b) { return {a.re - b.re, a.im - b.im}; }
CApprox operator*(const CApprox& a, const CApprox& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CApprox cdiv(const CApprox& a, const CApprox& b, long prec) {
  Rat br = b.re.to_rational(), bi = b.im.to_rational();
  Rat n = br * br + bi * bi;
  if (n == 0) throw std::domain_error("division by zero in root iteration");
  Rat ar = a.re.to_rational(), ai = a.im.to_rational();
  Rat qr = (ar * br + ai * bi) / n;
  Rat qi = (ai * br - ar * bi) / n;
  return {Dyadic::from_rational(qr, prec), Dyadic::from_rational(qi, prec)};
}

Dyadic cmag2(const CApprox& a) { return a.re * a.re + a.im * a.im; }

CApprox eval_approx(const std::vector<CApprox>& coeffs, const CApprox& z, long prec) {
  CApprox acc{Dyadic(), Dyadic()};
  for (size_t i = coeffs.size(); i-- > 0;) {
    acc = capprox_round(acc * z + coeffs[i], prec);
  }
  return acc;
}

std::vector<CApprox> initial_points(size_t n, const Dyadic& scale, long prec) {
  // Powers of a fixed non-real direction, spread over two magnitudes.
  std::vector<CApprox> w(n);
  CApprox dir{Dyadic::from_rational(Rat(2, 5), prec), Dyadic::from_rational(Rat(9, 10), prec)};
  CApprox cur{scale, Dyadic::from_rational(Rat(1, 7), prec)};
  for (size_t k = 0; k < n; ++k) {
    cur = capprox_round(cur * dir, prec);
    w[k] = cur;
  }
  return w;
}

struct CertifiedDisks {
  bool ok = false;
  std::vector<ComplexBall> disks;
};

// Smith-style a posteriori bound: for the (monic-normalized) degree-n
// polynomial, all roots lie in the union of disks D(w_k, n|W_k|) where W_k is
// the Weierstrass correction; pairwise disjoint disks isolate one root each.
// Coefficient balls must contain the exact coefficients.
CertifiedDisks certify_disks(const std::vector<ComplexBall>& coeffs,
                             const std::vector<CApprox>& w, long prec, long target_bits) {
  size_t n = w.size();
  CertifiedDisks out;
  out.disks.reserve(n);
  const ComplexBall& lead = coeffs.back();
  for (size_t k = 0; k < n; ++k) {
    ComplexBall wk = ComplexBall::exact(w[k].re, w[k].im);
    ComplexBall val;
    for (size_t i = coeffs.size(); i-- > 0;) val = (val * wk + coeffs[i]).rounded(prec);
    ComplexBall denom = lead;
    for (size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      ComplexBall diff = ComplexBall::exact(w[k].re - w[j].re, w[k].im - w[j].im);
      denom = (denom * diff).rounded(prec);
    }
    if (denom.contains_zero(prec)) return out;
    ComplexBall corr = (val * denom.inverse(prec)).rounded(prec);
    Dyadic radius = (corr.abs_upper(64) * Dyadic(static_cast<long>(n))).round_up(32);
    out.disks.emplace_back(w[k].re, w[k].im, radius);
  }
  Dyadic limit = Dyadic::pow2(-target_bits);
  for (size_t k = 0; k < n; ++k)
    if (out.disks[k].radius() > limit) return out;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (!balls_disjoint(out.disks[i], out.disks[j], 64)) return out;
  out.ok = true;
  return out;
}

std::vector<ComplexBall> run_isolation(const std::vector<ComplexBall>& coeff_balls,
                                       const Dyadic& root_bound, long precision_bits,
                                       bool throw_on_cap) {
  size_t n = coeff_balls.size() - 1;
  long guard = 0;
  size_t m = n;
  while (m > 0) {
    ++guard;
    m >>= 1;
  }
  long target = precision_bits;
  long wp = std::max<long>(64, target + 8 * guard + 32);
  std::vector<CApprox> w;
  while (wp <= kPrecisionCapBits * 2) {
    std::vector<CApprox> coeffs(coeff_balls.size());
    for (size_t i = 0; i < coeffs.size(); ++i)
      coeffs[i] = {coeff_balls[i].real().round_down(wp), coeff_balls[i].imag().round_down(wp)};
    if (w.empty())
      w = initial_points(n, root_bound, wp);
    Dyadic eps = Dyadic::pow2(-(target + 2 * guard + 8));
    Dyadic eps2 = eps * eps;
    long max_sweeps = 96 + 16 * static_cast<long>(n);
    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
      Dyadic worst;
      for (size_t k = 0; k < n; ++k) {
        CApprox num = eval_approx(coeffs, w[k], wp);
        CApprox den = coeffs.back();
        for (size_t j = 0; j < n; ++j) {
          if (j == k) continue;
          den = capprox_round(den * (w[k] - w[j]), wp);
        }
        if (cmag2(den).is_zero()) {
          // Coincident iterates: nudge deterministically.
          w[k].re = w[k].re + Dyadic::pow2(-(sweep + 3));
          continue;
        }
        CApprox corr = cdiv(num, den, wp);
        w[k] = capprox_round(w[k] - corr, wp);
        Dyadic c2 = cmag2(corr);
        if (c2 > worst) worst = c2;
      }
      if (!(worst > eps2)) break;
    }
    CertifiedDisks cert = certify_disks(coeff_balls, w, wp, target);
    if (cert.ok) {
      std::sort(cert.disks.begin(), cert.disks.end(),
                [](const ComplexBall& a, const ComplexBall& b) {
                  int c = a.real().cmp(b.real());
                  if (c != 0) return c < 0;
                  return a.imag().cmp(b.imag()) < 0;
                });
      return cert.disks;
    }
    wp *= 2;
  }
  if (throw_on_cap)
    throw PrecisionExceeded("root isolation exceeded the precision cap");
  return {};
}

}  // namespace

std::vector<ComplexBall> isolate_roots(const UPoly& p, long precision_bits) {
  if (p.is_zero()) throw std::domain_error("isolate_roots of the zero polynomial");
  if (precision_bits > kPrecisionCapBits)
    throw PrecisionExceeded("requested precision above the cap");
  UPoly q = squarefree_part(p);
  int n = q.degree();
  if (n <= 0) return {};
  if (n == 1) {
    Rat root = -q.coeff(0) / q.coeff(1);
    return {ComplexBall::from_rational(root, Rat(0), precision_bits + 16)};
  }
  std::vector<ComplexBall> coeff_balls(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    coeff_balls[static_cast<size_t>(k)] = ComplexBall::from_rational(q.coeff(k), Rat(0), 2 * kPrecisionCapBits);
  Dyadic bound = Dyadic::from_rational_up(cauchy_root_bound(q), 32);
  return run_isolation(coeff_balls, bound, precision_bits, true);
}

ComplexBall refine_root_ball(const UPoly& p, const ComplexBall& ball, long target_bits) {
  if (target_bits > kPrecisionCapBits)
    throw PrecisionExceeded("requested precision above the cap");
  Dyadic limit = Dyadic::pow2(-target_bits);
  ComplexBall b = ball;
  UPoly dp = p.derivative();
  long wp = std::max<long>(128, 2 * target_bits + 32);
  int stall = 0;
  while (b.radius() > limit) {
    ComplexBall fpb = dp.eval_ball(b, wp);
    bool newton_ok = false;
    if (!fpb.contains_zero(64)) {
      Rat mre = b.real().to_rational(), mim = b.imag().to_rational();
      auto [vr, vi] = p.eval_complex(mre, mim);
      ComplexBall fm = ComplexBall::from_rational(vr, vi, wp);
      ComplexBall mid = ComplexBall::exact(b.real(), b.imag());
      ComplexBall next = (mid - fm * fpb.inverse(wp)).rounded(wp);
      if (ball_strictly_inside(next, b, 64)) {
        b = next;
        newton_ok = true;
      }
    }
    if (!newton_ok) {
      if (++stall > 3) {
        // Re-isolate at full accuracy and pick the ball matching this root.
        auto fresh = isolate_roots(p, target_bits);
        std::vector<const ComplexBall*> hits;
        for (const auto& f : fresh)
          if (balls_overlap(f, ball, 64)) hits.push_back(&f);
        if (hits.size() == 1) return *hits.front();
        throw PrecisionExceeded("root refinement could not re-match an isolated root");
      }
      wp *= 2;
      if (wp > 4 * kPrecisionCapBits)
        throw PrecisionExceeded("root refinement exceeded the precision cap");
    }
  }
  return b;
}

std::vector<ComplexBall> isolate_roots_ball_coeffs(const std::vector<ComplexBall>& coeffs,
                                                   long precision_bits) {
  if (coeffs.size() < 2) return {};
  if (coeffs.back().contains_zero(64))
    throw std::domain_error("isolate_roots_ball_coeffs: leading coefficient may vanish");
  // Cauchy-style bound from coefficient magnitude bounds.
  Dyadic lead_lo = coeffs.back().abs_lower(64);
  Dyadic maxr;
  for (size_t k = 0; k + 1 < coeffs.size(); ++k) {
    Dyadic up = coeffs[k].abs_upper(64);
    if (up > maxr) maxr = up;
  }
  Rat bound_rat = maxr.to_rational() / lead_lo.to_rational() + 1;
  Dyadic bound = Dyadic::from_rational_up(bound_rat, 32);
  return run_isolation(coeffs, bound, precision_bits, false);
}

}  // namespace cqe
