#include "core/algnum.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cqe {

namespace {

constexpr long kStartBits = 64;

long doubled(long bits) {
  long nb = bits * 2;
  if (nb > kPrecisionCapBits)
    throw PrecisionExceeded("algebraic-number refinement exceeded the precision cap");
  return nb;
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(const Rat& r)
    : minpoly_({-r, Rat(1)}), box_(ComplexBall::from_rational(r, Rat(0), 128)) {}

AlgebraicNumber::AlgebraicNumber(UPoly squarefree_minpoly, ComplexBall isolating_box)
    : minpoly_(std::move(squarefree_minpoly)), box_(std::move(isolating_box)) {}

Rat AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw std::domain_error("not a rational value");
  return -minpoly_.coeff(0) / minpoly_.coeff(1);
}

const ComplexBall& AlgebraicNumber::refined(long bits) const {
  if (box_.radius() > Dyadic::pow2(-bits)) {
    if (is_rational()) {
      box_ = ComplexBall::from_rational(rational_value(), Rat(0), bits + 16);
    } else {
      box_ = refine_root_ball(minpoly_, box_, bits);
    }
  }
  return box_;
}

std::string AlgebraicNumber::to_string() const {
  if (is_rational()) return rational_to_string(rational_value());
  std::ostringstream os;
  os << "root of " << minpoly_.to_string() << " near " << box_.to_string();
  return os.str();
}

bool root_of_factor(const AlgebraicNumber& alpha, const UPoly& g) {
  if (g.degree() <= 0) return false;
  UPoly h = alpha.minpoly().divide_exact(g);
  if (h.degree() <= 0) return true;  // g is the whole minimal polynomial
  long bits = kStartBits;
  while (true) {
    const ComplexBall& b = alpha.refined(bits);
    ComplexBall gv = g.eval_ball(b, bits + 32);
    if (!gv.contains_zero()) return false;
    ComplexBall hv = h.eval_ball(b, bits + 32);
    if (!hv.contains_zero()) return true;  // not a root of h, so a root of g
    bits = doubled(bits);
  }
}

bool upoly_zero_at(const UPoly& h, const AlgebraicNumber& alpha) {
  if (h.is_zero()) return true;
  if (alpha.is_rational()) return h.eval(alpha.rational_value()) == 0;
  UPoly g = gcd(h, alpha.minpoly());
  if (g.degree() <= 0) return false;
  return root_of_factor(alpha, g);
}

bool alg_equal(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational()) return a.rational_value() == b.rational_value();
  if (balls_disjoint(a.box(), b.box())) return false;
  UPoly g = gcd(a.minpoly(), b.minpoly());
  if (g.degree() <= 0) return false;
  if (!root_of_factor(a, g) || !root_of_factor(b, g)) return false;
  // Both are roots of g: same root iff the boxes settle on the same one.
  long bits = kStartBits;
  while (true) {
    auto roots = isolate_roots(g, bits);
    const ComplexBall& ba = a.refined(bits);
    const ComplexBall& bb = b.refined(bits);
    int ia = -1, ib = -1;
    int hits_a = 0, hits_b = 0;
    for (size_t k = 0; k < roots.size(); ++k) {
      if (balls_overlap(roots[k], ba)) {
        ++hits_a;
        ia = static_cast<int>(k);
      }
      if (balls_overlap(roots[k], bb)) {
        ++hits_b;
        ib = static_cast<int>(k);
      }
    }
    if (hits_a == 1 && hits_b == 1) return ia == ib;
    bits = doubled(bits);
  }
}

bool alg_is_zero(const AlgebraicNumber& a) {
  // The stored polynomial is square-free but not necessarily minimal, so a
  // degree > 1 representation can still hold a rational value.
  if (a.is_rational()) return a.rational_value() == 0;
  if (a.minpoly().eval(Rat(0)) != 0) return false;
  if (!a.box().contains_zero()) return false;
  return alg_equal(a, AlgebraicNumber(Rat(0)));
}

AlgebraicNumber alg_neg(const AlgebraicNumber& a) {
  if (a.is_rational()) return AlgebraicNumber(-a.rational_value());
  UPoly mp = negate_arg(a.minpoly()).monic();
  return AlgebraicNumber(mp, -a.box());
}

AlgebraicNumber alg_add_rat(const AlgebraicNumber& a, const Rat& r) {
  if (a.is_rational()) return AlgebraicNumber(a.rational_value() + r);
  if (r == 0) return a;
  UPoly mp = shift_arg(a.minpoly(), -r).monic();
  ComplexBall shift = ComplexBall::from_rational(r, Rat(0), 256);
  return AlgebraicNumber(mp, a.box() + shift);
}

AlgebraicNumber alg_scale(const AlgebraicNumber& a, const Rat& c) {
  if (c == 0) return AlgebraicNumber(Rat(0));
  if (a.is_rational()) return AlgebraicNumber(a.rational_value() * c);
  UPoly mp = scale_arg(a.minpoly(), Rat(1) / c).monic();
  return AlgebraicNumber(mp, a.box().scale(c, 256));
}

UPoly sum_annihilator(const UPoly& mpx, const UPoly& mpy) {
  MultiPoly A = MultiPoly::from_upoly(mpx, "_z");
  MultiPoly wz = MultiPoly::var("_w") - MultiPoly::var("_z");
  MultiPoly B;
  {
    MultiPoly acc;
    for (int k = mpy.degree(); k >= 0; --k)
      acc = acc * wz + MultiPoly::constant(mpy.coeff(k));
    B = acc;
  }
  MultiPoly R = resultant(A, B, "_z");
  return squarefree_part(R.to_upoly("_w"));
}

namespace {

// Pick the unique isolated root ball that can hold the value enclosed by
// `approx` (a refinable enclosure), refining both sides until unambiguous.
AlgebraicNumber match_root(const UPoly& sf,
                           const std::function<ComplexBall(long)>& approx_at, long start_bits) {
  long bits = start_bits;
  while (true) {
    auto roots = isolate_roots(sf, bits);
    ComplexBall a = approx_at(bits);
    int hit = -1, count = 0;
    for (size_t k = 0; k < roots.size(); ++k) {
      if (balls_overlap(roots[k], a)) {
        ++count;
        hit = static_cast<int>(k);
      }
    }
    if (count == 1) return AlgebraicNumber(sf, roots[static_cast<size_t>(hit)]);
    bits = doubled(bits);
  }
}

}  // namespace

AlgebraicNumber alg_add(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational()) return alg_add_rat(b, a.rational_value());
  if (b.is_rational()) return alg_add_rat(a, b.rational_value());
  UPoly h = sum_annihilator(a.minpoly(), b.minpoly());
  return match_root(
      h, [&](long bits) { return a.refined(bits) + b.refined(bits); }, kStartBits);
}

AlgebraicNumber alg_sub(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  return alg_add(a, alg_neg(b));
}

bool alg_midpoint_less(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  long bits = kStartBits;
  while (!balls_disjoint(a.refined(bits), b.refined(bits))) {
    if (alg_equal(a, b)) return false;
    bits = doubled(bits);
  }
  const ComplexBall& ba = a.refined(bits);
  const ComplexBall& bb = b.refined(bits);
  int cr = ba.real().cmp(bb.real());
  if (cr != 0) return cr < 0;
  return ba.imag().cmp(bb.imag()) < 0;
}

Dyadic alg_separation_lower(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (alg_equal(a, b)) return Dyadic();
  long bits = kStartBits;
  while (true) {
    Dyadic sep = balls_separation_lower(a.refined(bits), b.refined(bits));
    if (sep.sign() > 0) return sep;
    bits = doubled(bits);
  }
}

bool bivariate_zero_at(const MultiPoly& g, const std::string& var_u, const AlgebraicNumber& alpha,
                       const std::string& var_v, const AlgebraicNumber& beta) {
  if (g.is_zero()) return true;
  if (alpha.is_rational()) {
    MultiPoly s = g.substitute(var_u, alpha.rational_value());
    if (s.is_zero()) return true;
    if (s.is_constant()) return s.constant_value() == 0;
    return upoly_zero_at(s.to_upoly(var_v), beta);
  }
  if (beta.is_rational()) {
    MultiPoly s = g.substitute(var_v, beta.rational_value());
    if (s.is_zero()) return true;
    if (s.is_constant()) return s.constant_value() == 0;
    return upoly_zero_at(s.to_upoly(var_u), alpha);
  }
  // Ball prescreen at escalating precision.
  for (long bits : {kStartBits, 256L, 512L}) {
    std::map<std::string, ComplexBall> pt{{var_u, alpha.refined(bits)}, {var_v, beta.refined(bits)}};
    ComplexBall v = g.eval_ball(pt, bits + 32);
    if (!v.contains_zero()) return false;
  }
  // Exact: annihilator of the value g(alpha, beta).
  MultiPoly inner = MultiPoly::var("_w") - g;
  MultiPoly mpu = MultiPoly::from_upoly(alpha.minpoly(), var_u);
  MultiPoly a1 = inner.degree(var_u) >= 1 ? resultant(mpu, inner, var_u)
                                          : inner.pow(static_cast<unsigned>(alpha.minpoly().degree()));
  MultiPoly mpv = MultiPoly::from_upoly(beta.minpoly(), var_v);
  MultiPoly r = a1.degree(var_v) >= 1 ? resultant(mpv, a1, var_v)
                                      : a1.pow(static_cast<unsigned>(beta.minpoly().degree()));
  UPoly R = squarefree_part(r.to_upoly("_w"));
  if (R.eval(Rat(0)) != 0) return false;
  long bits = 512;
  while (true) {
    auto roots = isolate_roots(R, bits);
    std::map<std::string, ComplexBall> pt{{var_u, alpha.refined(bits)}, {var_v, beta.refined(bits)}};
    ComplexBall v = g.eval_ball(pt, bits + 32);
    int hit = -1, count = 0;
    for (size_t k = 0; k < roots.size(); ++k)
      if (balls_overlap(roots[k], v)) {
        ++count;
        hit = static_cast<int>(k);
      }
    if (count == 1) return !roots[static_cast<size_t>(hit)].contains_zero() ? false : true;
    bits = doubled(bits);
  }
}

SolveResult solve_bivariate_at(const MultiPoly& g, const std::string& var_u,
                               const AlgebraicNumber& alpha, const std::string& var_v,
                               long prec) {
  if (g.is_zero()) return AllSolutions{};
  if (alpha.is_rational()) {
    MultiPoly s = g.substitute(var_u, alpha.rational_value());
    if (s.is_zero()) return AllSolutions{};
    if (s.is_constant()) return std::vector<AlgebraicNumber>{};
    UPoly u = squarefree_part(s.to_upoly(var_v));
    std::vector<AlgebraicNumber> out;
    for (const auto& ball : isolate_roots(u, prec)) out.emplace_back(u, ball);
    return out;
  }
  if (g.degree(var_v) <= 0) {
    // No v at all: either identically satisfied or empty.
    MultiPoly s = g;
    if (s.degree(var_u) <= 0)
      return s.is_zero() ? SolveResult(AllSolutions{}) : SolveResult(std::vector<AlgebraicNumber>{});
    return upoly_zero_at(s.to_upoly(var_u), alpha)
               ? SolveResult(AllSolutions{})
               : SolveResult(std::vector<AlgebraicNumber>{});
  }
  // Does the whole specialization vanish?
  MultiPoly content = content_in(g, var_v);
  UPoly mp = alpha.minpoly();
  if (!content.is_constant()) {
    UPoly c = content.to_upoly(var_u);
    UPoly shared = gcd(c, mp);
    if (shared.degree() >= 1 && root_of_factor(alpha, shared)) return AllSolutions{};
    if (shared.degree() >= 1) mp = mp.divide_exact(shared).monic();
  }
  // Rational annihilator of every possible fiber value.
  MultiPoly mpu = MultiPoly::from_upoly(mp, var_u);
  MultiPoly r = resultant(mpu, g, var_u);
  UPoly h = squarefree_part(r.to_upoly(var_v));
  if (h.degree() < 1) return std::vector<AlgebraicNumber>{};

  // Exact degree of the specialization: drop leading coefficients vanishing
  // at alpha.
  auto coeffs = g.coeffs_in(var_v);
  int d_spec = -1;
  std::vector<char> coeff_zero(coeffs.size(), 0);
  for (size_t k = coeffs.size(); k-- > 0;) {
    bool z;
    if (coeffs[k].is_zero()) {
      z = true;
    } else if (coeffs[k].is_constant()) {
      z = false;
    } else {
      z = upoly_zero_at(coeffs[k].to_upoly(var_u), alpha);
    }
    coeff_zero[k] = z ? 1 : 0;
    if (!z && d_spec < 0) d_spec = static_cast<int>(k);
  }
  if (d_spec <= 0) return std::vector<AlgebraicNumber>{};

  // Certified path: isolate the specialized polynomial with ball coefficients,
  // then pin each certified fiber disk to the annihilator root it contains.
  for (long bits = std::max<long>(prec, kStartBits); bits <= kPrecisionCapBits; bits *= 2) {
    std::vector<ComplexBall> cb(static_cast<size_t>(d_spec) + 1);
    for (int k = 0; k <= d_spec; ++k) {
      if (coeff_zero[static_cast<size_t>(k)]) {
        cb[static_cast<size_t>(k)] = ComplexBall();
        continue;
      }
      const MultiPoly& c = coeffs[static_cast<size_t>(k)];
      if (c.is_constant()) {
        cb[static_cast<size_t>(k)] = ComplexBall::from_rational(c.constant_value(), Rat(0), bits);
      } else {
        std::map<std::string, ComplexBall> pt{{var_u, alpha.refined(bits)}};
        cb[static_cast<size_t>(k)] = c.eval_ball(pt, bits + 32);
      }
    }
    // The exact leading coefficient is nonzero, but the enclosure may still be
    // too coarse to show it.
    if (cb.back().contains_zero()) continue;
    auto disks = isolate_roots_ball_coeffs(cb, std::min(bits, prec));
    if (disks.empty()) continue;  // e.g. the specialization has a multiple root
    auto hroots = isolate_roots(h, bits);
    std::vector<AlgebraicNumber> out;
    bool all_unique = true;
    for (const auto& d : disks) {
      int hit = -1, count = 0;
      for (size_t k = 0; k < hroots.size(); ++k)
        if (balls_overlap(hroots[k], d)) {
          ++count;
          hit = static_cast<int>(k);
        }
      if (count != 1) {
        all_unique = false;
        break;
      }
      out.emplace_back(h, hroots[static_cast<size_t>(hit)]);
    }
    if (all_unique) return out;
  }

  // Fallback: filter the annihilator's roots pointwise (handles multiple
  // roots in the specialization).
  std::vector<AlgebraicNumber> out;
  for (const auto& ball : isolate_roots(h, prec)) {
    AlgebraicNumber cand(h, ball);
    if (bivariate_zero_at(g, var_u, alpha, var_v, cand)) out.push_back(cand);
  }
  return out;
}

}  // namespace cqe
