#include "core/upoly.hpp"

#include <sstream>

namespace cqe {

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::monomial(const Rat& c, int k) {
  if (c == 0) return UPoly();
  std::vector<Rat> v(static_cast<size_t>(k) + 1, Rat(0));
  v.back() = c;
  return UPoly(std::move(v));
}

const Rat& UPoly::coeff(int k) const {
  static const Rat zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<size_t>(k)];
}

UPoly UPoly::operator-() const {
  std::vector<Rat> v(c_);
  for (auto& x : v) x = -x;
  return UPoly(std::move(v));
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return UPoly(std::move(v));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return UPoly(std::move(v));
}

UPoly UPoly::operator*(const Rat& c) const {
  if (c == 0) return UPoly();
  std::vector<Rat> v(c_);
  for (auto& x : v) x *= c;
  return UPoly(std::move(v));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rat> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return UPoly(std::move(v));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rat(1) / leading());
}

Rat UPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::pair<Rat, Rat> UPoly::eval_complex(const Rat& re, const Rat& im) const {
  Rat ar(0), ai(0);
  for (size_t i = c_.size(); i-- > 0;) {
    Rat nr = ar * re - ai * im + c_[i];
    Rat ni = ar * im + ai * re;
    ar = nr;
    ai = ni;
  }
  return {ar, ai};
}

ComplexBall UPoly::eval_ball(const ComplexBall& z, long prec) const {
  ComplexBall acc;  // zero
  for (size_t i = c_.size(); i-- > 0;) {
    acc = (acc * z + ComplexBall::from_rational(c_[i], Rat(0), prec)).rounded(prec);
  }
  return acc;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("UPoly division by zero");
  UPoly r = a;
  std::vector<Rat> q(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0, Rat(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    Rat f = r.leading() / b.leading();
    q[static_cast<size_t>(k)] = f;
    r = r - UPoly::monomial(f, k) * b;
  }
  return {UPoly(std::move(q)), r};
}

UPoly UPoly::divide_exact(const UPoly& b) const {
  auto [q, r] = divmod(*this, b);
  if (!r.is_zero()) throw std::domain_error("UPoly divide_exact: nonzero remainder");
  return q;
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rat c = c_[i];
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    bool unit = (c == 1 && i > 0);
    if (!unit) os << rational_to_string(c);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = UPoly::divmod(x, y).second;
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

UPoly squarefree_part(const UPoly& p) {
  if (p.is_zero()) return p;
  if (p.degree() == 0) return UPoly::constant(Rat(1));
  UPoly g = gcd(p, p.derivative());
  return p.divide_exact(g).monic();
}

bool has_rational_root(const UPoly& p, Rat* root_out) {
  if (p.is_zero()) throw std::domain_error("rational roots of zero polynomial");
  // Clear denominators, then test p/q with p | a0 and q | an (content removed).
  Int lcm_den(1);
  for (const Rat& c : p.coeffs()) lcm_den = lcm(lcm_den, rat_den(c));
  std::vector<Int> z;
  z.reserve(p.coeffs().size());
  Int content(0);
  for (const Rat& c : p.coeffs()) {
    Int v = rat_num(c * Rat(lcm_den));
    z.push_back(v);
    content = gcd(content, v);
  }
  if (content > 1)
    for (auto& v : z) v /= content;
  if (p.eval(Rat(0)) == 0) {
    if (root_out) *root_out = Rat(0);
    return true;
  }
  size_t lo = 0;
  while (z[lo] == 0) ++lo;
  Int a0 = abs(z[lo]), an = abs(z.back());
  auto divisors = [](const Int& n) {
    std::vector<Int> ds;
    for (Int d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        ds.push_back(d);
        ds.push_back(n / d);
      }
    return ds;
  };
  for (const Int& dn : divisors(a0))
    for (const Int& dd : divisors(an))
      for (int s : {1, -1}) {
        Rat cand(s * dn, dd);
        if (p.eval(cand) == 0) {
          if (root_out) *root_out = cand;
          return true;
        }
      }
  return false;
}

UPoly shift_arg(const UPoly& p, const Rat& c) {
  // Horner: p(x + c)
  UPoly acc;
  UPoly lin({c, Rat(1)});
  for (size_t i = p.coeffs().size(); i-- > 0;)
    acc = acc * lin + UPoly::constant(p.coeffs()[i]);
  return acc;
}

UPoly scale_arg(const UPoly& p, const Rat& c) {
  std::vector<Rat> v(p.coeffs());
  Rat f(1);
  for (size_t i = 0; i < v.size(); ++i) {
    v[i] *= f;
    f *= c;
  }
  return UPoly(std::move(v));
}

UPoly negate_arg(const UPoly& p) { return scale_arg(p, Rat(-1)); }

Rat cauchy_root_bound(const UPoly& p) {
  if (p.degree() < 1) return Rat(1);
  Rat maxr(0);
  for (int k = 0; k < p.degree(); ++k) {
    Rat r = abs(p.coeff(k) / p.leading());
    if (r > maxr) maxr = r;
  }
  return maxr + 1;
}

}  // namespace cqe
