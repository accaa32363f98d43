#include "core/polycerts.hpp"

#include <algorithm>
#include <cmath>

namespace cqe {

bool rational_is_square(const Rat& q) {
  if (q < 0) return false;
  if (q == 0) return true;
  Int n = rat_num(q), d = rat_den(q);
  Int rn = sqrt(n), rd = sqrt(d);
  return rn * rn == n && rd * rd == d;
}

bool perfect_square_test(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("perfect_square_test of zero polynomial");
  int n = p.degree();
  if (n % 2 != 0) return false;
  if (!rational_is_square(p.leading())) return false;
  if (n == 0) return true;
  int m = n / 2;
  // Undetermined coefficients from the top, then exact verification.
  std::vector<Rat> q(static_cast<size_t>(m) + 1, Rat(0));
  Int lead_num = sqrt(rat_num(p.leading())), lead_den = sqrt(rat_den(p.leading()));
  q[static_cast<size_t>(m)] = Rat(lead_num, lead_den);
  for (int j = m - 1; j >= 0; --j) {
    Rat acc(0);
    for (int i = j + 1; i <= m; ++i) {
      int k = m + j - i;
      if (k <= j || k > m) continue;
      acc += q[static_cast<size_t>(i)] * q[static_cast<size_t>(k)];
    }
    // p_{m+j} = 2 q_m q_j + acc  (acc collects pairs with both indices > j)
    q[static_cast<size_t>(j)] =
        (p.coeff(m + j) - acc) / (2 * q[static_cast<size_t>(m)]);
  }
  UPoly cand{std::vector<Rat>(q)};
  return cand * cand == p;
}

bool linear_in_a_irreducible(const MultiPoly& p, const std::string& var_a,
                             const std::string& var_t) {
  if (p.degree(var_a) != 1)
    throw std::domain_error("linear_in_a_irreducible: polynomial is not linear in " + var_a);
  auto cs = p.coeffs_in(var_a);
  UPoly b = cs[0].is_zero() ? UPoly() : cs[0].to_upoly(var_t);
  UPoly a = cs[1].to_upoly(var_t);
  if (a.is_zero()) return false;
  if (b.is_zero()) return a.degree() == 0;  // p = A(t)*a: reducible unless A constant
  return gcd(a, b).degree() == 0;
}

namespace {

// Primitive integer coefficients of p (denominators cleared, content removed).
std::vector<Int> primitive_integer_coeffs(const UPoly& p) {
  Int l(1);
  for (const Rat& c : p.coeffs()) l = lcm(l, rat_den(c));
  std::vector<Int> z;
  z.reserve(p.coeffs().size());
  Int content(0);
  for (const Rat& c : p.coeffs()) {
    Int v = rat_num(c * Rat(l));
    z.push_back(v);
    content = gcd(content, v);
  }
  if (content > 1)
    for (auto& v : z) v /= content;
  return z;
}

std::vector<Int> divisors_signed(const Int& n) {
  std::vector<Int> out;
  Int a = abs(n);
  for (Int d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      out.push_back(-d);
      Int e = a / d;
      if (e != d) {
        out.push_back(e);
        out.push_back(-e);
      }
    }
  }
  return out;
}

// Irreducibility of a degree-4 integer polynomial mod a small prime (no root,
// no monic quadratic factor).  Returns false when inconclusive (lc divisible
// by p or reducible mod p).
bool quartic_irreducible_mod_p(const std::vector<Int>& z, long p) {
  auto md = [&](const Int& v) { return static_cast<long>(((v % p) + p) % p); };
  long c[5];
  for (int i = 0; i < 5; ++i) c[i] = md(z[static_cast<size_t>(i)]);
  if (c[4] == 0) return false;
  auto eval = [&](long x) {
    long acc = 0;
    for (int i = 4; i >= 0; --i) acc = (acc * x + c[i]) % p;
    return acc;
  };
  for (long x = 0; x < p; ++x)
    if (eval(x) == 0) return false;
  // No quadratic factor: try dividing by every monic x^2 + bx + a mod p.
  for (long b = 0; b < p; ++b)
    for (long a = 0; a < p; ++a) {
      // Remainder of c by x^2 + b x + a over F_p.
      long r3 = (c[3] - c[4] * b % p + p * p) % p;
      long r2 = (c[2] - c[4] * a % p + p * p) % p;
      long q1 = r3;
      long r1 = (c[1] - q1 * a % p + p * p) % p;
      r2 = (r2 - q1 * b % p + p * p) % p;
      long q0 = r2;
      long rem1 = (r1 - q0 * b % p + p * p) % p;
      long rem0 = (c[0] - q0 * a % p + p * p) % p;
      if (rem1 % p == 0 && rem0 % p == 0) return false;
    }
  return true;
}

}  // namespace

bool irreducible_over_q(const UPoly& p) {
  int n = p.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  if (has_rational_root(p)) return false;
  if (n <= 3) return true;  // no root and degree <= 3
  if (n != 4)
    throw std::domain_error("irreducible_over_q supports degree <= 4");
  std::vector<Int> z = primitive_integer_coeffs(p);
  for (long sp : {3L, 5L, 7L, 11L, 13L})
    if (quartic_irreducible_mod_p(z, sp)) return true;
  // Exhaustive search for an integral quadratic factor: P = (e2 x^2 + e1 x + e0)
  // (f2 x^2 + f1 x + f0) with e2 f2 = c4, e0 f0 = c0, |e1| within the
  // Landau-Mignotte bound 2^2 * ||P||_2.
  Rat norm2(0);
  for (const Int& v : z) norm2 += Rat(v * v);
  Int bound = 4 * (sqrt(rat_num(norm2)) + 1);
  const Int c4 = z[4], c3 = z[3], c2 = z[2], c1 = z[1], c0 = z[0];
  for (const Int& e2 : divisors_signed(c4)) {
    if (e2 < 0) continue;  // fix the sign of the first factor's lead
    Int f2 = c4 / e2;
    for (const Int& e0 : divisors_signed(c0)) {
      Int f0 = c0 / e0;
      for (Int e1 = -bound; e1 <= bound; ++e1) {
        // x^3: e2 f1 + e1 f2 = c3
        Int t = c3 - e1 * f2;
        if (t % e2 != 0) continue;
        Int f1 = t / e2;
        if (e2 * f0 + e1 * f1 + e0 * f2 != c2) continue;
        if (e1 * f0 + e0 * f1 != c1) continue;
        return false;  // found a factorization
      }
    }
  }
  return true;
}

}  // namespace cqe
