#ifndef CQE_CORE_POLYCERTS_HPP
#define CQE_CORE_POLYCERTS_HPP

#include "core/multipoly.hpp"
#include "core/upoly.hpp"

namespace cqe {

// Is q a square in Q, i.e. q = r^2 with r rational?
bool rational_is_square(const Rat& q);

// p = q^2 for some polynomial q with rational coefficients?  Degree parity
// and leading-coefficient squareness first, then exact square-root extraction.
bool perfect_square_test(const UPoly& p);

// Gauss-lemma certificate for polynomials of degree exactly 1 in var_a:
// p = A(t)*a + B(t) is irreducible over Q(a) iff gcd(A, B) = 1 in Q[t].
// Throws when deg_a(p) != 1.
bool linear_in_a_irreducible(const MultiPoly& p, const std::string& var_a,
                             const std::string& var_t);

// gcd of the coefficients of p viewed as a polynomial in v.
inline MultiPoly coeff_gcd_in(const MultiPoly& p, const std::string& v) {
  return content_in(p, v);
}

// Irreducibility over Q for the small degrees the workbench needs
// (rational-root test up to degree 3, plus a bounded integral
// quadratic-factor search for quartics).  A mod-p shortcut is tried first.
bool irreducible_over_q(const UPoly& p);

}  // namespace cqe

#endif
