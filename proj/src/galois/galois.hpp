#ifndef CQE_GALOIS_GALOIS_HPP
#define CQE_GALOIS_GALOIS_HPP

#include "core/multipoly.hpp"
#include "core/upoly.hpp"

#include <string>
#include <vector>

namespace cqe {

// One sub-check of a symmetric-group certificate, with enough detail to
// re-run it by hand.
struct Evidence {
  bool pass = false;
  std::string method;
  std::string detail;
};

// Full-symmetric-group certificate for the quartic family x^4 + x + a:
// the quartic and its resolvent cubic are irreducible and the discriminant
// is not a square, either over the function field Q(a) or at a fixed
// rational value of a.
struct S4Certificate {
  std::string context;  // "function-field" or "rational a = <value>"
  Evidence quartic_irreducible;
  Evidence resolvent_irreducible;
  Evidence disc_nonsquare;
  std::string discriminant;  // textual form of the discriminant used

  bool valid() const {
    return quartic_irreducible.pass && resolvent_irreducible.pass && disc_nonsquare.pass;
  }
};

// The quartic family x^4 + x + a in variables (var_x, var_a).
MultiPoly quartic_family(const std::string& var_x = "X", const std::string& var_a = "a");

// Resolvent cubic of a quartic x^4 + c2 x^2 + c1 x + c0 (monic, no cubic
// term): z^3 - c2 z^2 - 4 c0 z + (4 c2 c0 - c1^2).
MultiPoly resolvent_cubic(const MultiPoly& quartic, const std::string& var_x);

// Resolvent of the fixed family: X^3 - 4aX - 1 in (var_a, var_x).
MultiPoly resolvent_cubic_of_quartic(const std::string& var_x = "X",
                                     const std::string& var_a = "a");

S4Certificate s4_over_function_field();
S4Certificate s4_at_rational(const Rat& a0);

// Soft statistical audit: how many of `count` pseudorandom rational values of
// a (|a| <= 10, denominator <= 20) yield a passing certificate.
struct S4Audit {
  int total = 0;
  int passed = 0;
};
S4Audit s4_random_audit(int count, std::uint64_t seed);

std::string certificate_to_json(const S4Certificate& cert);

}  // namespace cqe

#endif
