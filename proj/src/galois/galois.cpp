#include "galois/galois.hpp"

#include "core/polycerts.hpp"

#include <nlohmann/json.hpp>

namespace cqe {

using ordered_json = nlohmann::ordered_json;

MultiPoly quartic_family(const std::string& var_x, const std::string& var_a) {
  MultiPoly x = MultiPoly::var(var_x);
  return x.pow(4) + x + MultiPoly::var(var_a);
}

MultiPoly resolvent_cubic(const MultiPoly& quartic, const std::string& var_x) {
  if (quartic.degree(var_x) != 4)
    throw std::domain_error("resolvent_cubic expects a quartic");
  auto cs = quartic.coeffs_in(var_x);
  if (!cs[4].is_constant() || cs[4].constant_value() != 1 || !cs[3].is_zero())
    throw std::domain_error("resolvent_cubic expects a depressed monic quartic");
  const MultiPoly& c2 = cs[2];
  const MultiPoly& c1 = cs[1];
  const MultiPoly& c0 = cs[0];
  MultiPoly z = MultiPoly::var(var_x);
  return z.pow(3) - c2 * z.pow(2) - c0 * z * Rat(4) + c2 * c0 * Rat(4) - c1 * c1;
}

MultiPoly resolvent_cubic_of_quartic(const std::string& var_x, const std::string& var_a) {
  return resolvent_cubic(quartic_family(var_x, var_a), var_x);
}

S4Certificate s4_over_function_field() {
  S4Certificate cert;
  cert.context = "function-field";
  MultiPoly quartic = quartic_family("X", "a");
  MultiPoly resolvent = resolvent_cubic_of_quartic("X", "a");
  MultiPoly disc = discriminant(quartic, "X");
  cert.discriminant = disc.to_string();

  cert.quartic_irreducible.method = "gauss-linear-coprimality";
  cert.quartic_irreducible.pass = linear_in_a_irreducible(quartic, "a", "X");
  cert.quartic_irreducible.detail =
      "degree 1 in a; coefficient gcd over Q[X] of (1, X^4 + X) is 1";

  cert.resolvent_irreducible.method = "gauss-linear-coprimality";
  cert.resolvent_irreducible.pass = linear_in_a_irreducible(resolvent, "a", "X");
  cert.resolvent_irreducible.detail =
      "resolvent " + resolvent.to_string() + "; coefficient gcd over Q[X] of (-4X, X^3 - 1) is 1";

  cert.disc_nonsquare.method = "polynomial-square-extraction";
  cert.disc_nonsquare.pass = !perfect_square_test(disc.to_upoly("a"));
  cert.disc_nonsquare.detail = "odd degree in a forces a non-square";
  return cert;
}

S4Certificate s4_at_rational(const Rat& a0) {
  S4Certificate cert;
  cert.context = "rational a = " + rational_to_string(a0);
  Rat disc = Rat(256) * a0 * a0 * a0 - 27;
  cert.discriminant = rational_to_string(disc);

  UPoly quartic({a0, Rat(1), Rat(0), Rat(0), Rat(1)});
  cert.quartic_irreducible.method = "rational-root+bounded-quadratic-search";
  cert.quartic_irreducible.pass = irreducible_over_q(quartic);
  cert.quartic_irreducible.detail = "X^4 + X + " + rational_to_string(a0);

  UPoly resolvent({Rat(-1), Rat(-4) * a0, Rat(0), Rat(1)});
  cert.resolvent_irreducible.method = "rational-root";
  cert.resolvent_irreducible.pass = irreducible_over_q(resolvent);
  cert.resolvent_irreducible.detail = "X^3 - " + rational_to_string(4 * a0) + "*X - 1";

  cert.disc_nonsquare.method = "exact-integer-square-test";
  cert.disc_nonsquare.pass = disc != 0 && !rational_is_square(disc);
  cert.disc_nonsquare.detail = "256*a^3 - 27 = " + rational_to_string(disc);
  return cert;
}

S4Audit s4_random_audit(int count, std::uint64_t seed) {
  SeededRng rng(seed);
  S4Audit audit;
  for (int i = 0; i < count; ++i) {
    Rat a0 = rng.next_rational(10, 20);
    ++audit.total;
    if (s4_at_rational(a0).valid()) ++audit.passed;
  }
  return audit;
}

namespace {

ordered_json evidence_to_json(const Evidence& e) {
  return ordered_json{{"pass", e.pass}, {"method", e.method}, {"detail", e.detail}};
}

}  // namespace

std::string certificate_to_json(const S4Certificate& cert) {
  ordered_json j{
      {"context", cert.context},
      {"discriminant", cert.discriminant},
      {"quartic_irreducible", evidence_to_json(cert.quartic_irreducible)},
      {"resolvent_irreducible", evidence_to_json(cert.resolvent_irreducible)},
      {"disc_nonsquare", evidence_to_json(cert.disc_nonsquare)},
      {"valid", cert.valid()},
  };
  return j.dump(2);
}

}  // namespace cqe
