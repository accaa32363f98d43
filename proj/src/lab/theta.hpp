#ifndef CQE_LAB_THETA_HPP
#define CQE_LAB_THETA_HPP

#include "core/algnum.hpp"
#include "core/multipoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cqe {

enum class ThetaFamily {
  PowerPlusPrev,  // Z^N + Z^(N-1) + a
  QuarticXPlusA,  // X^4 + X + a  (N = 4)
};

// Certified root system of the family polynomial at a rational parameter.
// Roots are labeled in lexicographic midpoint order at the build precision.
struct ThetaContext {
  ThetaFamily family = ThetaFamily::PowerPlusPrev;
  int N = 0;
  Rat a0;
  UPoly poly;
  std::vector<AlgebraicNumber> roots;
  Dyadic separation;  // positive lower bound on pairwise root distances
  long precision_bits = 128;
  // Cache for exact sum values (resultant chains are not cheap).
  mutable std::map<std::string, AlgebraicNumber> sum_cache;

  ComplexBall root_ball(size_t i, long bits) const { return roots.at(i).refined(bits); }
};

// Builds the context, certifies N distinct roots, anchors the root sum
// against the degree-(N-1) coefficient, and records the separation.
ThetaContext build_theta_context(ThetaFamily family, int N, const Rat& a0, long precision_bits);

// A sum of distinct labeled roots plus a rational offset.  The index multiset
// gives a structural identity that makes many equality checks exact for free.
struct RootSum {
  std::vector<int> indices;  // sorted, distinct
  Rat offset = Rat(0);

  std::string describe() const;
};

ComplexBall root_sum_ball(const ThetaContext& ctx, const RootSum& s, long bits);
AlgebraicNumber root_sum_value(const ThetaContext& ctx, const RootSum& s);
// Structural fast path, escalating ball separation, exact fallback.
bool root_sums_equal(const ThetaContext& ctx, const RootSum& a, const RootSum& b);

// The ternary-relation locus polynomial: for a fixed second argument s, the
// witnesses y (with y != s/2) are exactly the roots of
//   -4s*y^3 + 6s^2*y^2 - (4s^3+2)*y + (s^4+s).
// Returned symbolically in the named variables.
MultiPoly r_locus_poly(const std::string& yvar = "y", const std::string& svar = "s");

struct ConfigTuple {
  std::vector<RootSum> values;
  std::string provenance;
};

// The two labeled 3-tuples of root-pair sums: hub sums (root i + root 4) and
// rim sums (root j + root k over pairs from the first three roots).
// Requires the quartic family at N = 4.
std::pair<ConfigTuple, ConfigTuple> triangle_star_configs(const ThetaContext& ctx);

struct CheckTResult {
  bool satisfied = false;
  std::optional<ComplexBall> witness;
  int witness_root_index = -1;    // when the witness is one of the context roots
  Dyadic separation;              // certified positive bound when refuted
  std::string detail;
};

// Does some y satisfy the binary relation against all three tuple entries?
// Ball triple-intersection at escalating precision with exact confirmation.
CheckTResult check_T(const ThetaContext& ctx, const ConfigTuple& config);

struct SubsetSumReport {
  int k = 0;
  bool injective = false;
  size_t pairs = 0;
  Dyadic min_separation;  // certified positive lower bound over distinct pairs
  std::string collision;  // description when injectivity fails
};

// All C(N,k) subset sums pairwise distinct, with a certified separation.
SubsetSumReport subset_sum_injective(const ThetaContext& ctx, int k);

}  // namespace cqe

#endif
