#ifndef CQE_QE_EQUIVALENCE_HPP
#define CQE_QE_EQUIVALENCE_HPP

#include "qe/curve_oracle.hpp"

#include <map>
#include <string>
#include <vector>

namespace cqe {

// Exact truth of a formula at a point covering its free variables.
// Quantified bodies must be quantifier-free (one binder level).
bool eval_formula(const FormulaPtr& f, ConstructibleCurveOracle& oracle,
                  const std::map<std::string, AlgebraicNumber>& point);

struct EquivalenceReport {
  size_t points_checked = 0;
  size_t disagreements = 0;
  std::vector<std::string> witnesses;  // printed points of disagreement (capped)
  bool agreed() const { return disagreements == 0; }
  std::string to_json() const;
};

// Samples n points from three pools: random rational tuples, points on every
// curve symbol occurring in either formula, and the registered constants of
// the signature, then compares exact evaluations.
EquivalenceReport check_equivalence_sampled(const FormulaPtr& f, const FormulaPtr& g,
                                            ConstructibleCurveOracle& oracle, size_t n,
                                            std::uint64_t seed);

}  // namespace cqe

#endif
