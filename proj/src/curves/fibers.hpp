#ifndef CQE_CURVES_FIBERS_HPP
#define CQE_CURVES_FIBERS_HPP

#include "curves/curveset.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace cqe {

// A plane-curve constraint tying one free variable to the shared variable y.
struct SharedCurve {
  MultiPoly p;        // polynomial in (xvar, yvar)
  std::string xvar;
  std::string yvar;
};

// gcd h of f and g in the main variable, plus a "jump certificate": away from
// the roots of `jump` (a polynomial free of the main variable), the gcd of
// the specializations is exactly the specialization of h.
struct GcdJump {
  MultiPoly h;
  MultiPoly jump;
};
GcdJump gcd_with_jump(const MultiPoly& f, const MultiPoly& g, const std::string& main_var);

using FiberSolutions = std::variant<AllSolutions, std::vector<AlgebraicNumber>>;

// Exact solution set in y of all curves specialized at x0 (values keyed by
// variable name).  AllSolutions when every specialization vanishes.
FiberSolutions fiber_solutions(const std::vector<SharedCurve>& curves,
                               const std::map<std::string, AlgebraicNumber>& x0);

struct FiberCount {
  bool infinite = false;
  int count = 0;
};
FiberCount fiber_count_at(const std::vector<SharedCurve>& curves,
                          const std::map<std::string, AlgebraicNumber>& x0);

// Parameter values of xvar over which {y : p(x, y) = 0} is infinite:
// exactly the common roots of every y-coefficient.
std::vector<AlgebraicNumber> infinite_fiber_locus(const MultiPoly& p, const std::string& xvar,
                                                  const std::string& yvar);

struct GenericFiberData {
  int generic_count = 0;
  std::vector<AlgebraicNumber> exceptional;  // candidate parameters (superset)
};

// All curves must share one x variable; the generic distinct-root count of
// the common fiber, plus every parameter value where it can differ.  The
// count is derived symbolically and cross-checked at three seeded draws.
GenericFiberData generic_fiber_data(const std::vector<SharedCurve>& curves, std::uint64_t seed);

// Dimension <= 1 superset of the projection of the common zero set onto the
// target variables, built from pairwise resultants through target[0] with
// degenerate parameter slices handled recursively.
CurveSet eliminate_variable(const std::vector<SharedCurve>& curves,
                            const std::vector<std::string>& target);

}  // namespace cqe

#endif
