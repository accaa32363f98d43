#ifndef CQE_CURVES_CURVESET_HPP
#define CQE_CURVES_CURVESET_HPP

#include "core/algnum.hpp"
#include "core/multipoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cqe {

// Canonical positional variable names for curve components: x1, x2, ...
std::string pos_var(size_t i);

using Point = std::vector<AlgebraicNumber>;

bool points_equal(const Point& a, const Point& b);

// {(x1,x2) : p(x1,x2) = 0}; the square-free part is what is stored.
struct PlaneCurve {
  MultiPoly p;
  PlaneCurve() = default;
  explicit PlaneCurve(const MultiPoly& poly);
  bool contains(const Point& pt) const;
};

// Dimension <= 1 subset of affine n-space given by one parameter coordinate
// and a bivariate link to every other coordinate: each fiber over the
// parameter is finite because every link has positive degree in its
// coordinate.  Finitely many parameter values can be excluded.
struct LinkComponent {
  int arity = 0;
  int param_index = 0;                          // 0-based
  std::map<int, MultiPoly> links;               // coord j -> L(x_{param+1}, x_{j+1})
  std::vector<AlgebraicNumber> excluded_params;

  bool contains(const Point& pt) const;
};

struct FinitePointSet {
  int arity = 0;
  std::vector<Point> points;

  bool contains(const Point& pt) const;
  // Insert unless an equal point is already present.
  void add(const Point& pt);
};

// Constructible set of dimension <= 1: a union of components and extra
// points, minus a finite point set (applied last).  `full` is allowed only
// for arity 1, where every subset of the line has dimension <= 1.
struct CurveSet {
  int arity = 0;
  bool full = false;
  std::vector<PlaneCurve> planes;  // arity 2 only
  std::vector<LinkComponent> link_components;
  FinitePointSet extra;
  FinitePointSet minus;

  static CurveSet full_line();
  static CurveSet from_plane(const MultiPoly& p);
  static CurveSet from_points(int arity, std::vector<Point> pts);
  static CurveSet empty_set(int arity) {
    CurveSet c;
    c.arity = arity;
    c.extra.arity = arity;
    c.minus.arity = arity;
    return c;
  }

  bool is_empty_syntactically() const {
    return !full && planes.empty() && link_components.empty() && extra.points.empty();
  }

  bool membership(const Point& pt) const;
  // Deterministic certified sample; throws std::runtime_error when the set
  // is empty over every probed parameter.
  std::vector<Point> sample_points(size_t count, std::uint64_t seed) const;

  std::string to_json() const;
  static CurveSet parse_json(const std::string& text);
};

// JSON helpers shared with reports.
std::string point_to_json(const Point& pt);
std::string algnum_to_json(const AlgebraicNumber& a);

}  // namespace cqe

#endif
