#include "curves/curveset.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace cqe {

using ordered_json = nlohmann::ordered_json;

std::string pos_var(size_t i) { return "x" + std::to_string(i + 1); }

bool points_equal(const Point& a, const Point& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!alg_equal(a[i], b[i])) return false;
  return true;
}

PlaneCurve::PlaneCurve(const MultiPoly& poly) {
  if (poly.is_zero()) throw std::domain_error("plane curve needs a nonzero polynomial");
  MultiPoly q = squarefree_in(poly, pos_var(0));
  q = squarefree_in(q, pos_var(1));
  p = q;
}

bool PlaneCurve::contains(const Point& pt) const {
  return bivariate_zero_at(p, pos_var(0), pt.at(0), pos_var(1), pt.at(1));
}

bool LinkComponent::contains(const Point& pt) const {
  const AlgebraicNumber& param = pt.at(static_cast<size_t>(param_index));
  for (const auto& ex : excluded_params)
    if (alg_equal(param, ex)) return false;
  for (const auto& [j, link] : links) {
    if (!bivariate_zero_at(link, pos_var(static_cast<size_t>(param_index)), param,
                           pos_var(static_cast<size_t>(j)), pt.at(static_cast<size_t>(j))))
      return false;
  }
  return true;
}

bool FinitePointSet::contains(const Point& pt) const {
  for (const auto& q : points)
    if (points_equal(q, pt)) return true;
  return false;
}

void FinitePointSet::add(const Point& pt) {
  if (!contains(pt)) points.push_back(pt);
}

CurveSet CurveSet::full_line() {
  CurveSet c = empty_set(1);
  c.full = true;
  return c;
}

CurveSet CurveSet::from_plane(const MultiPoly& p) {
  CurveSet c = empty_set(2);
  c.planes.emplace_back(p);
  return c;
}

CurveSet CurveSet::from_points(int arity, std::vector<Point> pts) {
  CurveSet c = empty_set(arity);
  for (auto& p : pts) c.extra.add(p);
  return c;
}

bool CurveSet::membership(const Point& pt) const {
  if (static_cast<int>(pt.size()) != arity) throw std::invalid_argument("arity mismatch");
  if (minus.contains(pt)) return false;
  if (full) return true;
  for (const auto& pc : planes)
    if (pc.contains(pt)) return true;
  for (const auto& lc : link_components)
    if (lc.contains(pt)) return true;
  return extra.contains(pt);
}

namespace {

std::vector<AlgebraicNumber> roots_at_rational(const MultiPoly& g, const std::string& uvar,
                                               const Rat& u0, const std::string& vvar) {
  auto res = solve_bivariate_at(g, uvar, AlgebraicNumber(u0), vvar, 128);
  if (std::holds_alternative<AllSolutions>(res)) return {};  // caller treats as "free"
  return std::get<std::vector<AlgebraicNumber>>(res);
}

}  // namespace

std::vector<Point> CurveSet::sample_points(size_t count, std::uint64_t seed) const {
  SeededRng rng(seed);
  std::vector<Point> found;
  auto push = [&](const Point& pt) {
    if (!membership(pt)) return;
    found.push_back(pt);
  };
  for (const auto& pt : extra.points) push(pt);
  size_t attempts = 0;
  const size_t max_attempts = 64 + 16 * count;
  while (found.size() < count && attempts < max_attempts) {
    ++attempts;
    Rat r = rng.next_rational(64, 8);
    if (full) {
      push({AlgebraicNumber(r)});
      continue;
    }
    for (const auto& pc : planes) {
      bool flip = (attempts % 2) == 0;  // alternate solve direction
      const std::string solve_for = flip ? pos_var(0) : pos_var(1);
      const std::string fixed = flip ? pos_var(1) : pos_var(0);
      if (pc.p.degree(solve_for) < 1) continue;
      for (const auto& root : roots_at_rational(pc.p, fixed, r, solve_for)) {
        Point pt(2);
        pt[flip ? 1 : 0] = AlgebraicNumber(r);
        pt[flip ? 0 : 1] = root;
        push(pt);
        if (found.size() >= count) break;
      }
      if (found.size() >= count) break;
    }
    for (const auto& lc : link_components) {
      bool excluded = false;
      AlgebraicNumber pr(r);
      for (const auto& ex : lc.excluded_params)
        if (alg_equal(pr, ex)) excluded = true;
      if (excluded) continue;
      Point pt(static_cast<size_t>(lc.arity), AlgebraicNumber(Rat(0)));
      pt[static_cast<size_t>(lc.param_index)] = pr;
      bool ok = true;
      for (const auto& [j, link] : lc.links) {
        auto roots = roots_at_rational(link, pos_var(static_cast<size_t>(lc.param_index)), r,
                                       pos_var(static_cast<size_t>(j)));
        if (roots.empty()) {
          ok = false;
          break;
        }
        // One deterministic choice per coordinate keeps the tuple count linear.
        pt[static_cast<size_t>(j)] = roots[rng.next() % roots.size()];
      }
      if (ok) push(pt);
      if (found.size() >= count) break;
    }
  }
  if (found.empty())
    throw std::runtime_error("sample_points: no point found; the set appears empty over the probed parameters");
  // Cycle to reach the requested count (a finite set simply repeats).
  std::vector<Point> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(found[i % found.size()]);
  return out;
}

std::string algnum_to_json(const AlgebraicNumber& a) {
  if (a.is_rational()) return "\"" + rational_to_string(a.rational_value()) + "\"";
  ordered_json j;
  j["minpoly"] = a.minpoly().to_string("w");
  const ComplexBall& b = a.box();
  j["re"] = rational_to_string(b.real().to_rational());
  j["im"] = rational_to_string(b.imag().to_rational());
  j["rad"] = rational_to_string(b.radius().to_rational());
  return j.dump();
}

std::string point_to_json(const Point& pt) {
  std::string out = "[";
  for (size_t i = 0; i < pt.size(); ++i) {
    if (i) out += ",";
    out += algnum_to_json(pt[i]);
  }
  return out + "]";
}

namespace {

ordered_json algnum_json_value(const AlgebraicNumber& a) {
  return ordered_json::parse(algnum_to_json(a));
}

ordered_json points_json_value(const std::vector<Point>& pts) {
  ordered_json arr = ordered_json::array();
  for (const auto& pt : pts) {
    ordered_json p = ordered_json::array();
    for (const auto& c : pt) p.push_back(algnum_json_value(c));
    arr.push_back(p);
  }
  return arr;
}

AlgebraicNumber algnum_from_json(const ordered_json& j) {
  if (j.is_string()) return AlgebraicNumber(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return AlgebraicNumber(Rat(j.get<long>()));
  UPoly mp = squarefree_part(MultiPoly::parse(j.at("minpoly").get<std::string>()).to_upoly("w"));
  Rat re = parse_rational(j.at("re").get<std::string>());
  Rat im = parse_rational(j.at("im").get<std::string>());
  Rat rad = parse_rational(j.at("rad").get<std::string>());
  ComplexBall box(Dyadic::from_rational(re, 256), Dyadic::from_rational(im, 256),
                  Dyadic::from_rational_up(rad, 64));
  // Re-derive the certified isolating ball: the stated box must single out
  // one root.
  long bits = 64;
  while (true) {
    auto roots = isolate_roots(mp, bits);
    int hit = -1, cnt = 0;
    for (size_t k = 0; k < roots.size(); ++k)
      if (balls_overlap(roots[k], box)) {
        ++cnt;
        hit = static_cast<int>(k);
      }
    if (cnt == 1) return AlgebraicNumber(mp, roots[static_cast<size_t>(hit)]);
    if (cnt == 0) throw std::invalid_argument("algebraic constant: box contains no root of its polynomial");
    bits *= 2;
    if (bits > kPrecisionCapBits)
      throw std::invalid_argument("algebraic constant: box does not isolate a single root");
  }
}

std::vector<Point> points_from_json(const ordered_json& arr) {
  std::vector<Point> out;
  for (const auto& pj : arr) {
    Point pt;
    for (const auto& cj : pj) pt.push_back(algnum_from_json(cj));
    out.push_back(std::move(pt));
  }
  return out;
}

ordered_json curveset_json(const CurveSet& c) {
  ordered_json j;
  bool single_plane = c.planes.size() == 1 && c.link_components.empty() && !c.full &&
                      c.extra.points.empty();
  bool single_links = c.link_components.size() == 1 && c.planes.empty() && !c.full &&
                      c.extra.points.empty();
  bool only_points = !c.full && c.planes.empty() && c.link_components.empty();
  if (c.full) {
    j["kind"] = "full";
    j["arity"] = c.arity;
  } else if (single_plane) {
    j["kind"] = "plane";
    j["arity"] = 2;
    j["polys"] = {c.planes[0].p.to_string()};
  } else if (single_links) {
    const LinkComponent& lc = c.link_components[0];
    j["kind"] = "links";
    j["arity"] = lc.arity;
    j["param_index"] = lc.param_index;
    ordered_json polys = ordered_json::array();
    for (const auto& [k, link] : lc.links)
      polys.push_back(ordered_json{{"coord", k}, {"poly", link.to_string()}});
    j["polys"] = polys;
    if (!lc.excluded_params.empty()) {
      ordered_json ex = ordered_json::array();
      for (const auto& e : lc.excluded_params) ex.push_back(algnum_json_value(e));
      j["excluded_params"] = ex;
    }
  } else if (only_points) {
    j["kind"] = "points";
    j["arity"] = c.arity;
    j["points"] = points_json_value(c.extra.points);
  } else {
    j["kind"] = "set";
    j["arity"] = c.arity;
    ordered_json comps = ordered_json::array();
    for (const auto& pc : c.planes) {
      CurveSet one = CurveSet::from_plane(pc.p);
      comps.push_back(curveset_json(one));
    }
    for (const auto& lc : c.link_components) {
      CurveSet one = CurveSet::empty_set(lc.arity);
      one.link_components.push_back(lc);
      comps.push_back(curveset_json(one));
    }
    j["components"] = comps;
    if (!c.extra.points.empty()) j["extra"] = points_json_value(c.extra.points);
  }
  if (!c.minus.points.empty()) j["minus"] = points_json_value(c.minus.points);
  return j;
}

CurveSet curveset_from(const ordered_json& j) {
  CurveSet c;
  std::string kind = j.at("kind").get<std::string>();
  c.arity = j.at("arity").get<int>();
  c.extra.arity = c.arity;
  c.minus.arity = c.arity;
  if (kind == "full") {
    if (c.arity != 1) throw std::invalid_argument("kind=full requires arity 1");
    c.full = true;
  } else if (kind == "plane") {
    if (c.arity != 2) throw std::invalid_argument("kind=plane requires arity 2");
    c.planes.emplace_back(MultiPoly::parse(j.at("polys").at(0).get<std::string>()));
  } else if (kind == "links") {
    LinkComponent lc;
    lc.arity = c.arity;
    lc.param_index = j.at("param_index").get<int>();
    for (const auto& pj : j.at("polys")) {
      int coord = pj.at("coord").get<int>();
      MultiPoly link = MultiPoly::parse(pj.at("poly").get<std::string>());
      if (link.degree(pos_var(static_cast<size_t>(coord))) < 1)
        throw std::invalid_argument("link polynomial must have positive degree in its coordinate");
      lc.links[coord] = link;
    }
    if (j.contains("excluded_params"))
      for (const auto& e : j.at("excluded_params")) lc.excluded_params.push_back(algnum_from_json(e));
    c.link_components.push_back(std::move(lc));
  } else if (kind == "points") {
    for (auto& pt : points_from_json(j.at("points"))) {
      if (static_cast<int>(pt.size()) != c.arity)
        throw std::invalid_argument("point arity mismatch");
      c.extra.add(pt);
    }
  } else if (kind == "set") {
    for (const auto& cj : j.at("components")) {
      CurveSet part = curveset_from(cj);
      if (part.arity != c.arity) throw std::invalid_argument("component arity mismatch");
      for (auto& pc : part.planes) c.planes.push_back(std::move(pc));
      for (auto& lc : part.link_components) c.link_components.push_back(std::move(lc));
    }
    if (j.contains("extra"))
      for (auto& pt : points_from_json(j.at("extra"))) c.extra.add(pt);
  } else {
    throw std::invalid_argument("unknown curve kind: " + kind);
  }
  if (j.contains("minus"))
    for (auto& pt : points_from_json(j.at("minus"))) c.minus.add(pt);
  return c;
}

}  // namespace

std::string CurveSet::to_json() const { return curveset_json(*this).dump(); }

CurveSet CurveSet::parse_json(const std::string& text) {
  return curveset_from(ordered_json::parse(text));
}

}  // namespace cqe
