#include "curves/fibers.hpp"

#include <algorithm>
#include <set>

namespace cqe {

GcdJump gcd_with_jump(const MultiPoly& f, const MultiPoly& g, const std::string& m) {
  GcdJump out;
  out.h = gcd_multi(f, g);
  out.jump = MultiPoly::constant(Rat(1));
  auto fold = [&](const MultiPoly& q) {
    if (!q.is_zero() && !q.is_constant()) out.jump = out.jump * q;
  };
  MultiPoly f1 = out.h.is_constant() ? f : divide_exact(f, out.h);
  MultiPoly g1 = out.h.is_constant() ? g : divide_exact(g, out.h);
  if (out.h.degree(m) < 1 && !out.h.is_constant()) fold(out.h);  // parameter-only common factor
  if (f1.degree(m) >= 1 && g1.degree(m) >= 1) fold(resultant(f1, g1, m));
  if (f1.degree(m) < 1) {
    fold(f1);
  } else {
    fold(content_in(f1, m));
    fold(f1.leading_coeff(m));
  }
  if (g1.degree(m) < 1) {
    fold(g1);
  } else {
    fold(content_in(g1, m));
    fold(g1.leading_coeff(m));
  }
  if (out.h.degree(m) >= 1) {
    fold(out.h.leading_coeff(m));
    fold(content_in(out.h, m));
  }
  return out;
}

FiberSolutions fiber_solutions(const std::vector<SharedCurve>& curves,
                               const std::map<std::string, AlgebraicNumber>& x0) {
  std::vector<UPoly> rational_specs;
  std::vector<const SharedCurve*> algebraic_curves;
  for (const auto& c : curves) {
    const AlgebraicNumber& xi = x0.at(c.xvar);
    if (xi.is_rational()) {
      MultiPoly s = c.p.substitute(c.xvar, xi.rational_value());
      if (s.is_zero()) continue;  // vanished: no constraint here
      if (s.is_constant()) return std::vector<AlgebraicNumber>{};
      rational_specs.push_back(s.to_upoly(c.yvar));
    } else {
      algebraic_curves.push_back(&c);
    }
  }
  std::vector<AlgebraicNumber> candidates;
  size_t source_index = algebraic_curves.size();  // which algebraic curve seeded candidates
  bool have_candidates = false;
  if (!rational_specs.empty()) {
    UPoly g = rational_specs[0];
    for (size_t i = 1; i < rational_specs.size(); ++i) g = gcd(g, rational_specs[i]);
    if (g.degree() == 0) return std::vector<AlgebraicNumber>{};
    UPoly sf = squarefree_part(g);
    for (const auto& ball : isolate_roots(sf, 128)) candidates.emplace_back(sf, ball);
    have_candidates = true;
  } else {
    for (size_t i = 0; i < algebraic_curves.size(); ++i) {
      const SharedCurve& c = *algebraic_curves[i];
      SolveResult r = solve_bivariate_at(c.p, c.xvar, x0.at(c.xvar), c.yvar);
      if (std::holds_alternative<AllSolutions>(r)) continue;
      candidates = std::get<std::vector<AlgebraicNumber>>(r);
      source_index = i;
      have_candidates = true;
      break;
    }
    if (!have_candidates) return AllSolutions{};  // every specialization vanished
  }
  std::vector<AlgebraicNumber> out;
  for (const auto& y : candidates) {
    bool keep = true;
    for (size_t i = 0; i < algebraic_curves.size() && keep; ++i) {
      if (i == source_index) continue;
      const SharedCurve& c = *algebraic_curves[i];
      keep = bivariate_zero_at(c.p, c.xvar, x0.at(c.xvar), c.yvar, y);
    }
    if (keep) out.push_back(y);
  }
  return out;
}

FiberCount fiber_count_at(const std::vector<SharedCurve>& curves,
                          const std::map<std::string, AlgebraicNumber>& x0) {
  FiberSolutions s = fiber_solutions(curves, x0);
  if (std::holds_alternative<AllSolutions>(s)) return {true, 0};
  return {false, static_cast<int>(std::get<std::vector<AlgebraicNumber>>(s).size())};
}

std::vector<AlgebraicNumber> infinite_fiber_locus(const MultiPoly& p, const std::string& xvar,
                                                  const std::string& yvar) {
  MultiPoly content = content_in(p, yvar);
  if (content.is_constant()) return {};
  UPoly c = squarefree_part(content.to_upoly(xvar));
  std::vector<AlgebraicNumber> out;
  for (const auto& ball : isolate_roots(c, 128)) out.emplace_back(c, ball);
  return out;
}

namespace {

void append_roots(std::vector<AlgebraicNumber>& out, const MultiPoly& q, const std::string& var) {
  if (q.is_zero() || q.is_constant()) return;
  UPoly u = squarefree_part(q.to_upoly(var));
  if (u.degree() < 1) return;
  for (const auto& ball : isolate_roots(u, 128)) {
    AlgebraicNumber cand(u, ball);
    bool dup = false;
    for (const auto& e : out)
      if (alg_equal(e, cand)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(cand);
  }
}

}  // namespace

GenericFiberData generic_fiber_data(const std::vector<SharedCurve>& curves, std::uint64_t seed) {
  if (curves.empty()) throw std::invalid_argument("generic_fiber_data needs curves");
  const std::string xv = curves[0].xvar, yv = curves[0].yvar;
  for (const auto& c : curves)
    if (c.xvar != xv || c.yvar != yv)
      throw std::invalid_argument("generic_fiber_data: curves must share one parameter variable");

  GenericFiberData out;
  MultiPoly jumps = MultiPoly::constant(Rat(1));
  MultiPoly h = curves[0].p;
  for (size_t i = 1; i < curves.size(); ++i) {
    GcdJump gj = gcd_with_jump(h, curves[i].p, yv);
    h = gj.h;
    if (!gj.jump.is_constant()) jumps = jumps * gj.jump;
  }
  if (h.degree(yv) >= 1) {
    GcdJump sfj = gcd_with_jump(h, h.derivative(yv), yv);
    MultiPoly h_sf = sfj.h.is_constant() ? h : divide_exact(h, sfj.h);
    if (!sfj.jump.is_constant()) jumps = jumps * sfj.jump;
    out.generic_count = h_sf.degree(yv);
    append_roots(out.exceptional, h_sf.leading_coeff(yv), xv);
    if (h_sf.degree(yv) >= 2)
      append_roots(out.exceptional, resultant(h_sf, h_sf.derivative(yv), yv), xv);
  } else {
    out.generic_count = 0;
  }
  for (const auto& c : curves) {
    append_roots(out.exceptional, content_in(c.p, yv), xv);
    append_roots(out.exceptional, c.p.leading_coeff(yv), xv);
  }
  append_roots(out.exceptional, jumps, xv);

  // The symbolic count must agree with three seeded draws away from every
  // exceptional candidate.
  SeededRng rng(seed);
  int agreed = 0, guard = 0;
  while (agreed < 3 && guard < 200) {
    ++guard;
    Rat r = rng.next_rational(1 << 14, 64);
    bool bad = false;
    for (const auto& e : out.exceptional)
      if (e.is_rational() && e.rational_value() == r) bad = true;
    if (bad) continue;
    std::map<std::string, AlgebraicNumber> pt{{xv, AlgebraicNumber(r)}};
    FiberCount fc = fiber_count_at(curves, pt);
    if (fc.infinite || fc.count != out.generic_count)
      throw std::logic_error("generic fiber count disagrees with a sampled draw");
    ++agreed;
  }
  return out;
}

namespace {

MultiPoly to_positional(const MultiPoly& p, const std::string& a, size_t pa,
                        const std::string& b, size_t pb) {
  MultiPoly q = p.rename_var(a, "_tmp_a");
  q = q.rename_var(b, pos_var(pb));
  return q.rename_var("_tmp_a", pos_var(pa));
}

void build_superset(const std::vector<std::string>& vars,
                    const std::map<std::string, MultiPoly>& link_by_var,
                    const std::map<std::string, size_t>& position, const std::string& yv,
                    std::map<std::string, MultiPoly> pins, CurveSet& out, int depth) {
  if (depth > 8) throw std::logic_error("projection recursion too deep");
  if (vars.empty()) return;
  const std::string& anchor = vars[0];
  LinkComponent lc;
  lc.arity = out.arity;
  lc.param_index = static_cast<int>(position.at(anchor));
  std::vector<MultiPoly> degenerate_contents;
  bool complete = true;
  for (size_t i = 1; i < vars.size(); ++i) {
    const std::string& v = vars[i];
    MultiPoly r = resultant(link_by_var.at(anchor), link_by_var.at(v), yv);
    if (r.is_zero())
      throw std::domain_error("eliminate_variable: resultant vanished (shared component)");
    MultiPoly e = content_in(r, v);  // pure-anchor factor
    MultiPoly rp = e.is_constant() ? r : divide_exact(r, e);
    if (!e.is_constant()) degenerate_contents.push_back(e);
    if (rp.degree(v) < 1) {
      degenerate_contents.push_back(rp);
      complete = false;
      continue;
    }
    lc.links[static_cast<int>(position.at(v))] =
        to_positional(rp, anchor, position.at(anchor), v, position.at(v));
  }
  for (const auto& [pv, poly] : pins) {
    MultiPoly pp = poly.rename_var(pv, pos_var(position.at(pv)));
    lc.links[static_cast<int>(position.at(pv))] = pp;
  }
  if (complete) out.link_components.push_back(lc);
  if (!degenerate_contents.empty() && vars.size() >= 2) {
    // Anchor values where a pairwise link degenerates: pin the anchor there
    // and project the remaining variables through a fresh anchor.
    MultiPoly pin = MultiPoly::constant(Rat(1));
    for (const auto& e : degenerate_contents) pin = pin * e;
    pin = squarefree_in(pin, anchor);
    std::vector<std::string> rest(vars.begin() + 1, vars.end());
    auto pins2 = pins;
    pins2[anchor] = pin;
    build_superset(rest, link_by_var, position, yv, pins2, out, depth + 1);
  }
}

}  // namespace

CurveSet eliminate_variable(const std::vector<SharedCurve>& curves,
                            const std::vector<std::string>& target) {
  if (curves.empty()) throw std::invalid_argument("eliminate_variable needs curves");
  const std::string yv = curves[0].yvar;
  for (const auto& c : curves) {
    if (c.yvar != yv) throw std::invalid_argument("curves must share the bound variable");
    if (c.p.degree(yv) < 1)
      throw std::domain_error(
          "eliminate_variable: conjunct has no dependence on the bound variable");
  }
  for (const auto& c : curves)
    if (std::find(target.begin(), target.end(), c.xvar) == target.end())
      throw std::invalid_argument("curve variable missing from the target tuple");

  if (target.size() == 1) {
    const std::string& xv = target[0];
    if (curves.size() == 1) return CurveSet::full_line();
    // All constraints share one variable: common solutions force every
    // pairwise resultant in y to vanish.
    UPoly g;
    for (size_t i = 0; i < curves.size(); ++i)
      for (size_t j = i + 1; j < curves.size(); ++j) {
        MultiPoly r = resultant(curves[i].p, curves[j].p, yv);
        if (r.is_zero()) return CurveSet::full_line();  // shared component
        UPoly u = r.is_constant() ? UPoly::constant(r.constant_value()) : r.to_upoly(xv);
        g = g.is_zero() ? u : gcd(g, u);
      }
    if (g.degree() < 1) return CurveSet::empty_set(1);
    UPoly sf = squarefree_part(g);
    CurveSet out = CurveSet::empty_set(1);
    for (const auto& ball : isolate_roots(sf, 128)) out.extra.add({AlgebraicNumber(sf, ball)});
    return out;
  }

  // Fold multiple constraints on one variable into a single containing link.
  std::map<std::string, MultiPoly> link_by_var;
  for (const auto& c : curves) {
    auto it = link_by_var.find(c.xvar);
    if (it == link_by_var.end()) {
      link_by_var.emplace(c.xvar, c.p);
    } else {
      GcdJump gj = gcd_with_jump(it->second, c.p, yv);
      it->second = gj.h.degree(yv) >= 1 ? gj.h * gj.jump : it->second * c.p;
    }
  }
  for (const auto& v : target)
    if (!link_by_var.count(v))
      throw std::invalid_argument("target variable " + v + " is not linked to the bound variable");

  CurveSet out = CurveSet::empty_set(static_cast<int>(target.size()));
  std::map<std::string, size_t> position;
  for (size_t i = 0; i < target.size(); ++i) position[target[i]] = i;
  build_superset(target, link_by_var, position, yv, {}, out, 0);
  return out;
}

}  // namespace cqe
