#include "qe/equivalence.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace cqe {

namespace {

bool body_quantifier_free(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Exists:
    case FKind::CountAtLeast:
    case FKind::CountExactly:
    case FKind::CountInfinite:
      return false;
    default:
      for (const auto& c : f->children)
        if (!body_quantifier_free(c)) return false;
      return true;
  }
}

// Solution set in y of a quantifier-free formula at a partial point.
YSet formula_y_solutions(const FormulaPtr& f, const std::string& y,
                         ConstructibleCurveOracle& o,
                         const std::map<std::string, AlgebraicNumber>& pt) {
  switch (f->kind) {
    case FKind::True:
      return YSet::all();
    case FKind::False:
      return YSet::none();
    case FKind::Atom:
    case FKind::Equals:
      return o.atom_y_solutions(f, y, pt);
    case FKind::Not:
      return yset_complement(formula_y_solutions(f->children[0], y, o, pt));
    case FKind::And: {
      YSet acc = YSet::all();
      for (const auto& c : f->children) {
        acc = yset_intersect(acc, formula_y_solutions(c, y, o, pt));
        if (!acc.cofinite && acc.values.empty()) break;
      }
      return acc;
    }
    case FKind::Or: {
      YSet acc = YSet::none();
      for (const auto& c : f->children)
        acc = yset_union(acc, formula_y_solutions(c, y, o, pt));
      return acc;
    }
    default:
      throw UnsupportedFragment("point evaluation supports one quantifier level");
  }
}

}  // namespace

bool eval_formula(const FormulaPtr& f, ConstructibleCurveOracle& o,
                  const std::map<std::string, AlgebraicNumber>& point) {
  switch (f->kind) {
    case FKind::True:
      return true;
    case FKind::False:
      return false;
    case FKind::Atom:
    case FKind::Equals:
      return o.eval_atom(f, point);
    case FKind::Not:
      return !eval_formula(f->children[0], o, point);
    case FKind::And:
      for (const auto& c : f->children)
        if (!eval_formula(c, o, point)) return false;
      return true;
    case FKind::Or:
      for (const auto& c : f->children)
        if (eval_formula(c, o, point)) return true;
      return false;
    case FKind::Exists:
    case FKind::CountAtLeast:
    case FKind::CountExactly:
    case FKind::CountInfinite: {
      if (!body_quantifier_free(f->children[0]))
        throw UnsupportedFragment("point evaluation supports one quantifier level");
      auto inner = point;
      inner.erase(f->var);
      YSet ys = formula_y_solutions(f->children[0], f->var, o, inner);
      switch (f->kind) {
        case FKind::Exists:
          return ys.cofinite || !ys.values.empty();
        case FKind::CountAtLeast:
          return ys.cofinite || static_cast<long>(ys.values.size()) >= f->count;
        case FKind::CountExactly:
          return !ys.cofinite && static_cast<long>(ys.values.size()) == f->count;
        case FKind::CountInfinite:
          return ys.cofinite;
        default:
          break;
      }
      return false;
    }
  }
  return false;
}

std::string EquivalenceReport::to_json() const {
  nlohmann::ordered_json j;
  j["points_checked"] = points_checked;
  j["disagreements"] = disagreements;
  j["witnesses"] = witnesses;
  j["agreed"] = agreed();
  return j.dump(2);
}

EquivalenceReport check_equivalence_sampled(const FormulaPtr& f, const FormulaPtr& g,
                                            ConstructibleCurveOracle& oracle, size_t n,
                                            std::uint64_t seed) {
  std::set<std::string> fv = free_vars(f);
  for (const auto& v : free_vars(g)) fv.insert(v);
  std::vector<std::string> vars(fv.begin(), fv.end());
  EquivalenceReport report;
  SeededRng rng(seed);

  std::vector<std::map<std::string, AlgebraicNumber>> points;

  // Pool 1: points sampled on every curve symbol occurring in either formula,
  // spread over the variable tuple in argument order.
  std::set<std::string> symbols;
  std::function<void(const FormulaPtr&)> collect = [&](const FormulaPtr& h) {
    if (h->kind == FKind::Atom) symbols.insert(h->symbol);
    for (const auto& c : h->children) collect(c);
  };
  collect(f);
  collect(g);
  size_t per_symbol = symbols.empty() ? 0 : std::max<size_t>(4, n / (8 * symbols.size()));
  std::function<FormulaPtr(const FormulaPtr&, const std::string&)> find_atom =
      [&](const FormulaPtr& h, const std::string& sym) -> FormulaPtr {
    if (h->kind == FKind::Atom && h->symbol == sym) return h;
    for (const auto& c : h->children) {
      FormulaPtr r = find_atom(c, sym);
      if (r) return r;
    }
    return nullptr;
  };
  for (const auto& sym : symbols) {
    FormulaPtr atom = find_atom(f, sym);
    if (!atom) atom = find_atom(g, sym);
    auto curve_pts = oracle.sample_symbol_points(sym, per_symbol, rng.next());
    for (const auto& cp : curve_pts) {
      std::map<std::string, AlgebraicNumber> pt;
      // Bind the atom's variables (bound ones are simply unused downstream);
      // fill remaining free variables with random rationals.
      for (size_t i = 0; i < atom->args.size(); ++i) pt.emplace(atom->args[i], cp[i]);
      for (const auto& v : vars)
        if (!pt.count(v)) pt.emplace(v, AlgebraicNumber(rng.next_rational(20, 8)));
      points.push_back(std::move(pt));
    }
  }

  // Pool 2: every registered constant, placed at each variable position.
  for (size_t id : oracle.constant_handles()) {
    for (const auto& v : vars) {
      std::map<std::string, AlgebraicNumber> pt;
      pt.emplace(v, oracle.constant(id));
      for (const auto& w : vars)
        if (w != v) pt.emplace(w, AlgebraicNumber(rng.next_rational(20, 8)));
      points.push_back(std::move(pt));
      if (points.size() > 4 * n) break;
    }
    if (points.size() > 4 * n) break;
  }

  // Pool 3: random rational tuples up to the requested total.
  while (points.size() < n) {
    std::map<std::string, AlgebraicNumber> pt;
    for (const auto& v : vars) pt.emplace(v, AlgebraicNumber(rng.next_rational(24, 6)));
    points.push_back(std::move(pt));
  }

  for (const auto& pt : points) {
    bool a = eval_formula(f, oracle, pt);
    bool b = eval_formula(g, oracle, pt);
    ++report.points_checked;
    if (a != b) {
      ++report.disagreements;
      if (report.witnesses.size() < 8) {
        std::string w;
        for (const auto& [v, val] : pt) w += v + " = " + val.to_string() + "; ";
        w += a ? "first true, second false" : "first false, second true";
        report.witnesses.push_back(w);
      }
    }
  }
  return report;
}

}  // namespace cqe
