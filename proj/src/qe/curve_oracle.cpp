#include "qe/curve_oracle.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cqe {

// ---------------------------------------------------------------------------
// YSet algebra
// ---------------------------------------------------------------------------

namespace {

std::vector<AlgebraicNumber> values_union(const std::vector<AlgebraicNumber>& a,
                                          const std::vector<AlgebraicNumber>& b) {
  std::vector<AlgebraicNumber> out = a;
  for (const auto& v : b) {
    bool dup = false;
    for (const auto& w : out)
      if (alg_equal(v, w)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(v);
  }
  return out;
}

std::vector<AlgebraicNumber> values_intersect(const std::vector<AlgebraicNumber>& a,
                                              const std::vector<AlgebraicNumber>& b) {
  std::vector<AlgebraicNumber> out;
  for (const auto& v : a)
    for (const auto& w : b)
      if (alg_equal(v, w)) {
        out.push_back(v);
        break;
      }
  return out;
}

std::vector<AlgebraicNumber> values_minus(const std::vector<AlgebraicNumber>& a,
                                          const std::vector<AlgebraicNumber>& b) {
  std::vector<AlgebraicNumber> out;
  for (const auto& v : a) {
    bool hit = false;
    for (const auto& w : b)
      if (alg_equal(v, w)) {
        hit = true;
        break;
      }
    if (!hit) out.push_back(v);
  }
  return out;
}

}  // namespace

YSet yset_intersect(const YSet& a, const YSet& b) {
  if (a.cofinite && b.cofinite) return {true, values_union(a.values, b.values)};
  if (a.cofinite) return {false, values_minus(b.values, a.values)};
  if (b.cofinite) return {false, values_minus(a.values, b.values)};
  return {false, values_intersect(a.values, b.values)};
}

YSet yset_union(const YSet& a, const YSet& b) {
  if (a.cofinite && b.cofinite) return {true, values_intersect(a.values, b.values)};
  if (a.cofinite) return {true, values_minus(a.values, b.values)};
  if (b.cofinite) return {true, values_minus(b.values, a.values)};
  return {false, values_union(a.values, b.values)};
}

YSet yset_complement(const YSet& a) { return {!a.cofinite, a.values}; }

YSet yset_remove(const YSet& a, const std::vector<AlgebraicNumber>& removed) {
  if (a.cofinite) return {true, values_union(a.values, removed)};
  return {false, values_minus(a.values, removed)};
}

bool yset_contains(const YSet& a, const AlgebraicNumber& v) {
  for (const auto& w : a.values)
    if (alg_equal(v, w)) return !a.cofinite;
  return a.cofinite;
}

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

ConstructibleCurveOracle::ConstructibleCurveOracle(std::uint64_t seed, long precision_bits)
    : seed_(seed), prec_(precision_bits) {}

size_t ConstructibleCurveOracle::declare(const std::string& name, CurveSet backing) {
  if (backing.arity > 6)
    throw std::invalid_argument("declared symbols are capped at arity 6: " + name);
  for (const auto& pc : backing.planes)
    if (pc.p.total_degree() > 16)
      throw std::invalid_argument("declared curve polynomials are capped at total degree 16: " +
                                  name);
  Backing b;
  b.geom = std::move(backing);
  backings_.push_back(std::move(b));
  sig_.add_symbol(name, backings_.back().geom.arity, static_cast<int>(backings_.size() - 1));
  return backings_.size() - 1;
}

size_t ConstructibleCurveOracle::register_backing(const std::string& base, Backing b) {
  std::string name = fresh_name(base);
  int arity = b.kind == BackingKind::Count ? static_cast<int>(b.xprime.size())
              : b.kind == BackingKind::Conjunction
                  ? static_cast<int>(b.xprime.size()) + 1
                  : b.geom.arity;
  backings_.push_back(std::move(b));
  sig_.add_symbol(name, arity, static_cast<int>(backings_.size() - 1));
  return backings_.size() - 1;
}

std::string ConstructibleCurveOracle::fresh_name(const std::string& base) {
  while (true) {
    std::string name = base + std::to_string(fresh_counter_++);
    if (!sig_.find(name)) return name;
  }
}

void ConstructibleCurveOracle::load_signature_json(const std::string& json_text) {
  auto j = nlohmann::ordered_json::parse(json_text);
  if (j.contains("constants")) {
    for (const auto& cj : j.at("constants")) {
      std::string name = cj.at("name").get<std::string>();
      std::string value = cj.at("value").dump();
      // Reuse the curve-point parser for the value forms.
      CurveSet pts = CurveSet::parse_json("{\"kind\":\"points\",\"arity\":1,\"points\":[[" +
                                          value + "]]}");
      sig_.add_constant(name, pts.extra.points.at(0).at(0));
    }
  }
  for (const auto& sj : j.at("symbols")) {
    std::string name = sj.at("name").get<std::string>();
    int arity = sj.at("arity").get<int>();
    CurveSet c = CurveSet::parse_json(sj.at("curve").dump());
    if (c.arity != arity)
      throw std::invalid_argument("symbol " + name + ": declared arity differs from its curve");
    declare(name, std::move(c));
  }
}

size_t ConstructibleCurveOracle::intern_algebraic(const AlgebraicNumber& value) {
  if (value.is_rational()) return sig_.intern_rational(value.rational_value());
  for (size_t id = 0; id < sig_.constant_count(); ++id)
    if (alg_equal(sig_.constant(id), value)) return id;
  return sig_.add_constant(fresh_name("q"), value);
}

bool ConstructibleCurveOracle::constants_equal(size_t a, size_t b) {
  if (a == b) return true;
  return alg_equal(sig_.constant(a), sig_.constant(b));
}

const CurveSet& ConstructibleCurveOracle::geometry_of(const std::string& symbol) const {
  const auto* info = sig_.find(symbol);
  if (!info) throw std::invalid_argument("unknown symbol: " + symbol);
  return backings_[static_cast<size_t>(info->backing_id)].geom;
}

const ConstructibleCurveOracle::Backing& ConstructibleCurveOracle::backing_of_atom(
    const FormulaPtr& atom) const {
  const auto* info = sig_.find(atom->symbol);
  if (!info) throw std::invalid_argument("unknown symbol: " + atom->symbol);
  return backings_[static_cast<size_t>(info->backing_id)];
}

std::vector<size_t> ConstructibleCurveOracle::constant_handles() const {
  std::vector<size_t> out(sig_.constant_count());
  for (size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

MultiPoly ConstructibleCurveOracle::plane_poly_in_vars(const FormulaPtr& atom) const {
  const Backing& b = backing_of_atom(atom);
  const MultiPoly& p = b.geom.planes.at(0).p;
  MultiPoly q = p.rename_var(pos_var(0), "_a1").rename_var(pos_var(1), "_a2");
  return q.rename_var("_a1", atom->args[0]).rename_var("_a2", atom->args[1]);
}

// ---------------------------------------------------------------------------
// Atom expansion
// ---------------------------------------------------------------------------

namespace {

enum class PrimitiveKind { True, Plane, Cofinite, Points, Filtered, Composite };

}  // namespace

FormulaPtr ConstructibleCurveOracle::expand_atoms(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Equals:
      return f;
    case FKind::Not:
      return f_not(expand_atoms(f->children[0]));
    case FKind::And:
    case FKind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& c : f->children) kids.push_back(expand_atoms(c));
      return f->kind == FKind::And ? f_and(std::move(kids)) : f_or(std::move(kids));
    }
    case FKind::Exists:
    case FKind::CountAtLeast:
    case FKind::CountExactly:
    case FKind::CountInfinite: {
      auto g = std::make_shared<Formula>(*f);
      g->children = {expand_atoms(f->children[0])};
      return g;
    }
    case FKind::Atom:
      break;
  }
  // Copy: registrations below may reallocate the backing table.
  const BackingKind kind = backing_of_atom(f).kind;
  if (kind != BackingKind::Plain) return f;
  const CurveSet g = backing_of_atom(f).geom;
  bool has_minus = !g.minus.points.empty();
  // Primitive shapes stay atomic.
  if (g.full && !has_minus && g.planes.empty() && g.link_components.empty() &&
      g.extra.points.empty())
    return f_true();
  if (g.full && g.planes.empty() && g.link_components.empty() && g.extra.points.empty())
    return f;  // cofinite
  if (!g.full && g.planes.size() == 1 && g.link_components.empty() && g.extra.points.empty() &&
      !has_minus)
    return f;  // single plane curve
  if (!g.full && g.planes.empty() && g.link_components.empty() && !has_minus)
    return f;  // finite point set (possibly empty)

  // Composite: boolean skeleton over registered primitive parts.
  const std::string key = "expand|" + f->symbol;
  std::vector<FormulaPtr> parts;
  for (size_t i = 0; i < g.planes.size(); ++i) {
    std::string pkey = key + "|plane|" + std::to_string(i);
    auto it = derived_names_.find(pkey);
    std::string name;
    if (it != derived_names_.end()) {
      name = it->second;
    } else {
      Backing nb;
      nb.geom = CurveSet::from_plane(g.planes[i].p);
      register_backing(f->symbol + "_p", std::move(nb));
      name = sig_.symbols().back().name;
      derived_names_[pkey] = name;
    }
    parts.push_back(f_atom(name, f->args));
  }
  for (size_t i = 0; i < g.link_components.size(); ++i) {
    const LinkComponent& lc = g.link_components[i];
    std::vector<FormulaPtr> conj;
    for (const auto& [j, link] : lc.links) {
      std::string lkey = key + "|link|" + std::to_string(i) + "|" + std::to_string(j);
      auto it = derived_names_.find(lkey);
      std::string name;
      if (it != derived_names_.end()) {
        name = it->second;
      } else {
        MultiPoly p =
            link.rename_var(pos_var(static_cast<size_t>(lc.param_index)), "_a1")
                .rename_var(pos_var(static_cast<size_t>(j)), "_a2");
        p = p.rename_var("_a1", pos_var(0)).rename_var("_a2", pos_var(1));
        Backing nb;
        nb.geom = CurveSet::from_plane(p);
        register_backing(f->symbol + "_l", std::move(nb));
        name = sig_.symbols().back().name;
        derived_names_[lkey] = name;
      }
      conj.push_back(f_atom(name, {f->args[static_cast<size_t>(lc.param_index)],
                                   f->args[static_cast<size_t>(j)]}));
    }
    if (!lc.excluded_params.empty()) {
      std::string ekey = key + "|linkexcl|" + std::to_string(i);
      auto it = derived_names_.find(ekey);
      std::string name;
      if (it != derived_names_.end()) {
        name = it->second;
      } else {
        Backing nb;
        nb.geom = CurveSet::full_line();
        for (const auto& v : lc.excluded_params) nb.geom.minus.add({v});
        register_backing(f->symbol + "_d", std::move(nb));
        name = sig_.symbols().back().name;
        derived_names_[ekey] = name;
      }
      conj.push_back(f_atom(name, {f->args[static_cast<size_t>(lc.param_index)]}));
    }
    parts.push_back(conj.size() == 1 ? conj[0] : f_and(std::move(conj)));
  }
  for (const auto& pt : g.extra.points) {
    std::vector<FormulaPtr> eqs;
    for (size_t c = 0; c < pt.size(); ++c)
      eqs.push_back(f_equals(f->args[c], intern_algebraic(pt[c])));
    parts.push_back(eqs.size() == 1 ? eqs[0] : f_and(std::move(eqs)));
  }
  FormulaPtr body;
  if (g.full) {
    body = f_true();
  } else if (parts.empty()) {
    body = f_false();
  } else {
    body = parts.size() == 1 ? parts[0] : f_or(std::move(parts));
  }
  if (has_minus) {
    std::string mkey = key + "|minus";
    auto it = derived_names_.find(mkey);
    std::string name;
    if (it != derived_names_.end()) {
      name = it->second;
    } else {
      Backing nb;
      nb.geom = CurveSet::empty_set(g.arity);
      for (const auto& pt : g.minus.points) nb.geom.extra.add(pt);
      register_backing(f->symbol + "_m", std::move(nb));
      name = sig_.symbols().back().name;
      derived_names_[mkey] = name;
    }
    body = f_and({body, f_not(f_atom(name, f->args))});
  }
  return normalize(body);
}

// ---------------------------------------------------------------------------
// Solution sets and evaluation
// ---------------------------------------------------------------------------

YSet ConstructibleCurveOracle::component_solutions(
    const CurveSet& geom, const FormulaPtr& atom, size_t solve_pos,
    const std::map<std::string, AlgebraicNumber>& point) {
  YSet out = YSet::none();
  const std::string yv = atom->args[solve_pos];
  if (geom.full) out = YSet::all();
  for (const auto& pc : geom.planes) {
    size_t other = solve_pos == 0 ? 1 : 0;
    MultiPoly p = pc.p.rename_var(pos_var(0), "_a1").rename_var(pos_var(1), "_a2");
    std::string sv = solve_pos == 0 ? "_a1" : "_a2";
    std::string ov = solve_pos == 0 ? "_a2" : "_a1";
    SolveResult r = solve_bivariate_at(p, ov, point.at(atom->args[other]), sv, prec_);
    if (std::holds_alternative<AllSolutions>(r)) {
      out = YSet::all();
    } else {
      out = yset_union(out, YSet{false, std::get<std::vector<AlgebraicNumber>>(r)});
    }
    if (out.cofinite && out.values.empty()) break;
  }
  for (const auto& lc : geom.link_components) {
    size_t k = static_cast<size_t>(lc.param_index);
    if (solve_pos == k) {
      YSet sols = YSet::all();
      for (const auto& [j, link] : lc.links) {
        MultiPoly p = link.rename_var(pos_var(k), "_a1").rename_var(pos_var(static_cast<size_t>(j)), "_a2");
        SolveResult r =
            solve_bivariate_at(p, "_a2", point.at(atom->args[static_cast<size_t>(j)]), "_a1", prec_);
        if (std::holds_alternative<AllSolutions>(r)) continue;
        sols = yset_intersect(sols, YSet{false, std::get<std::vector<AlgebraicNumber>>(r)});
      }
      sols = yset_remove(sols, lc.excluded_params);
      out = yset_union(out, sols);
    } else {
      const AlgebraicNumber& pv = point.at(atom->args[k]);
      bool excluded = false;
      for (const auto& ex : lc.excluded_params)
        if (alg_equal(pv, ex)) excluded = true;
      if (excluded) continue;
      YSet sols = YSet::all();
      bool consistent = true;
      for (const auto& [j, link] : lc.links) {
        MultiPoly p =
            link.rename_var(pos_var(k), "_a1").rename_var(pos_var(static_cast<size_t>(j)), "_a2");
        if (static_cast<size_t>(j) == solve_pos) {
          SolveResult r = solve_bivariate_at(p, "_a1", pv, "_a2", prec_);
          if (std::holds_alternative<AllSolutions>(r)) continue;
          sols = yset_intersect(sols, YSet{false, std::get<std::vector<AlgebraicNumber>>(r)});
        } else {
          if (!bivariate_zero_at(p, "_a1", pv, "_a2", point.at(atom->args[static_cast<size_t>(j)]))) {
            consistent = false;
            break;
          }
        }
      }
      if (consistent) out = yset_union(out, sols);
    }
  }
  for (const auto& pt : geom.extra.points) {
    bool match = true;
    for (size_t c = 0; c < pt.size() && match; ++c) {
      if (c == solve_pos) continue;
      match = alg_equal(pt[c], point.at(atom->args[c]));
    }
    if (match) out = yset_union(out, YSet{false, {pt[solve_pos]}});
  }
  if (!geom.minus.points.empty()) {
    std::vector<AlgebraicNumber> removed;
    for (const auto& pt : geom.minus.points) {
      bool match = true;
      for (size_t c = 0; c < pt.size() && match; ++c) {
        if (c == solve_pos) continue;
        match = alg_equal(pt[c], point.at(atom->args[c]));
      }
      if (match) removed.push_back(pt[solve_pos]);
    }
    out = yset_remove(out, removed);
  }
  return out;
}

YSet ConstructibleCurveOracle::atom_y_solutions(const FormulaPtr& atom, const std::string& y,
                                                const std::map<std::string, AlgebraicNumber>& point) {
  if (atom->kind == FKind::Equals) {
    if (atom->var == y) return YSet{false, {sig_.constant(atom->const_id)}};
    return alg_equal(point.at(atom->var), sig_.constant(atom->const_id)) ? YSet::all()
                                                                         : YSet::none();
  }
  if (atom->kind == FKind::True) return YSet::all();
  if (atom->kind == FKind::False) return YSet::none();
  if (atom->kind != FKind::Atom) throw std::invalid_argument("atom_y_solutions expects an atom");
  auto pos_it = std::find(atom->args.begin(), atom->args.end(), y);
  if (pos_it == atom->args.end())
    return eval_atom(atom, point) ? YSet::all() : YSet::none();
  size_t solve_pos = static_cast<size_t>(pos_it - atom->args.begin());
  const Backing& b = backing_of_atom(atom);
  if (b.kind == BackingKind::Plain) return component_solutions(b.geom, atom, solve_pos, point);

  if (b.kind == BackingKind::Conjunction) {
    // Internal variable bound to the solved argument position.
    std::vector<std::string> names = b.xprime;
    names.push_back(b.yvar);
    const std::string& solve_name = names.at(solve_pos);
    std::map<std::string, AlgebraicNumber> inner;
    for (size_t i = 0; i < names.size(); ++i)
      if (i != solve_pos) inner.emplace(names[i], point.at(atom->args[i]));
    YSet out = YSet::all();
    for (const auto& c : b.conj) {
      std::set<std::string> fv = free_vars(c);
      if (fv.count(solve_name)) {
        out = yset_intersect(out, atom_y_solutions(c, solve_name, inner));
      } else {
        std::map<std::string, AlgebraicNumber> sub;
        for (const auto& v : fv) sub.emplace(v, inner.at(v));
        if (!eval_atom(c, sub)) return YSet::none();
      }
      if (!out.cofinite && out.values.empty()) return out;
    }
    std::vector<AlgebraicNumber> excl;
    for (size_t id : b.excluded_y) excl.push_back(sig_.constant(id));
    if (solve_name == b.yvar) {
      out = yset_remove(out, excl);
    } else {
      for (const auto& e : excl)
        if (alg_equal(inner.at(b.yvar), e)) return YSet::none();
    }
    return out;
  }

  // Count backing: enumerate candidates from the superset geometry, then
  // decide each by the exact counting semantics.
  YSet candidates = component_solutions(b.geom, atom, solve_pos, point);
  if (candidates.cofinite)
    throw UnsupportedFragment(
        "solution set of a derived counting predicate is not finitely enumerable here");
  YSet out = YSet::none();
  for (const auto& v : candidates.values) {
    auto pt2 = point;
    pt2.insert_or_assign(y, v);
    if (eval_atom(atom, pt2)) out.values.push_back(v);
  }
  return out;
}

bool ConstructibleCurveOracle::eval_atom(const FormulaPtr& atom,
                                         const std::map<std::string, AlgebraicNumber>& point) {
  if (atom->kind == FKind::Equals)
    return alg_equal(point.at(atom->var), sig_.constant(atom->const_id));
  if (atom->kind == FKind::True) return true;
  if (atom->kind == FKind::False) return false;
  if (atom->kind != FKind::Atom) throw std::invalid_argument("eval_atom expects an atom");
  const Backing& b = backing_of_atom(atom);
  if (b.kind == BackingKind::Plain) {
    Point pt;
    pt.reserve(atom->args.size());
    for (const auto& a : atom->args) pt.push_back(point.at(a));
    return b.geom.membership(pt);
  }
  if (b.kind == BackingKind::Conjunction) {
    std::vector<std::string> names = b.xprime;
    names.push_back(b.yvar);
    std::map<std::string, AlgebraicNumber> inner;
    for (size_t i = 0; i < names.size(); ++i) inner.emplace(names[i], point.at(atom->args[i]));
    for (size_t id : b.excluded_y)
      if (alg_equal(inner.at(b.yvar), sig_.constant(id))) return false;
    for (const auto& c : b.conj) {
      std::map<std::string, AlgebraicNumber> sub;
      for (const auto& v : free_vars(c)) sub.emplace(v, inner.at(v));
      if (!eval_atom(c, sub)) return false;
    }
    return true;
  }
  // Count
  std::map<std::string, AlgebraicNumber> inner;
  for (size_t i = 0; i < b.xprime.size(); ++i) inner.emplace(b.xprime[i], point.at(atom->args[i]));
  YSet ys = YSet::all();
  for (const auto& c : b.conj) {
    std::set<std::string> fv = free_vars(c);
    if (fv.count(b.yvar)) {
      ys = yset_intersect(ys, atom_y_solutions(c, b.yvar, inner));
    } else {
      std::map<std::string, AlgebraicNumber> sub;
      for (const auto& v : fv) sub.emplace(v, inner.at(v));
      if (!eval_atom(c, sub)) return false;
    }
    if (!ys.cofinite && ys.values.empty()) break;
  }
  std::vector<AlgebraicNumber> excl;
  for (size_t id : b.excluded_y) excl.push_back(sig_.constant(id));
  ys = yset_remove(ys, excl);
  if (ys.cofinite) return true;
  return static_cast<long>(ys.values.size()) >= b.threshold;
}

// ---------------------------------------------------------------------------
// Grouping
// ---------------------------------------------------------------------------

std::string ConstructibleCurveOracle::conjunction_key(const std::vector<FormulaPtr>& conjuncts,
                                                      const std::string& y) const {
  std::vector<std::string> printed;
  for (const auto& c : conjuncts) printed.push_back(print_formula(c, sig_));
  std::sort(printed.begin(), printed.end());
  std::string key = y;
  for (const auto& s : printed) key += "|" + s;
  return key;
}

GroupedConjunction ConstructibleCurveOracle::group(const std::vector<FormulaPtr>& conjuncts,
                                                   const std::string& y) {
  std::string key = conjunction_key(conjuncts, y);
  auto it = group_cache_.find(key);
  if (it != group_cache_.end()) return it->second;
  GroupedConjunction g = group_uncached(conjuncts, y);
  group_cache_[key] = g;
  return g;
}

GroupedConjunction ConstructibleCurveOracle::group_uncached(
    const std::vector<FormulaPtr>& conjuncts, const std::string& y) {
  if (conjuncts.empty()) throw std::invalid_argument("group needs a nonempty conjunction");
  GroupedConjunction out;
  {
    std::set<std::string> fv;
    for (const auto& c : conjuncts)
      for (const auto& v : free_vars(c)) fv.insert(v);
    fv.erase(y);
    out.xprime.assign(fv.begin(), fv.end());
  }

  // Classification.
  std::optional<std::vector<AlgebraicNumber>> finite_candidates;
  auto offer_candidates = [&](std::vector<AlgebraicNumber> vals) {
    if (!finite_candidates || vals.size() < finite_candidates->size())
      finite_candidates = std::move(vals);
  };
  struct Bucket {
    std::vector<MultiPoly> polys;  // in (xvar, y) actual names
  };
  std::map<std::string, Bucket> buckets;
  std::vector<AlgebraicNumber> excluded_values;
  std::vector<AlgebraicNumber> q_candidates;

  auto add_q = [&](const AlgebraicNumber& v) {
    for (const auto& w : q_candidates)
      if (alg_equal(v, w)) return;
    q_candidates.push_back(v);
  };

  for (const auto& c : conjuncts) {
    if (!free_vars(c).count(y))
      throw std::invalid_argument("group: conjunct does not mention the bound variable");
    if (c->kind == FKind::Equals) {
      offer_candidates({sig_.constant(c->const_id)});
      continue;
    }
    if (c->kind != FKind::Atom) throw std::invalid_argument("group expects atoms");
    const Backing& b = backing_of_atom(c);
    if (b.kind != BackingKind::Plain)
      throw UnsupportedFragment("grouping over derived counting predicates bound to " + y);
    const CurveSet& geom = b.geom;
    bool is_cofinite = geom.full && geom.planes.empty() && geom.link_components.empty() &&
                       geom.extra.points.empty();
    bool is_points = !geom.full && geom.planes.empty() && geom.link_components.empty() &&
                     geom.minus.points.empty();
    bool is_plane = !geom.full && geom.planes.size() == 1 && geom.link_components.empty() &&
                    geom.extra.points.empty() && geom.minus.points.empty();
    if (is_cofinite) {
      for (const auto& pt : geom.minus.points) excluded_values.push_back(pt.at(0));
      continue;
    }
    if (is_points) {
      size_t ypos = static_cast<size_t>(
          std::find(c->args.begin(), c->args.end(), y) - c->args.begin());
      std::vector<AlgebraicNumber> vals;
      for (const auto& pt : geom.extra.points) {
        bool dup = false;
        for (const auto& v : vals)
          if (alg_equal(v, pt[ypos])) dup = true;
        if (!dup) vals.push_back(pt[ypos]);
      }
      offer_candidates(std::move(vals));
      continue;
    }
    if (is_plane) {
      MultiPoly p = plane_poly_in_vars(c);
      std::string xv = c->args[0] == y ? c->args[1] : c->args[0];
      buckets[xv].polys.push_back(p);
      continue;
    }
    throw std::logic_error("group: atom not expanded to a primitive backing: " + c->symbol);
  }

  auto build_residuals = [&](const std::vector<AlgebraicNumber>& qs) {
    for (const auto& qv : qs) {
      bool excluded = false;
      for (const auto& e : excluded_values)
        if (alg_equal(qv, e)) excluded = true;
      if (excluded) continue;
      size_t handle = intern_algebraic(qv);
      std::vector<FormulaPtr> parts;
      for (const auto& c : conjuncts) {
        FormulaPtr sec = free_vars(c).count(y)
                             ? (c->kind == FKind::Equals
                                    ? (constants_equal(c->const_id, handle) ? f_true() : f_false())
                                    : register_section(c, y, handle))
                             : c;
        parts.push_back(sec);
      }
      FormulaPtr phi = normalize(f_and(std::move(parts)));
      if (phi->kind == FKind::False) continue;
      out.exceptional.push_back(handle);
      out.residuals.push_back(phi);
    }
  };

  if (finite_candidates) {
    build_residuals(*finite_candidates);
    return out;  // no curve part: y ranges over the exceptional constants
  }

  // Curve mode.
  bool empty_generic = buckets.empty();
  std::map<std::string, MultiPoly> folded;
  for (auto& [xv, bucket] : buckets) {
    for (const auto& p : bucket.polys) {
      MultiPoly content = content_in(p, xv);  // polynomial in y
      if (!content.is_constant()) {
        UPoly cu = squarefree_part(content.to_upoly(y));
        for (const auto& ball : isolate_roots(cu, prec_)) add_q(AlgebraicNumber(cu, ball));
      }
    }
    MultiPoly h = bucket.polys[0];
    for (size_t i = 1; i < bucket.polys.size(); ++i) {
      GcdJump gj = gcd_with_jump(h, bucket.polys[i], xv);
      if (!gj.jump.is_constant() && gj.jump.degree(y) >= 1) {
        UPoly ju = squarefree_part(gj.jump.to_upoly(y));
        for (const auto& ball : isolate_roots(ju, prec_)) add_q(AlgebraicNumber(ju, ball));
      }
      h = gj.h;
    }
    if (h.degree(xv) < 1) {
      empty_generic = true;
      continue;
    }
    MultiPoly hc = content_in(h, xv);
    if (!hc.is_constant()) {
      UPoly cu = squarefree_part(hc.to_upoly(y));
      for (const auto& ball : isolate_roots(cu, prec_)) add_q(AlgebraicNumber(cu, ball));
    }
    folded.emplace(xv, h);
  }

  build_residuals(q_candidates);

  if (buckets.empty()) {
    // Only unary constraints on y: the conjunction is the co-finite set left
    // after the exclusions, itself a 1-curve.
    std::string key = "cofconj|" + conjunction_key(conjuncts, y);
    auto it = derived_names_.find(key);
    std::string name;
    if (it != derived_names_.end()) {
      name = it->second;
    } else {
      Backing nb;
      nb.geom = CurveSet::full_line();
      for (const auto& v : excluded_values) nb.geom.minus.add({v});
      register_backing("E", std::move(nb));
      name = sig_.symbols().back().name;
      derived_names_[key] = name;
    }
    out.e_atom = f_atom(name, {y});
    return out;
  }
  if (empty_generic) return out;

  // Register the grouped curve symbol E over (x', y).
  Backing eb;
  eb.kind = BackingKind::Conjunction;
  eb.conj = conjuncts;
  eb.xprime = out.xprime;
  eb.yvar = y;
  eb.excluded_y = out.exceptional;
  LinkComponent lc;
  lc.arity = static_cast<int>(out.xprime.size()) + 1;
  lc.param_index = static_cast<int>(out.xprime.size());
  for (size_t i = 0; i < out.xprime.size(); ++i) {
    auto itf = folded.find(out.xprime[i]);
    if (itf == folded.end()) continue;  // variable only constrained via other conjuncts
    MultiPoly link = itf->second.rename_var(out.xprime[i], "_a1").rename_var(y, "_a2");
    link = link.rename_var("_a1", pos_var(i)).rename_var("_a2", pos_var(out.xprime.size()));
    lc.links[static_cast<int>(i)] = link;
  }
  for (size_t id : out.exceptional) lc.excluded_params.push_back(sig_.constant(id));
  for (const auto& e : excluded_values) lc.excluded_params.push_back(e);
  eb.geom = CurveSet::empty_set(lc.arity);
  eb.geom.link_components.push_back(std::move(lc));
  register_backing("E", std::move(eb));
  std::vector<std::string> args = out.xprime;
  args.push_back(y);
  out.e_atom = f_atom(sig_.symbols().back().name, args);
  return out;
}

// ---------------------------------------------------------------------------
// Counting predicates
// ---------------------------------------------------------------------------

FormulaPtr ConstructibleCurveOracle::count_curve(const std::vector<FormulaPtr>& conjuncts,
                                                 const std::string& y, long e) {
  if (e <= 0) return f_true();
  std::string key = conjunction_key(conjuncts, y) + "|ge" + std::to_string(e);
  auto cached = count_cache_.find(key);
  if (cached != count_cache_.end()) return cached->second;
  FormulaPtr result = [&]() -> FormulaPtr {
    GroupedConjunction g = group(conjuncts, y);
    if (!g.e_atom) return f_false();
    const std::vector<size_t> excluded_handles = backing_of_atom(*g.e_atom).excluded_y;
    std::vector<AlgebraicNumber> excluded;
    for (size_t id : excluded_handles) excluded.push_back(sig_.constant(id));

    if (g.xprime.empty()) {
      YSet ys = YSet::all();
      for (const auto& c : conjuncts) ys = yset_intersect(ys, atom_y_solutions(c, y, {}));
      ys = yset_remove(ys, excluded);
      if (ys.cofinite) return f_true();
      return static_cast<long>(ys.values.size()) >= e ? f_true() : f_false();
    }

    // Gather the plane constraints (buckets) for fiber analysis.
    std::vector<SharedCurve> curves;
    std::vector<AlgebraicNumber> cofinite_excluded;
    for (const auto& c : conjuncts) {
      if (c->kind != FKind::Atom) continue;
      const Backing& b = backing_of_atom(c);
      const CurveSet& geom = b.geom;
      if (geom.full) {
        for (const auto& pt : geom.minus.points) cofinite_excluded.push_back(pt.at(0));
        continue;
      }
      MultiPoly p = plane_poly_in_vars(c);
      std::string xv = c->args[0] == y ? c->args[1] : c->args[0];
      curves.push_back({p, xv, y});
    }
    std::vector<AlgebraicNumber> all_excluded = excluded;
    for (const auto& v : cofinite_excluded) all_excluded.push_back(v);

    auto exact_count_at = [&](const AlgebraicNumber& xi,
                              const std::string& var) -> std::pair<bool, long> {
      std::map<std::string, AlgebraicNumber> pt{{var, xi}};
      YSet ys = YSet::all();
      for (const auto& c : conjuncts) ys = yset_intersect(ys, atom_y_solutions(c, y, pt));
      ys = yset_remove(ys, all_excluded);
      if (ys.cofinite) return {true, 0};
      return {false, static_cast<long>(ys.values.size())};
    };

    if (g.xprime.size() == 1) {
      const std::string& xv = g.xprime[0];
      GenericFiberData gfd = generic_fiber_data(curves, seed_ ^ 0x9e37u);
      long m = gfd.generic_count;
      std::vector<AlgebraicNumber> candidates = gfd.exceptional;
      auto add_candidate = [&](const AlgebraicNumber& v) {
        for (const auto& w : candidates)
          if (alg_equal(v, w)) return;
        candidates.push_back(v);
      };
      // Excluded fiber values: generically present ones lower the count;
      // the rest only matter over finitely many parameters.
      MultiPoly h = curves[0].p;
      for (size_t i = 1; i < curves.size(); ++i) h = gcd_with_jump(h, curves[i].p, y).h;
      MultiPoly hx = content_in(h, xv);  // in y: values present in every fiber
      for (const auto& ex : all_excluded) {
        bool generic_member =
            !hx.is_constant() && upoly_zero_at(hx.to_upoly(y), ex);
        if (generic_member) {
          m -= 1;
          continue;
        }
        // Parameters whose fiber happens to contain this excluded value.
        bool all_vanish = true;
        std::vector<AlgebraicNumber> xs;
        bool first = true;
        for (const auto& sc : curves) {
          MultiPoly p = sc.p.rename_var(sc.xvar, "_a1").rename_var(y, "_a2");
          SolveResult r = solve_bivariate_at(p, "_a2", ex, "_a1", prec_);
          if (std::holds_alternative<AllSolutions>(r)) continue;
          all_vanish = false;
          auto vals = std::get<std::vector<AlgebraicNumber>>(r);
          if (first) {
            xs = vals;
            first = false;
          } else {
            std::vector<AlgebraicNumber> keep;
            for (const auto& a : xs)
              for (const auto& v : vals)
                if (alg_equal(a, v)) {
                  keep.push_back(a);
                  break;
                }
            xs = keep;
          }
        }
        if (all_vanish) {
          m -= 1;  // the value sits in every fiber even though h misses it
          continue;
        }
        for (const auto& v : xs) add_candidate(v);
      }
      // Classify candidates exactly.
      std::vector<Point> good, bad;
      for (const auto& chi : candidates) {
        auto [inf, cnt] = exact_count_at(chi, xv);
        if (inf || cnt >= e)
          good.push_back({chi});
        else
          bad.push_back({chi});
      }
      Backing nb;
      if (m >= e) {
        nb.geom = CurveSet::full_line();
        for (const auto& pt : bad) nb.geom.minus.add(pt);
        if (nb.geom.minus.points.empty()) return f_true();
      } else {
        nb.geom = CurveSet::empty_set(1);
        for (const auto& pt : good) nb.geom.extra.add(pt);
        if (nb.geom.extra.points.empty()) return f_false();
      }
      register_backing("cnt", std::move(nb));
      return f_atom(sig_.symbols().back().name, {xv});
    }

    // Two or more free variables.
    long ub = uniform_bound(conjuncts, y);
    // Tuples with infinite fibers: every conjunct must vanish identically.
    std::vector<std::vector<AlgebraicNumber>> per_var_inf;
    bool inf_possible = true;
    for (const auto& xv : g.xprime) {
      std::optional<std::vector<AlgebraicNumber>> common;
      for (const auto& sc : curves) {
        if (sc.xvar != xv) continue;
        MultiPoly content = content_in(sc.p, y);  // in xvar
        std::vector<AlgebraicNumber> roots;
        if (!content.is_constant()) {
          UPoly cu = squarefree_part(content.to_upoly(xv));
          for (const auto& ball : isolate_roots(cu, prec_)) roots.emplace_back(cu, ball);
        }
        if (!common) {
          common = roots;
        } else {
          std::vector<AlgebraicNumber> keep;
          for (const auto& a : *common)
            for (const auto& r : roots)
              if (alg_equal(a, r)) {
                keep.push_back(a);
                break;
              }
          common = keep;
        }
      }
      if (!common || common->empty()) {
        inf_possible = false;
        break;
      }
      per_var_inf.push_back(*common);
    }
    std::vector<Point> inf_points;
    if (inf_possible && !cofinite_excluded.empty()) {
      // Removing finitely many values never makes an infinite fiber finite.
    }
    if (inf_possible) {
      std::vector<Point> acc{{}};
      for (const auto& vals : per_var_inf) {
        std::vector<Point> next;
        for (const auto& base : acc)
          for (const auto& v : vals) {
            Point p = base;
            p.push_back(v);
            next.push_back(p);
          }
        acc = next;
      }
      inf_points = acc;
    }
    if (e > ub) {
      if (inf_points.empty()) return f_false();
      std::vector<FormulaPtr> tuples;
      for (const auto& pt : inf_points) {
        std::vector<FormulaPtr> eqs;
        for (size_t i = 0; i < g.xprime.size(); ++i)
          eqs.push_back(f_equals(g.xprime[i], intern_algebraic(pt[i])));
        tuples.push_back(f_and(std::move(eqs)));
      }
      return normalize(f_or(std::move(tuples)));
    }
    CurveSet superset = eliminate_variable(curves, g.xprime);
    for (auto& pt : inf_points) superset.extra.add(pt);
    Backing nb;
    nb.kind = BackingKind::Count;
    nb.geom = std::move(superset);
    nb.conj = conjuncts;
    nb.xprime = g.xprime;
    nb.yvar = y;
    nb.excluded_y = excluded_handles;
    for (const auto& v : cofinite_excluded) nb.excluded_y.push_back(intern_algebraic(v));
    nb.threshold = e;
    register_backing("cnt", std::move(nb));
    return f_atom(sig_.symbols().back().name, g.xprime);
  }();
  count_cache_[key] = result;
  return result;
}

// ---------------------------------------------------------------------------
// Infinite loci and bounds
// ---------------------------------------------------------------------------

std::vector<std::vector<size_t>> ConstructibleCurveOracle::infinite_locus(const FormulaPtr& atom,
                                                                          const std::string& y) {
  if (atom->kind == FKind::Equals) return {};
  const Backing& b = backing_of_atom(atom);
  if (b.kind != BackingKind::Plain) {
    if (free_vars(atom).count(y))
      throw UnsupportedFragment("infinite locus of a derived predicate");
    return {};
  }
  const CurveSet& geom = b.geom;
  bool is_cofinite_or_full = geom.full;
  if (is_cofinite_or_full) return {{}};  // one unconditional (empty) tuple
  if (geom.planes.size() == 1 && geom.link_components.empty() && geom.extra.points.empty()) {
    std::vector<std::vector<size_t>> out;
    for (const auto& v : infinite_fiber_locus(plane_poly_in_vars(atom),
                                              atom->args[0] == y ? atom->args[1] : atom->args[0],
                                              y))
      out.push_back({intern_algebraic(v)});
    return out;
  }
  if (geom.planes.empty() && geom.link_components.empty()) return {};  // finite point set
  throw std::logic_error("infinite_locus: atom not expanded: " + atom->symbol);
}

AtomCountBounds ConstructibleCurveOracle::atom_count_bounds(const FormulaPtr& atom,
                                                            const std::string& y) {
  AtomCountBounds out;
  if (atom->kind == FKind::Equals) {
    out.finite_bound = 1;
    out.unconditional = 1;
    return out;
  }
  const Backing& b = backing_of_atom(atom);
  if (b.kind == BackingKind::Conjunction) {
    long max_fin = 0;
    std::optional<long> best_uncond;
    for (const auto& c : b.conj) {
      if (!free_vars(c).count(b.yvar)) continue;
      AtomCountBounds cb = atom_count_bounds(c, b.yvar);
      max_fin = std::max(max_fin, cb.finite_bound);
      if (cb.unconditional && (!best_uncond || *cb.unconditional < *best_uncond))
        best_uncond = cb.unconditional;
    }
    out.finite_bound = best_uncond ? std::min(*best_uncond, max_fin) : max_fin;
    out.unconditional = best_uncond;
    return out;
  }
  if (b.kind == BackingKind::Count) {
    if (free_vars(atom).count(y))
      throw UnsupportedFragment("count bounds of a derived counting predicate");
    out.finite_bound = 0;
    return out;
  }
  const CurveSet& geom = b.geom;
  if (geom.full) {
    out.finite_bound = 0;  // fibers are cofinite, never finite
    return out;
  }
  if (geom.planes.size() == 1 && geom.link_components.empty() && geom.extra.points.empty()) {
    size_t ypos = atom->args[0] == y ? 0 : 1;
    MultiPoly p = geom.planes[0].p;
    const std::string yv = pos_var(ypos);
    out.finite_bound = std::max(p.degree(yv), 0);
    if (content_in(p, yv).is_constant()) out.unconditional = out.finite_bound;
    return out;
  }
  // Finite point set.
  out.finite_bound = static_cast<long>(geom.extra.points.size());
  out.unconditional = out.finite_bound;
  return out;
}

long ConstructibleCurveOracle::uniform_bound(const std::vector<FormulaPtr>& conjuncts,
                                             const std::string& y) {
  if (conjuncts.empty()) throw std::invalid_argument("uniform_bound of an empty conjunction");
  std::optional<long> best_uncond;
  long max_fin = 0;
  for (const auto& c : conjuncts) {
    AtomCountBounds b = atom_count_bounds(c, y);
    if (b.unconditional && (!best_uncond || *b.unconditional < *best_uncond))
      best_uncond = b.unconditional;
    max_fin = std::max(max_fin, b.finite_bound);
  }
  return best_uncond ? std::min(*best_uncond, max_fin) : max_fin;
}

// ---------------------------------------------------------------------------
// Sections
// ---------------------------------------------------------------------------

FormulaPtr ConstructibleCurveOracle::register_section(const FormulaPtr& atom,
                                                      const std::string& var, size_t const_id) {
  if (atom->kind == FKind::Equals) {
    if (atom->var != var) return atom;
    return constants_equal(atom->const_id, const_id) ? f_true() : f_false();
  }
  std::vector<SectionArg> args;
  for (const auto& a : atom->args) {
    SectionArg sa;
    if (a == var)
      sa.const_id = const_id;
    else
      sa.var = a;
    args.push_back(sa);
  }
  return section_atom(atom->symbol, args);
}

FormulaPtr ConstructibleCurveOracle::section_atom(const std::string& symbol,
                                                  const std::vector<SectionArg>& args) {
  const auto* info = sig_.find(symbol);
  if (!info) throw std::invalid_argument("unknown symbol: " + symbol);
  const Backing& b = backings_[static_cast<size_t>(info->backing_id)];
  std::vector<size_t> free_pos;
  for (size_t i = 0; i < args.size(); ++i)
    if (args[i].var) free_pos.push_back(i);

  if (b.kind != BackingKind::Plain)
    throw UnsupportedFragment("section of a derived predicate: " + symbol);
  const CurveSet& geom = b.geom;

  // Fully pinned: a truth value.
  if (free_pos.empty()) {
    Point pt;
    for (const auto& a : args) pt.push_back(sig_.constant(a.const_id));
    return geom.membership(pt) ? f_true() : f_false();
  }

  bool is_plane = !geom.full && geom.planes.size() == 1 && geom.link_components.empty() &&
                  geom.extra.points.empty() && geom.minus.points.empty();
  bool is_points = !geom.full && geom.planes.empty() && geom.link_components.empty() &&
                   geom.minus.points.empty();
  bool is_cofinite_like = geom.full && geom.planes.empty() && geom.link_components.empty() &&
                          geom.extra.points.empty();

  if (is_plane && free_pos.size() == 1) {
    size_t fp = free_pos[0];
    size_t pp = fp == 0 ? 1 : 0;
    const MultiPoly& p = geom.planes[0].p;
    SolveResult r = solve_bivariate_at(p, pos_var(pp), sig_.constant(args[pp].const_id),
                                       pos_var(fp), prec_);
    const std::string& v = *args[fp].var;
    if (std::holds_alternative<AllSolutions>(r)) return f_true();
    const auto& vals = std::get<std::vector<AlgebraicNumber>>(r);
    if (vals.empty()) return f_false();
    std::vector<FormulaPtr> eqs;
    for (const auto& val : vals) eqs.push_back(f_equals(v, intern_algebraic(val)));
    return eqs.size() == 1 ? eqs[0] : f_or(std::move(eqs));
  }
  if (is_points) {
    std::vector<FormulaPtr> tuples;
    for (const auto& pt : geom.extra.points) {
      bool match = true;
      for (size_t i = 0; i < args.size() && match; ++i)
        if (!args[i].var) match = alg_equal(pt[i], sig_.constant(args[i].const_id));
      if (!match) continue;
      std::vector<FormulaPtr> eqs;
      for (size_t i : free_pos) eqs.push_back(f_equals(*args[i].var, intern_algebraic(pt[i])));
      tuples.push_back(eqs.size() == 1 ? eqs[0] : f_and(std::move(eqs)));
    }
    if (tuples.empty()) return f_false();
    return tuples.size() == 1 ? tuples[0] : f_or(std::move(tuples));
  }
  if (is_cofinite_like) {
    // Unary; pinning it would have hit the fully-pinned path.
    throw std::logic_error("section of a unary symbol with a free slot");
  }
  // Composite backing: expand and push the pins through.
  FormulaPtr expanded = expand_atoms(f_atom(symbol, [&] {
    std::vector<std::string> names;
    for (size_t i = 0; i < args.size(); ++i)
      names.push_back(args[i].var ? *args[i].var : "_pin" + std::to_string(i));
    return names;
  }()));
  FormulaPtr cur = expanded;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i].var) continue;
    if (!free_vars(cur).count("_pin" + std::to_string(i))) continue;
    cur = substitute_constant(cur, "_pin" + std::to_string(i), args[i].const_id, *this);
  }
  return normalize(cur);
}

FormulaPtr ConstructibleCurveOracle::complement_section(const FormulaPtr& atom,
                                                        const std::string& y,
                                                        const std::map<std::string, size_t>& pinned) {
  std::map<std::string, AlgebraicNumber> pt;
  for (const auto& [v, id] : pinned) pt.emplace(v, sig_.constant(id));
  YSet ys = atom_y_solutions(atom, y, pt);
  if (ys.cofinite) {
    if (ys.values.empty()) return f_false();  // complement of everything
    std::vector<FormulaPtr> eqs;
    for (const auto& v : ys.values) eqs.push_back(f_equals(y, intern_algebraic(v)));
    return eqs.size() == 1 ? eqs[0] : f_or(std::move(eqs));
  }
  if (ys.values.empty()) return f_true();
  std::string key = "compl|" + print_formula(atom, sig_) + "|" + y;
  for (const auto& [v, id] : pinned) key += "|" + v + "=" + std::to_string(id);
  auto it = derived_names_.find(key);
  std::string name;
  if (it != derived_names_.end()) {
    name = it->second;
  } else {
    Backing nb;
    nb.geom = CurveSet::full_line();
    for (const auto& v : ys.values) nb.geom.minus.add({v});
    register_backing("D", std::move(nb));
    name = sig_.symbols().back().name;
    derived_names_[key] = name;
  }
  return f_atom(name, {y});
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

std::vector<Point> ConstructibleCurveOracle::sample_symbol_points(const std::string& symbol,
                                                                  size_t count,
                                                                  std::uint64_t seed) {
  const auto* info = sig_.find(symbol);
  if (!info) throw std::invalid_argument("unknown symbol: " + symbol);
  const Backing& b = backings_[static_cast<size_t>(info->backing_id)];
  std::vector<Point> raw;
  try {
    raw = b.geom.sample_points(count * (b.kind == BackingKind::Plain ? 1 : 3), seed);
  } catch (const std::runtime_error&) {
    return {};
  }
  if (b.kind == BackingKind::Plain) return raw;
  // Filter through the exact semantics.
  std::vector<Point> out;
  std::vector<std::string> names =
      b.kind == BackingKind::Count
          ? b.xprime
          : [&] {
              auto n = b.xprime;
              n.push_back(b.yvar);
              return n;
            }();
  FormulaPtr self = f_atom(symbol, names);
  for (const auto& pt : raw) {
    std::map<std::string, AlgebraicNumber> m;
    for (size_t i = 0; i < names.size(); ++i) m.emplace(names[i], pt[i]);
    if (eval_atom(self, m)) out.push_back(pt);
    if (out.size() >= count) break;
  }
  return out;
}

}  // namespace cqe
