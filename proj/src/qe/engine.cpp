#include "qe/engine.hpp"

#include <algorithm>
#include <functional>

#include <nlohmann/json.hpp>

namespace cqe {

namespace {

bool is_quantifier(const FormulaPtr& f) {
  return f->kind == FKind::Exists || f->kind == FKind::CountAtLeast ||
         f->kind == FKind::CountExactly || f->kind == FKind::CountInfinite;
}

bool quantifier_free(const FormulaPtr& f) {
  if (is_quantifier(f)) return false;
  for (const auto& c : f->children)
    if (!quantifier_free(c)) return false;
  return true;
}

std::vector<FormulaPtr> conjuncts_of(const FormulaPtr& f) {
  if (f->kind == FKind::And) return f->children;
  return {f};
}

std::vector<FormulaPtr> disjuncts_of(const FormulaPtr& f) {
  if (f->kind == FKind::Or) return f->children;
  return {f};
}

std::vector<FormulaPtr> dedupe(std::vector<FormulaPtr> fs) {
  std::vector<FormulaPtr> out;
  for (auto& f : fs) {
    bool dup = false;
    for (const auto& e : out)
      if (formulas_equal(e, f)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(f));
  }
  return out;
}

FormulaPtr and_of(std::vector<FormulaPtr> fs) {
  fs = dedupe(std::move(fs));
  if (fs.empty()) return f_true();
  return normalize(fs.size() == 1 ? fs[0] : f_and(std::move(fs)));
}

FormulaPtr or_of(std::vector<FormulaPtr> fs) {
  fs = dedupe(std::move(fs));
  if (fs.empty()) return f_false();
  return normalize(fs.size() == 1 ? fs[0] : f_or(std::move(fs)));
}

struct LiteralSplit {
  std::vector<FormulaPtr> yfree;
  std::vector<FormulaPtr> positive;  // atoms/equalities mentioning y
  std::vector<FormulaPtr> negative;  // the atoms under negation, mentioning y
};

LiteralSplit split_literals(const std::vector<FormulaPtr>& literals, const std::string& y) {
  LiteralSplit out;
  for (const auto& l : literals) {
    const FormulaPtr& base = l->kind == FKind::Not ? l->children[0] : l;
    if (is_quantifier(base))
      throw UnsupportedShape("nested quantifier inside a matrix literal");
    bool mentions = free_vars(base).count(y) > 0;
    if (!mentions) {
      out.yfree.push_back(l);
    } else if (l->kind == FKind::Not) {
      out.negative.push_back(base);
    } else {
      out.positive.push_back(l);
    }
  }
  return out;
}

class Engine {
 public:
  Engine(GeometricOracle& oracle, const QeOptions& opts) : o_(oracle), opts_(opts) {}

  QeResult run(const FormulaPtr& f) {
    FormulaPtr g = normalize(o_.expand_atoms(normalize(f)));
    while (true) {
      FormulaPtr target = find_innermost(g);
      if (!target) break;
      FormulaPtr qf = eliminate_node(target, &top_);
      g = normalize(replace_node(g, target, qf));
      g = normalize(o_.expand_atoms(g));
    }
    QeResult out;
    out.formula = g;
    out.trace.steps = std::move(top_.children);
    return out;
  }

  // -- exposed pieces -------------------------------------------------------

  FormulaPtr block(const std::string& y, const std::vector<FormulaPtr>& literals,
                   TraceNode* parent) {
    LiteralSplit s = split_literals(literals, y);
    std::vector<FormulaPtr> outer = s.yfree;
    FormulaPtr inner = block_inner(y, s, parent);
    outer.push_back(inner);
    return and_of(std::move(outer));
  }

  FormulaPtr counting(long d, const std::vector<FormulaPtr>& conjuncts, const std::string& y,
                      TraceNode* parent) {
    TraceNode node;
    node.rule = "positive";
    node.input = print_formula(f_count_ge(d, y, and_of(std::vector<FormulaPtr>(conjuncts))), o_.sig());
    GroupedConjunction g = o_.group(conjuncts, y);
    {
      // Record the grouped shape: E(x', y) or the exceptional disjunction.
      TraceNode gnode;
      gnode.rule = "grouping";
      gnode.input = print_formula(and_of(std::vector<FormulaPtr>(conjuncts)), o_.sig());
      std::vector<FormulaPtr> shape;
      if (g.e_atom) shape.push_back(*g.e_atom);
      for (size_t l = 0; l < g.exceptional.size(); ++l)
        shape.push_back(f_and({f_equals(y, g.exceptional[l]), g.residuals[l]}));
      gnode.output = print_formula(or_of(std::move(shape)), o_.sig());
      node.children.push_back(std::move(gnode));
    }
    size_t L = g.exceptional.size();
    if (L > opts_.max_exceptional)
      throw EngineLimit("too many exceptional constants in one grouping: " + std::to_string(L));
    std::vector<FormulaPtr> disjuncts;
    for (size_t mask = 0; mask < (size_t{1} << L); ++mask) {
      long picked = static_cast<long>(__builtin_popcountll(mask));
      long e = d - picked;
      FormulaPtr base;
      if (e <= 0) {
        base = f_true();
      } else if (!g.e_atom) {
        continue;  // empty curve part cannot supply the remaining witnesses
      } else {
        base = o_.count_curve(conjuncts, y, e);
        if (base->kind == FKind::False) continue;
      }
      std::vector<FormulaPtr> parts;
      if (base->kind != FKind::True) parts.push_back(base);
      for (size_t l = 0; l < L; ++l) {
        if (mask & (size_t{1} << l))
          parts.push_back(g.residuals[l]);
        else
          parts.push_back(f_not(g.residuals[l]));
      }
      disjuncts.push_back(and_of(std::move(parts)));
    }
    FormulaPtr out = or_of(std::move(disjuncts));
    node.output = print_formula(out, o_.sig());
    if (parent) parent->children.push_back(std::move(node));
    return out;
  }

  // Exact count d for a union of literal-conjunction families (plus shared
  // positive conjuncts), via inclusion-exclusion over intersection counts.
  FormulaPtr exact_union_count(long d, const std::string& y,
                               const std::vector<std::vector<FormulaPtr>>& families,
                               const std::vector<FormulaPtr>& shared, TraceNode* parent) {
    std::vector<long> bounds;
    bounds.reserve(families.size());
    for (const auto& fam : families) {
      std::vector<FormulaPtr> all = fam;
      for (const auto& s : shared) all.push_back(s);
      bounds.push_back(family_bound(all, y));
    }
    TraceNode node;
    node.rule = "inclexcl";
    {
      std::vector<FormulaPtr> unions;
      for (const auto& fam : families) {
        std::vector<FormulaPtr> c = fam;
        for (const auto& s : shared) c.push_back(s);
        unions.push_back(and_of(std::move(c)));
      }
      node.input = print_formula(f_count_eq(d, y, or_of(std::move(unions))), o_.sig());
    }
    FormulaPtr skeleton = inclusion_exclusion_rewrite(d, y, families, shared, bounds);
    node.output = print_formula(skeleton, o_.sig());
    FormulaPtr out = rewrite_counts(skeleton, &node);
    if (parent) parent->children.push_back(std::move(node));
    return out;
  }

  // Replace every CountExactly/CountAtLeast node by its elimination.
  FormulaPtr rewrite_counts(const FormulaPtr& f, TraceNode* parent) {
    switch (f->kind) {
      case FKind::CountExactly: {
        FormulaPtr ge = count_ge_literals(f->count, f->var, conjuncts_of(f->children[0]), parent);
        FormulaPtr gt =
            count_ge_literals(f->count + 1, f->var, conjuncts_of(f->children[0]), parent);
        return normalize(f_and({ge, f_not(gt)}));
      }
      case FKind::CountAtLeast:
        return count_ge_literals(f->count, f->var, conjuncts_of(f->children[0]), parent);
      case FKind::Not:
        return normalize(f_not(rewrite_counts(f->children[0], parent)));
      case FKind::And:
      case FKind::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& c : f->children) kids.push_back(rewrite_counts(c, parent));
        return normalize(f->kind == FKind::And ? f_and(std::move(kids)) : f_or(std::move(kids)));
      }
      default:
        return f;
    }
  }

  // CountGE over a conjunction that may contain negations and y-free parts.
  FormulaPtr count_ge_literals(long gee, const std::string& y,
                               const std::vector<FormulaPtr>& literals, TraceNode* parent) {
    if (gee <= 0) return f_true();
    LiteralSplit s = split_literals(literals, y);
    FormulaPtr yfree = and_of(std::vector<FormulaPtr>(s.yfree));
    FormulaPtr inner;
    if (s.positive.empty() && s.negative.empty()) {
      inner = f_true();  // infinitely many y over an infinite universe
    } else if (s.negative.empty()) {
      inner = counting(gee, s.positive, y, parent);
    } else if (s.positive.empty()) {
      // Complement of a union of finite-or-full fibers: infinite exactly
      // when no member fiber is everything, empty otherwise.
      inner = inf_condition(y, s.positive, s.negative);
    } else {
      inner = general_ge_split(gee, y, s, parent);
    }
    return normalize(f_and({yfree, inner}));
  }

  FormulaPtr general_ge_split(long gee, const std::string& y, const LiteralSplit& s,
                              TraceNode* parent) {
    // |A \ U| >= g  iff  (exists c: |A| >= g + c and |U cap A| = c)  or  A infinite
    // with U's share finite.
    long k = 0;
    std::vector<std::vector<FormulaPtr>> families;
    for (const auto& n : s.negative) {
      std::vector<FormulaPtr> fam{n};
      std::vector<FormulaPtr> all = fam;
      for (const auto& p : s.positive) all.push_back(p);
      k += family_bound(all, y);
      families.push_back(fam);
    }
    if (k > opts_.max_count_range)
      throw EngineLimit("count range exceeds the configured cap: " + std::to_string(k));
    std::vector<FormulaPtr> terms;
    for (long c = 0; c <= k; ++c) {
      FormulaPtr lhs = s.positive.empty() ? f_true() : counting(gee + c, s.positive, y, parent);
      if (lhs->kind == FKind::False) continue;
      FormulaPtr rhs = exact_union_count(c, y, families, s.positive, parent);
      terms.push_back(and_of({lhs, rhs}));
    }
    terms.push_back(inf_condition(y, s.positive, s.negative));
    return or_of(std::move(terms));
  }

  // Quantifier-free condition: the literal conjunction holds for infinitely
  // many (equivalently, cofinitely many) values of the bound variable.
  FormulaPtr inf_condition(const std::string& y, const std::vector<FormulaPtr>& positive,
                           const std::vector<FormulaPtr>& negative) {
    std::vector<FormulaPtr> parts;
    for (const auto& p : positive) {
      FormulaPtr c = locus_condition(y, p);
      if (c->kind == FKind::False) return f_false();
      parts.push_back(c);
    }
    for (const auto& n : negative) parts.push_back(normalize(f_not(locus_condition(y, n))));
    return and_of(std::move(parts));
  }

  FormulaPtr locus_condition(const std::string& y, const FormulaPtr& atom) {
    auto locus = o_.infinite_locus(atom, y);
    if (locus.empty()) return f_false();
    std::vector<std::string> xvars;
    if (atom->kind == FKind::Atom)
      for (const auto& a : atom->args)
        if (a != y) xvars.push_back(a);
    std::vector<FormulaPtr> tuples;
    for (const auto& tup : locus) {
      if (tup.empty()) return f_true();  // unconditional
      std::vector<FormulaPtr> eqs;
      for (size_t i = 0; i < tup.size(); ++i) eqs.push_back(f_equals(xvars.at(i), tup[i]));
      tuples.push_back(and_of(std::move(eqs)));
    }
    return or_of(std::move(tuples));
  }

  long family_bound(const std::vector<FormulaPtr>& members, const std::string& y) {
    std::optional<long> best_uncond;
    long max_fin = 0;
    bool any = false;
    for (const auto& m : members) {
      if (!free_vars(m).count(y)) continue;
      any = true;
      AtomCountBounds b = o_.atom_count_bounds(m, y);
      max_fin = std::max(max_fin, b.finite_bound);
      if (b.unconditional && (!best_uncond || *b.unconditional < *best_uncond))
        best_uncond = b.unconditional;
    }
    if (!any) return 0;
    return best_uncond ? std::min(*best_uncond, max_fin) : max_fin;
  }

  std::string binder_var_;

 private:
  FormulaPtr block_inner(const std::string& y, const LiteralSplit& s, TraceNode* parent) {
    binder_var_ = y;
    if (s.positive.empty() && s.negative.empty()) return f_true();
    if (s.positive.empty())
      throw UnsupportedShape("no positive conjunct constrains the bound variable " + y);
    long negs = static_cast<long>(s.negative.size());
    if (s.negative.empty()) return counting(1, s.positive, y, parent);

    // Finite branch: some finite count d of union members, with d+1 witnesses
    // of the positive part.
    TraceNode fin;
    fin.rule = "finite-(4)";
    fin.negations = negs;
    {
      std::vector<FormulaPtr> lits = s.positive;
      for (const auto& n : s.negative) lits.push_back(f_not(n));
      fin.input = print_formula(f_exists(y, and_of(std::move(lits))), o_.sig());
    }
    long k = 0;
    {
      std::vector<std::vector<FormulaPtr>> families;
      for (const auto& n : s.negative) {
        std::vector<FormulaPtr> all{n};
        for (const auto& p : s.positive) all.push_back(p);
        k += family_bound(all, y);
      }
    }
    if (k > opts_.max_count_range)
      throw EngineLimit("uniform-finiteness bound exceeds the configured cap: " +
                        std::to_string(k));
    long d_max = k;
    {
      // The positive part can cap the range further.
      std::optional<long> uncond;
      for (const auto& p : s.positive) {
        AtomCountBounds b = o_.atom_count_bounds(p, y);
        if (b.unconditional && (!uncond || *b.unconditional < *uncond)) uncond = b.unconditional;
      }
      if (uncond) d_max = std::min(d_max, *uncond - 1);
    }
    std::vector<FormulaPtr> fin_terms;
    std::vector<std::vector<FormulaPtr>> families;
    for (const auto& n : s.negative) families.push_back({n});
    for (long d = 0; d <= d_max; ++d) {
      FormulaPtr lhs = counting(d + 1, s.positive, y, &fin);
      if (lhs->kind == FKind::False) continue;
      FormulaPtr rhs = exact_union_count(d, y, families, s.positive, &fin);
      fin_terms.push_back(and_of({lhs, rhs}));
    }
    FormulaPtr finite_part = or_of(std::move(fin_terms));
    fin.output = print_formula(finite_part, o_.sig());
    if (parent) parent->children.push_back(std::move(fin));

    // Infinite branch: one negated conjunct has an infinite fiber; pin its
    // parameters and recurse with one negation fewer.
    std::vector<FormulaPtr> inf_terms;
    for (size_t j = 0; j < s.negative.size(); ++j) {
      const FormulaPtr& atom_j = s.negative[j];
      auto locus = o_.infinite_locus(atom_j, y);
      if (locus.empty()) continue;
      TraceNode inf;
      inf.rule = "infinite-(5)";
      inf.negations = negs;
      {
        std::vector<FormulaPtr> c{atom_j};
        for (const auto& p : s.positive) c.push_back(p);
        inf.input = print_formula(f_count_inf(y, and_of(std::move(c))), o_.sig());
      }
      std::vector<std::string> xvars;
      if (atom_j->kind == FKind::Atom)
        for (const auto& a : atom_j->args)
          if (a != y) xvars.push_back(a);
      std::vector<FormulaPtr> j_terms;
      for (const auto& tup : locus) {
        TraceNode sec;
        sec.rule = "section-(6)";
        sec.negations = negs - 1;
        std::map<std::string, size_t> pins;
        std::vector<FormulaPtr> eqs;
        for (size_t i = 0; i < tup.size(); ++i) {
          pins.emplace(xvars.at(i), tup[i]);
          eqs.push_back(f_equals(xvars.at(i), tup[i]));
        }
        FormulaPtr compl_atom = o_.complement_section(atom_j, y, pins);
        std::vector<FormulaPtr> inner = s.positive;
        inner.push_back(compl_atom);
        for (size_t j2 = 0; j2 < s.negative.size(); ++j2)
          if (j2 != j) inner.push_back(f_not(s.negative[j2]));
        {
          std::vector<FormulaPtr> shown = eqs;
          shown.push_back(f_exists(y, and_of(std::vector<FormulaPtr>(inner))));
          sec.input = print_formula(and_of(std::move(shown)), o_.sig());
        }
        // The complement may be a disjunction; renormalize and re-enter.
        FormulaPtr rec = eliminate_matrix(1, y, and_of(std::move(inner)), &sec, negs - 1);
        std::vector<FormulaPtr> whole = eqs;
        whole.push_back(rec);
        FormulaPtr term = and_of(std::move(whole));
        sec.output = print_formula(term, o_.sig());
        inf.children.push_back(std::move(sec));
        j_terms.push_back(term);
      }
      FormulaPtr jpart = or_of(std::move(j_terms));
      inf.output = print_formula(jpart, o_.sig());
      if (parent) parent->children.push_back(std::move(inf));
      inf_terms.push_back(jpart);
    }
    FormulaPtr infinite_part = or_of(std::move(inf_terms));
    return or_of({finite_part, infinite_part});
  }

  // Negations of unary atoms become positive complement atoms (the
  // complement of a subset of the line is again a 1-curve).
  FormulaPtr positivize_unary_negations(const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::Not: {
        const FormulaPtr& c = f->children[0];
        if (c->kind == FKind::Atom && c->args.size() == 1)
          return o_.complement_section(c, c->args[0], {});
        return normalize(f_not(positivize_unary_negations(c)));
      }
      case FKind::And:
      case FKind::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->children) kids.push_back(positivize_unary_negations(k));
        return normalize(f->kind == FKind::And ? f_and(std::move(kids)) : f_or(std::move(kids)));
      }
      default:
        return f;
    }
  }

  // CountGE(d) of an arbitrary quantifier-free body: DNF then per-shape work.
  FormulaPtr eliminate_matrix(long d, const std::string& y, const FormulaPtr& body,
                              TraceNode* parent, long expect_max_negs = -1) {
    binder_var_ = y;
    FormulaPtr matrix = to_dnf_matrix(positivize_unary_negations(o_.expand_atoms(body)));
    if (matrix->kind == FKind::True) return f_true();
    if (matrix->kind == FKind::False) return f_false();
    std::vector<FormulaPtr> disjuncts = disjuncts_of(matrix);
    if (disjuncts.size() > opts_.max_dnf_disjuncts)
      throw EngineLimit("DNF explosion: " + std::to_string(disjuncts.size()) + " disjuncts");
    if (expect_max_negs >= 0) {
      for (const auto& dis : disjuncts) {
        long negs = 0;
        for (const auto& l : conjuncts_of(dis))
          if (l->kind == FKind::Not && free_vars(l).count(y)) ++negs;
        if (negs > expect_max_negs)
          throw std::logic_error("negation count failed to decrease in a section step");
      }
    }
    if (d == 1) {
      std::vector<FormulaPtr> parts;
      for (const auto& dis : disjuncts) parts.push_back(block(y, conjuncts_of(dis), parent));
      return or_of(std::move(parts));
    }
    // d >= 2: count the union of the disjuncts.
    std::vector<std::vector<FormulaPtr>> families;
    long K = 0;
    for (const auto& dis : disjuncts) {
      families.push_back(conjuncts_of(dis));
      K += family_bound(families.back(), y);
    }
    if (K > opts_.max_count_range)
      throw EngineLimit("count range exceeds the configured cap: " + std::to_string(K));
    std::vector<FormulaPtr> terms;
    for (long dd = d; dd <= K; ++dd)
      terms.push_back(exact_union_count(dd, y, families, {}, parent));
    for (const auto& dis : disjuncts) {
      LiteralSplit s = split_literals(conjuncts_of(dis), y);
      FormulaPtr yfree = and_of(std::vector<FormulaPtr>(s.yfree));
      terms.push_back(and_of({yfree, inf_condition(y, s.positive, s.negative)}));
    }
    return or_of(std::move(terms));
  }

  FormulaPtr eliminate_node(const FormulaPtr& q, TraceNode* parent) {
    const std::string& y = q->var;
    binder_var_ = y;
    switch (q->kind) {
      case FKind::CountAtLeast:
        return eliminate_matrix(q->count, y, q->children[0], parent);
      case FKind::Exists:
        return eliminate_matrix(1, y, q->children[0], parent);
      case FKind::CountExactly: {
        FormulaPtr ge = eliminate_matrix(q->count, y, q->children[0], parent);
        FormulaPtr gt = eliminate_matrix(q->count + 1, y, q->children[0], parent);
        return normalize(f_and({ge, f_not(gt)}));
      }
      case FKind::CountInfinite: {
        TraceNode node;
        node.rule = "infinite-(5)";
        node.input = print_formula(q, o_.sig());
        FormulaPtr matrix = to_dnf_matrix(positivize_unary_negations(o_.expand_atoms(q->children[0])));
        std::vector<FormulaPtr> parts;
        if (matrix->kind == FKind::True) {
          node.output = "true";
          if (parent) parent->children.push_back(std::move(node));
          return f_true();
        }
        if (matrix->kind != FKind::False) {
          for (const auto& dis : disjuncts_of(matrix)) {
            LiteralSplit s = split_literals(conjuncts_of(dis), y);
            FormulaPtr yfree = and_of(std::vector<FormulaPtr>(s.yfree));
            parts.push_back(and_of({yfree, inf_condition(y, s.positive, s.negative)}));
          }
        }
        FormulaPtr out = or_of(std::move(parts));
        node.output = print_formula(out, o_.sig());
        if (parent) parent->children.push_back(std::move(node));
        return out;
      }
      default:
        throw std::logic_error("eliminate_node on a non-quantifier");
    }
  }

  FormulaPtr find_innermost(const FormulaPtr& f) {
    FormulaPtr found;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
      if (found) return;
      for (const auto& c : g->children) walk(c);
      if (found) return;
      if (is_quantifier(g) && quantifier_free(g->children[0])) found = g;
    };
    walk(f);
    return found;
  }

  FormulaPtr replace_node(const FormulaPtr& f, const FormulaPtr& target,
                          const FormulaPtr& with) {
    if (f.get() == target.get()) return with;
    if (f->children.empty()) return f;
    bool changed = false;
    std::vector<FormulaPtr> kids;
    for (const auto& c : f->children) {
      FormulaPtr r = replace_node(c, target, with);
      changed = changed || r.get() != c.get();
      kids.push_back(r);
    }
    if (!changed) return f;
    auto g = std::make_shared<Formula>(*f);
    g->children = std::move(kids);
    return g;
  }

  GeometricOracle& o_;
  QeOptions opts_;
  TraceNode top_;
};

}  // namespace

QeResult qe(const FormulaPtr& f, GeometricOracle& oracle, const QeOptions& opts) {
  Engine e(oracle, opts);
  return e.run(f);
}

FormulaPtr eliminate_block(const std::string& y, const std::vector<FormulaPtr>& literals,
                           GeometricOracle& oracle, const QeOptions& opts, TraceNode* parent) {
  Engine e(oracle, opts);
  e.binder_var_ = y;
  TraceNode scratch;
  return e.block(y, literals, parent ? parent : &scratch);
}

FormulaPtr eliminate_counting(long d, const std::vector<FormulaPtr>& conjuncts,
                              const std::string& y, GeometricOracle& oracle,
                              const QeOptions& opts, TraceNode* parent) {
  Engine e(oracle, opts);
  e.binder_var_ = y;
  TraceNode scratch;
  return e.counting(d, conjuncts, y, parent ? parent : &scratch);
}

FormulaPtr inclusion_exclusion_rewrite(long d, const std::string& y,
                                       const std::vector<std::vector<FormulaPtr>>& families,
                                       const std::vector<FormulaPtr>& shared,
                                       const std::vector<long>& family_bounds) {
  size_t s = families.size();
  if (s == 0) return d == 0 ? f_true() : f_false();
  if (s > 6) throw EngineLimit("inclusion-exclusion over too many families");
  size_t types = (size_t{1} << s) - 1;  // nonempty subsets by bitmask-1 indexing

  // Merge a subset of families (plus shared conjuncts); nullopt when the
  // merged literal set is contradictory.
  auto merged = [&](size_t mask) -> std::optional<std::vector<FormulaPtr>> {
    std::vector<FormulaPtr> lits;
    auto add = [&](const FormulaPtr& l) -> bool {
      for (const auto& e : lits) {
        if (formulas_equal(e, l)) return true;
        if (e->kind == FKind::Not && formulas_equal(e->children[0], l)) return false;
        if (l->kind == FKind::Not && formulas_equal(l->children[0], e)) return false;
      }
      lits.push_back(l);
      return true;
    };
    for (size_t j = 0; j < s; ++j)
      if (mask & (size_t{1} << j))
        for (const auto& l : families[j])
          if (!add(l)) return std::nullopt;
    for (const auto& l : shared)
      if (!add(l)) return std::nullopt;
    return lits;
  };

  // Enumerate exact-type counts e_W (W a nonempty subset of families) with
  // sum d; the intersection counts m_H follow by summation.
  std::vector<FormulaPtr> out;
  std::vector<long> e(types, 0);
  std::function<void(size_t, long)> enumerate = [&](size_t idx, long left) {
    if (idx == types) {
      if (left != 0) return;
      std::vector<FormulaPtr> parts;
      for (size_t h = 0; h < types; ++h) {
        size_t mask = h + 1;
        long m = 0;
        for (size_t w = 0; w < types; ++w)
          if (((w + 1) & mask) == mask) m += e[w];
        auto lits = merged(mask);
        if (!lits) {
          if (m != 0) return;  // contradictory intersection cannot carry weight
          continue;
        }
        long bound = 0;
        {
          bool first = true;
          for (size_t j = 0; j < s; ++j)
            if (mask & (size_t{1} << j)) {
              bound = first ? family_bounds[j] : std::min(bound, family_bounds[j]);
              first = false;
            }
        }
        if (m > bound) return;
        parts.push_back(f_count_eq(m, y, lits->size() == 1 ? (*lits)[0] : f_and(*lits)));
      }
      out.push_back(parts.empty() ? (d == 0 ? f_true() : f_false()) : and_of(std::move(parts)));
      return;
    }
    for (long v = 0; v <= left; ++v) {
      e[idx] = v;
      enumerate(idx + 1, left - v);
    }
    e[idx] = 0;
  };
  enumerate(0, d);
  return out.empty() ? f_false() : or_of(std::move(out));
}

std::string EliminationTrace::to_json() const {
  using ordered_json = nlohmann::ordered_json;
  std::function<ordered_json(const TraceNode&)> conv = [&](const TraceNode& n) {
    ordered_json j;
    j["rule"] = n.rule;
    j["input"] = n.input;
    j["output"] = n.output;
    if (n.negations >= 0) j["negations"] = n.negations;
    ordered_json kids = ordered_json::array();
    for (const auto& c : n.children) kids.push_back(conv(c));
    if (!kids.empty()) j["children"] = kids;
    return j;
  };
  ordered_json root;
  ordered_json steps = ordered_json::array();
  for (const auto& s : this->steps) steps.push_back(conv(s));
  root["steps"] = steps;
  return root.dump(2);
}

bool validate_trace(const FormulaPtr& input, const QeResult& recorded, GeometricOracle& oracle,
                    const QeOptions& opts, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  // Structural checks.
  static const std::vector<std::string> legal = {"grouping",       "positive",    "finite-(4)",
                                                 "infinite-(5)",   "section-(6)", "inclexcl"};
  std::function<bool(const TraceNode&, std::string&)> walk = [&](const TraceNode& n,
                                                                 std::string& m) {
    if (std::find(legal.begin(), legal.end(), n.rule) == legal.end()) {
      m = "illegal rule tag: " + n.rule;
      return false;
    }
    if (n.rule == "section-(6)") {
      for (const auto& c : n.children)
        if ((c.rule == "finite-(4)" || c.rule == "infinite-(5)") && c.negations >= 0 &&
            n.negations >= 0 && c.negations > n.negations) {
          m = "negation count did not decrease under a section step";
          return false;
        }
    }
    for (const auto& c : n.children)
      if (!walk(c, m)) return false;
    return true;
  };
  std::string m;
  for (const auto& s : recorded.trace.steps)
    if (!walk(s, m)) return fail(m);
  if (!quantifier_free(recorded.formula)) return fail("recorded output is not quantifier-free");
  // Replay: the elimination is deterministic over the same oracle, so the
  // recorded steps must reproduce exactly.
  QeResult again = qe(input, oracle, opts);
  if (!formulas_equal(again.formula, recorded.formula))
    return fail("replay produced a different output formula");
  std::function<bool(const TraceNode&, const TraceNode&)> same = [&](const TraceNode& a,
                                                                     const TraceNode& b) {
    if (a.rule != b.rule || a.input != b.input || a.output != b.output ||
        a.children.size() != b.children.size())
      return false;
    for (size_t i = 0; i < a.children.size(); ++i)
      if (!same(a.children[i], b.children[i])) return false;
    return true;
  };
  if (again.trace.steps.size() != recorded.trace.steps.size())
    return fail("replay produced a different number of steps");
  for (size_t i = 0; i < again.trace.steps.size(); ++i)
    if (!same(again.trace.steps[i], recorded.trace.steps[i]))
      return fail("replayed step " + std::to_string(i) + " differs");
  return true;
}

}  // namespace cqe
