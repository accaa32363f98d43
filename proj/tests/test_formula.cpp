#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logic/formula.hpp"

using namespace cqe;

namespace {

Signature make_sig() {
  Signature sig;
  sig.add_symbol("C", 2);
  sig.add_symbol("D", 2);
  sig.add_symbol("U", 1);
  sig.add_symbol("T3", 3);
  return sig;
}

// Test-only registrar: names sections after the pinned positions.
struct MockRegistrar : SectionRegistrar {
  Signature* sig;
  explicit MockRegistrar(Signature* s) : sig(s) {}
  FormulaPtr section_atom(const std::string& symbol, const std::vector<SectionArg>& args) override {
    std::string name = symbol + "_sec";
    std::vector<std::string> rest;
    for (const auto& a : args) {
      if (a.var)
        rest.push_back(*a.var);
      else
        name += "_" + sig->constant_name(a.const_id);
    }
    if (rest.empty()) return f_true();
    if (!sig->find(name)) sig->add_symbol(name, static_cast<int>(rest.size()));
    return f_atom(name, rest);
  }
  bool constants_equal(size_t a, size_t b) override {
    return alg_equal(sig->constant(a), sig->constant(b));
  }
};

// Random formula generator for round-trip checks.
FormulaPtr random_formula(Signature& sig, SeededRng& rng, int depth,
                          std::vector<std::string> scope, int next_bound) {
  auto var_from_scope = [&]() { return scope[rng.next() % scope.size()]; };
  if (depth == 0 || rng.next() % 4 == 0) {
    switch (rng.next() % 4) {
      case 0:
        return f_true();
      case 1: {
        std::string a = var_from_scope();
        std::string b = a == "u" ? "v" : "u";
        return f_atom("C", {a, b});
      }
      case 2:
        return f_equals(var_from_scope(), sig.intern_rational(Rat(static_cast<long>(rng.next() % 9), 1 + static_cast<long>(rng.next() % 4))));
      default:
        return f_atom("U", {var_from_scope()});
    }
  }
  switch (rng.next() % 6) {
    case 0:
      return f_not(random_formula(sig, rng, depth - 1, scope, next_bound));
    case 1:
    case 2: {
      std::vector<FormulaPtr> kids;
      size_t n = 1 + rng.next() % 3;
      for (size_t i = 0; i < n; ++i)
        kids.push_back(random_formula(sig, rng, depth - 1, scope, next_bound));
      return rng.next() % 2 ? f_and(std::move(kids)) : f_or(std::move(kids));
    }
    case 3: {
      std::string v = "b" + std::to_string(next_bound);
      scope.push_back(v);
      return f_exists(v, random_formula(sig, rng, depth - 1, scope, next_bound + 1));
    }
    case 4: {
      std::string v = "b" + std::to_string(next_bound);
      scope.push_back(v);
      return f_count_ge(static_cast<long>(rng.next() % 4), v,
                        random_formula(sig, rng, depth - 1, scope, next_bound + 1));
    }
    default: {
      std::string v = "b" + std::to_string(next_bound);
      scope.push_back(v);
      return f_count_inf(v, random_formula(sig, rng, depth - 1, scope, next_bound + 1));
    }
  }
}

}  // namespace

TEST_CASE("parsing the documented examples") {
  Signature sig = make_sig();
  FormulaPtr f = parse_formula("(exists y (and (C x y) (not (D x y))))", sig);
  CHECK(f->kind == FKind::Exists);
  CHECK(f->children[0]->kind == FKind::And);
  CHECK(f->children[0]->children[1]->kind == FKind::Not);

  FormulaPtr g = parse_formula("(countGE 2 y (C x y))", sig);
  CHECK(g->kind == FKind::CountAtLeast);
  CHECK(g->count == 2);

  CHECK_THROWS_AS(parse_formula("(C x)", sig), ParseError);            // arity mismatch
  CHECK_THROWS_AS(parse_formula("(E x y)", sig), ParseError);          // undeclared
  CHECK_THROWS_AS(parse_formula("(C x x)", sig), ParseError);          // repeated variable
  CHECK_THROWS_AS(parse_formula("(exists x (exists x (U x)))", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("(= x nosuch)", sig), ParseError);
}

TEST_CASE("free variables") {
  Signature sig = make_sig();
  CHECK(free_vars(parse_formula("(exists y (C x y))", sig)) == std::set<std::string>{"x"});
  CHECK(free_vars(parse_formula("(C x y)", sig)) == std::set<std::string>({"x", "y"}));
  CHECK(free_vars(parse_formula("true", sig)).empty());
}

TEST_CASE("parse after print is the identity on generated trees") {
  Signature sig = make_sig();
  SeededRng rng(0xf0f0);
  for (int t = 0; t < 200; ++t) {
    FormulaPtr f = random_formula(sig, rng, 4, {"u", "v"}, 0);
    FormulaPtr g = parse_formula(print_formula(f, sig), sig);
    CHECK(formulas_equal(f, g));
  }
}

TEST_CASE("disjunctive normal form of the documented examples") {
  Signature sig = make_sig();
  FormulaPtr a = f_atom("C", {"u", "v"});
  FormulaPtr b = f_atom("D", {"u", "v"});
  FormulaPtr u = f_atom("U", {"u"});

  FormulaPtr de_morgan = to_dnf_matrix(f_not(f_and({a, b})));
  CHECK(formulas_equal(de_morgan, f_or({f_not(a), f_not(b)})));

  FormulaPtr distributed = to_dnf_matrix(f_or({a, f_and({b, f_or({u, f_not(a)})})}));
  REQUIRE(distributed->kind == FKind::Or);
  CHECK(distributed->children.size() == 3);

  FormulaPtr already = f_or({f_and({a, b}), u});
  CHECK(formulas_equal(to_dnf_matrix(already), already));
}

TEST_CASE("dnf agrees with the input under propositional semantics") {
  Signature sig = make_sig();
  SeededRng rng(0xd00d);
  for (int t = 0; t < 100; ++t) {
    FormulaPtr f = random_formula(sig, rng, 4, {"u", "v"}, 0);
    // Interpret every atom/equality/quantified node by a random bit keyed on
    // its printed form.
    FormulaPtr d = to_dnf_matrix(f);
    for (int trial = 0; trial < 16; ++trial) {
      std::uint64_t salt = rng.next();
      std::function<bool(const FormulaPtr&)> eval = [&](const FormulaPtr& g) -> bool {
        switch (g->kind) {
          case FKind::True:
            return true;
          case FKind::False:
            return false;
          case FKind::Not:
            return !eval(g->children[0]);
          case FKind::And: {
            for (const auto& c : g->children)
              if (!eval(c)) return false;
            return true;
          }
          case FKind::Or: {
            for (const auto& c : g->children)
              if (eval(c)) return true;
            return false;
          }
          default: {
            // Key opaque nodes by their normalized form: the matrix pass
            // normalizes binders before distributing.
            FormulaPtr ng = normalize(g);
            if (ng->kind == FKind::True) return true;
            if (ng->kind == FKind::False) return false;
            std::hash<std::string> h;
            return ((h(print_formula(ng, sig)) ^ salt) & 1) != 0;
          }
        }
      };
      CHECK(eval(f) == eval(d));
    }
  }
}

TEST_CASE("cylinder combinations") {
  Signature sig = make_sig();
  FormulaPtr qf = parse_formula("(and (C x1 x3) (not (U x2)))", sig);
  CHECK(is_cylinder_combination(qf, sig));
  CHECK_FALSE(is_cylinder_combination(parse_formula("(exists y (C x y))", sig), sig));
  CHECK(is_cylinder_combination(parse_formula("(= x 3/2)", sig), sig));

  // Closure under the boolean operations.
  FormulaPtr g = parse_formula("(or (D x1 x2) (U x1))", sig);
  CHECK(is_cylinder_combination(f_and({qf, g}), sig));
  CHECK(is_cylinder_combination(f_or({qf, g}), sig));
  CHECK(is_cylinder_combination(f_not(qf), sig));
}

TEST_CASE("substituting a constant sections atoms and respects binding") {
  Signature sig = make_sig();
  MockRegistrar reg(&sig);
  size_t q = sig.intern_rational(Rat(3));
  FormulaPtr atom = parse_formula("(C x y)", sig);
  FormulaPtr sec = substitute_constant(atom, "x", q, reg);
  CHECK(sec->kind == FKind::Atom);
  CHECK(sec->args == std::vector<std::string>{"y"});

  CHECK(formulas_equal(substitute_constant(f_true(), "x", q, reg), f_true()));

  FormulaPtr bound = parse_formula("(exists x (C x y))", sig);
  CHECK_THROWS(substitute_constant(bound, "x", q, reg));

  size_t q2 = sig.intern_rational(Rat(4));
  FormulaPtr eq = f_equals("x", q);
  CHECK(formulas_equal(substitute_constant(eq, "x", q, reg), f_true()));
  CHECK(formulas_equal(substitute_constant(eq, "x", q2, reg), f_false()));
}

TEST_CASE("normalizer: binder identities") {
  Signature sig = make_sig();
  FormulaPtr f = parse_formula("(countGE 0 y (C x y))", sig);
  CHECK(normalize(f)->kind == FKind::True);
  FormulaPtr e = parse_formula("(exists y (C x y))", sig);
  FormulaPtr n = normalize(e);
  CHECK(n->kind == FKind::CountAtLeast);
  CHECK(n->count == 1);
}
