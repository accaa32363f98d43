#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qe/engine.hpp"
#include "qe/equivalence.hpp"

using namespace cqe;

namespace {

struct Fixture {
  ConstructibleCurveOracle oracle{7, 128};
  QeOptions opts;
  Fixture() {
    oracle.declare("line", CurveSet::from_plane(MultiPoly::parse("x2 - x1")));
    oracle.declare("parab", CurveSet::from_plane(MultiPoly::parse("x2 - x1^2")));
    oracle.declare("circ", CurveSet::from_plane(MultiPoly::parse("x1^2 + x2^2 - 1")));
    oracle.declare("sqrt", CurveSet::from_plane(MultiPoly::parse("x2^2 - x1")));
    oracle.declare("uf", CurveSet::from_points(1, {{AlgebraicNumber(Rat(3))}}));
    CurveSet uc = CurveSet::full_line();
    uc.minus.add({AlgebraicNumber(Rat(5))});
    oracle.declare("uc", std::move(uc));
  }
  FormulaPtr parse(const std::string& s) { return parse_formula(s, oracle.sig()); }
  bool eval_at(const FormulaPtr& f, std::map<std::string, Rat> pt) {
    std::map<std::string, AlgebraicNumber> p;
    for (auto& [k, v] : pt) p.emplace(k, AlgebraicNumber(v));
    return eval_formula(f, oracle, p);
  }
};

}  // namespace

TEST_CASE("projection of a graph is everything") {
  Fixture fx;
  QeResult r = qe(fx.parse("(exists y (line x y))"), fx.oracle, fx.opts);
  CHECK(r.formula->kind == FKind::True);
}

TEST_CASE("quantifier-free input comes back unchanged with an empty trace") {
  Fixture fx;
  FormulaPtr f = fx.parse("(and (line x1 x2) (not (circ x1 x2)))");
  QeResult r = qe(f, fx.oracle, fx.opts);
  CHECK(formulas_equal(r.formula, normalize(f)));
  CHECK(r.trace.steps.empty());
}

TEST_CASE("parabola-circle intersection eliminates to the quartic point set") {
  Fixture fx;
  FormulaPtr f = fx.parse("(exists y (and (parab x y) (circ x y)))");
  QeResult r = qe(f, fx.oracle, fx.opts);
  CHECK(is_cylinder_combination(r.formula, fx.oracle.sig()));
  auto rep = check_equivalence_sampled(f, r.formula, fx.oracle, 150, 5);
  CHECK(rep.disagreements == 0);
}

TEST_CASE("two graphs eliminate to a binary predicate over both variables") {
  Fixture fx;
  FormulaPtr f = fx.parse("(exists y (and (line x1 y) (line x2 y)))");
  QeResult r = qe(f, fx.oracle, fx.opts);
  CHECK(is_cylinder_combination(r.formula, fx.oracle.sig()));
  CHECK(fx.eval_at(r.formula, {{"x1", Rat(3)}, {"x2", Rat(3)}}));
  CHECK_FALSE(fx.eval_at(r.formula, {{"x1", Rat(3)}, {"x2", Rat(4)}}));
}

TEST_CASE("counting: one witness on a graph is unconditional") {
  Fixture fx;
  TraceNode scratch;
  FormulaPtr r =
      eliminate_counting(1, {fx.parse("(line x y)")}, "y", fx.oracle, fx.opts, &scratch);
  CHECK(r->kind == FKind::True);
}

TEST_CASE("counting thresholds on the square-root curve") {
  Fixture fx;
  FormulaPtr atom = fx.parse("(sqrt x y)");
  TraceNode scratch;
  FormulaPtr one = eliminate_counting(1, {atom}, "y", fx.oracle, fx.opts, &scratch);
  FormulaPtr two = eliminate_counting(2, {atom}, "y", fx.oracle, fx.opts, &scratch);
  FormulaPtr three = eliminate_counting(3, {atom}, "y", fx.oracle, fx.opts, &scratch);
  CHECK(three->kind == FKind::False);
  // Two distinct square roots exist away from x = 0.
  CHECK(fx.eval_at(two, {{"x", Rat(4)}}));
  CHECK_FALSE(fx.eval_at(two, {{"x", Rat(0)}}));
  CHECK(fx.eval_at(one, {{"x", Rat(0)}}));
  // Cross-check against a direct count of the defining formula.
  for (Rat x0 : {Rat(0), Rat(4), Rat(-1), Rat(9, 4)}) {
    FormulaPtr counted = fx.parse("(countGE 2 y (sqrt x y))");
    CHECK(fx.eval_at(counted, {{"x", x0}}) == fx.eval_at(two, {{"x", x0}}));
  }
}

TEST_CASE("a block with no positive conjunct is rejected as out of shape") {
  Fixture fx;
  FormulaPtr f = fx.parse("(exists y (not (line x y)))");
  CHECK_THROWS_AS(qe(f, fx.oracle, fx.opts), UnsupportedShape);
}

TEST_CASE("inclusion-exclusion rewrite: single family is the identity") {
  Fixture fx;
  FormulaPtr atom = fx.parse("(sqrt x y)");
  FormulaPtr skel = inclusion_exclusion_rewrite(2, "y", {{atom}}, {}, {2});
  REQUIRE(skel->kind == FKind::CountExactly);
  CHECK(skel->count == 2);
}

TEST_CASE("inclusion-exclusion rewrite: empty-union case is pure negation") {
  Fixture fx;
  FormulaPtr a = fx.parse("(line x y)");
  FormulaPtr skel = inclusion_exclusion_rewrite(0, "y", {{a}}, {}, {1});
  REQUIRE(skel->kind == FKind::CountExactly);
  CHECK(skel->count == 0);
}

TEST_CASE("negated conjuncts: cofinite answer with finitely many exceptions") {
  Fixture fx;
  FormulaPtr f = fx.parse("(exists y (and (parab x y) (not (circ x y))))");
  QeResult r = qe(f, fx.oracle, fx.opts);
  CHECK(is_cylinder_combination(r.formula, fx.oracle.sig()));
  // Truth at a generic point; the exceptional x solve x^4 + x^2 - 1 = 0,
  // which has no rational roots, so every rational x satisfies the result.
  CHECK(fx.eval_at(r.formula, {{"x", Rat(5)}}));
  CHECK(fx.eval_at(r.formula, {{"x", Rat(0)}}));
  auto rep = check_equivalence_sampled(f, r.formula, fx.oracle, 160, 17);
  CHECK(rep.disagreements == 0);
}

TEST_CASE("trace validity and replay") {
  Fixture fx;
  FormulaPtr f = fx.parse("(exists y (and (parab x y) (not (circ x y))))");
  QeResult r = qe(f, fx.oracle, fx.opts);
  std::string why;
  CHECK(validate_trace(f, r, fx.oracle, fx.opts, &why));
  REQUIRE_FALSE(r.trace.steps.empty());
  // Tamper with a recorded output: the replay must notice.
  QeResult bad = r;
  bad.trace.steps[0].output += " ";
  CHECK_FALSE(validate_trace(f, bad, fx.oracle, fx.opts, &why));
}

TEST_CASE("uniform bound audit: sampled fibers never exceed the bound") {
  Fixture fx;
  std::vector<FormulaPtr> conj{fx.parse("(circ x y)"), fx.parse("(parab x y)")};
  long k = fx.oracle.uniform_bound(conj, "y");
  SeededRng rng(31);
  for (int t = 0; t < 40; ++t) {
    std::map<std::string, AlgebraicNumber> pt{{"x", AlgebraicNumber(rng.next_rational(30, 7))}};
    YSet ys = YSet::all();
    for (const auto& c : conj) ys = yset_intersect(ys, fx.oracle.atom_y_solutions(c, "y", pt));
    if (!ys.cofinite) CHECK(static_cast<long>(ys.values.size()) <= k);
  }
}

TEST_CASE("count symbols evaluate exactly at algebraic points") {
  Fixture fx;
  FormulaPtr f = fx.parse("(exists y (and (line x1 y) (parab x2 y)))");
  QeResult r = qe(f, fx.oracle, fx.opts);
  auto rep = check_equivalence_sampled(f, r.formula, fx.oracle, 200, 23);
  CHECK(rep.disagreements == 0);
}

TEST_CASE("the engine reports instead of thrashing past its caps") {
  Fixture fx;
  QeOptions tight;
  tight.max_dnf_disjuncts = 1;
  FormulaPtr f = fx.parse("(exists y (or (and (line x y) (parab x y)) (circ x y)))");
  CHECK_THROWS_AS(qe(f, fx.oracle, tight), EngineLimit);
}

TEST_CASE("dnf preserves oracle-sampled semantics") {
  Fixture fx;
  SeededRng rng(0x90);
  for (const char* text : {"(and (parab x y) (not (or (circ x y) (line x y))))",
                           "(or (and (line x y) (not (parab x y))) (circ x y))"}) {
    FormulaPtr f = fx.parse(text);
    FormulaPtr d = to_dnf_matrix(f);
    for (int t = 0; t < 100; ++t) {
      std::map<std::string, Rat> pt{{"x", rng.next_rational(20, 6)}, {"y", rng.next_rational(20, 6)}};
      CHECK(fx.eval_at(f, pt) == fx.eval_at(d, pt));
    }
  }
}

TEST_CASE("pairwise fiber counts match isolation of the specialized gcd") {
  SeededRng rng(0x77aa);
  int done = 0;
  while (done < 20) {
    MultiPoly p, q;
    for (int k = 0; k <= 3; ++k) {
      p = p + MultiPoly::var("x").pow(static_cast<unsigned>(rng.next() % 2)) *
                  MultiPoly::var("y").pow(static_cast<unsigned>(k)) * rng.next_rational(4, 2);
      q = q + MultiPoly::var("x").pow(static_cast<unsigned>(rng.next() % 2)) *
                  MultiPoly::var("y").pow(static_cast<unsigned>(k)) * rng.next_rational(4, 2);
    }
    if (p.degree("y") < 1 || q.degree("y") < 1) continue;
    Rat x0 = rng.next_rational(9, 4);
    MultiPoly ps = p.substitute("x", x0), qs = q.substitute("x", x0);
    if (ps.is_zero() || qs.is_zero() || ps.degree("y") < 1 || qs.degree("y") < 1) continue;
    UPoly g = gcd(ps.to_upoly("y"), qs.to_upoly("y"));
    std::map<std::string, AlgebraicNumber> pt{{"x", AlgebraicNumber(x0)}};
    FiberCount fc = fiber_count_at({{p, "x", "y"}, {q, "x", "y"}}, pt);
    REQUIRE_FALSE(fc.infinite);
    int direct = g.degree() < 1 ? 0 : static_cast<int>(isolate_roots(g, 80).size());
    CHECK(fc.count == direct);
    ++done;
  }
}

TEST_CASE("unary vocabularies eliminate through the co-finite path") {
  Fixture fx;
  // The complement of a finite unary set still has witnesses.
  QeResult r1 = qe(fx.parse("(exists y (not (uf y)))"), fx.oracle, fx.opts);
  CHECK(r1.formula->kind == FKind::True);
  QeResult r2 = qe(fx.parse("(exists y (uc y))"), fx.oracle, fx.opts);
  CHECK(r2.formula->kind == FKind::True);
  QeResult r3 = qe(fx.parse("(countGE 2 y (uc y))"), fx.oracle, fx.opts);
  CHECK(r3.formula->kind == FKind::True);
  QeResult r4 = qe(fx.parse("(countEQ 1 y (uf y))"), fx.oracle, fx.opts);
  CHECK(r4.formula->kind == FKind::True);
  QeResult r5 = qe(fx.parse("(countINF y (uf y))"), fx.oracle, fx.opts);
  CHECK(r5.formula->kind == FKind::False);
  QeResult r6 = qe(fx.parse("(exists y (and (uf y) (uc y)))"), fx.oracle, fx.opts);
  CHECK(r6.formula->kind == FKind::True);  // the member 3 is not excluded
  QeResult r7 = qe(fx.parse("(exists y (and (uf y) (not (uf y))))"), fx.oracle, fx.opts);
  CHECK(r7.formula->kind == FKind::False);
}

TEST_CASE("equality conjuncts pin the bound variable or factor out") {
  Fixture fx;
  // y pinned by the equality: witnesses exist exactly on the section.
  FormulaPtr f = fx.parse("(exists y (and (parab x y) (= y 4)))");
  QeResult r = qe(f, fx.oracle, fx.opts);
  CHECK(is_cylinder_combination(r.formula, fx.oracle.sig()));
  CHECK(fx.eval_at(r.formula, {{"x", Rat(2)}}));
  CHECK(fx.eval_at(r.formula, {{"x", Rat(-2)}}));
  CHECK_FALSE(fx.eval_at(r.formula, {{"x", Rat(1)}}));
  auto rep = check_equivalence_sampled(f, r.formula, fx.oracle, 80, 2);
  CHECK(rep.disagreements == 0);

  // An equality over a free variable factors out of the block.
  FormulaPtr g = fx.parse("(exists y (and (parab x y) (= x 2)))");
  QeResult r2 = qe(g, fx.oracle, fx.opts);
  CHECK(fx.eval_at(r2.formula, {{"x", Rat(2)}}));
  CHECK_FALSE(fx.eval_at(r2.formula, {{"x", Rat(3)}}));
}

TEST_CASE("counting respects co-finite exclusions pointwise") {
  Fixture fx;
  FormulaPtr f = fx.parse("(countGE 2 y (and (sqrt x y) (uc y)))");
  QeResult r = qe(f, fx.oracle, fx.opts);
  CHECK(is_cylinder_combination(r.formula, fx.oracle.sig()));
  CHECK(fx.eval_at(r.formula, {{"x", Rat(4)}}));
  CHECK_FALSE(fx.eval_at(r.formula, {{"x", Rat(0)}}));
  // x = 25 loses the excluded square root y = 5 and drops below the count.
  CHECK_FALSE(fx.eval_at(r.formula, {{"x", Rat(25)}}));
  for (Rat x0 : {Rat(4), Rat(0), Rat(25), Rat(9), Rat(-1)})
    CHECK(fx.eval_at(f, {{"x", x0}}) == fx.eval_at(r.formula, {{"x", x0}}));
}

TEST_CASE("co-finite positives with finite negations keep their witnesses") {
  Fixture fx;
  FormulaPtr f = fx.parse("(exists y (and (uc y) (not (uf y))))");
  QeResult r = qe(f, fx.oracle, fx.opts);
  CHECK(r.formula->kind == FKind::True);
}
