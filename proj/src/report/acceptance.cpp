#include "report/acceptance.hpp"

#include "galois/galois.hpp"
#include "lab/section5.hpp"
#include "qe/engine.hpp"
#include "qe/equivalence.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#ifndef CQE_DATA_DIR
#define CQE_DATA_DIR ""
#endif

namespace cqe {

std::string default_data_dir() { return CQE_DATA_DIR; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["seed"] = seed;
  j["precision_bits"] = precision_bits;
  std::vector<std::string> as;
  for (const auto& a : a_values) as.push_back(rational_to_string(a));
  j["a_values"] = as;
  j["n_range"] = {n_lo, n_hi};
  j["N_range"] = {N_lo, N_hi};
  j["sample_points"] = sample_points;
  return j;
}

// ---------------------------------------------------------------------------
// galois
// ---------------------------------------------------------------------------

Report run_galois(const RunConfig& cfg) {
  Report rep("galois", cfg.to_json());
  Stopwatch sw;
  S4Certificate ff = s4_over_function_field();
  rep.add_check("function-field-certificate", ff.valid(),
                ordered_json::parse(certificate_to_json(ff)), sw.seconds());
  rep.add_check("discriminant-form", ff.discriminant == "256*a^3 - 27",
                ordered_json{{"discriminant", ff.discriminant}});
  for (const auto& a : cfg.a_values) {
    Stopwatch sa;
    S4Certificate c = s4_at_rational(a);
    rep.add_check("rational-certificate a=" + rational_to_string(a), c.valid(),
                  ordered_json::parse(certificate_to_json(c)), sa.seconds());
  }
  S4Audit audit = s4_random_audit(100, cfg.seed);
  rep.add_section("random_audit", ordered_json{{"total", audit.total},
                                               {"passed", audit.passed},
                                               {"note", "soft statistical audit, reported only"}});
  return rep;
}

// ---------------------------------------------------------------------------
// example21
// ---------------------------------------------------------------------------

namespace {

ordered_json check_t_json(const CheckTResult& r) {
  ordered_json j;
  j["satisfied"] = r.satisfied;
  j["detail"] = r.detail;
  if (r.witness) j["witness"] = r.witness->to_string();
  if (r.witness_root_index >= 0) j["witness_root_index"] = r.witness_root_index + 1;
  if (!r.satisfied) j["separation_lower_bound"] = r.separation.to_double();
  return j;
}

}  // namespace

Report run_example21(const RunConfig& cfg) {
  Report rep("example21", cfg.to_json());
  for (const auto& a : cfg.a_values) {
    std::string tag = " a=" + rational_to_string(a);
    S4Certificate cert = s4_at_rational(a);
    if (!cert.valid()) {
      rep.add_section("skipped" + tag, ordered_json{{"reason", "certificate failed"}});
      continue;
    }
    rep.add_check("parameter certificate" + tag, cert.valid(),
                  ordered_json{{"discriminant", cert.discriminant}});
    Stopwatch sw;
    ThetaContext ctx = build_theta_context(ThetaFamily::QuarticXPlusA, 4, a, cfg.precision_bits);
    auto [hub, rim] = triangle_star_configs(ctx);
    CheckTResult t_hub = check_T(ctx, hub);
    rep.add_check("triangle satisfies T" + tag,
                  t_hub.satisfied && t_hub.witness_root_index == 3, check_t_json(t_hub),
                  sw.seconds());
    CheckTResult t_rim = check_T(ctx, rim);
    rep.add_check("star fails T" + tag, !t_rim.satisfied && t_rim.separation.sign() > 0,
                  check_t_json(t_rim));
    // All six relabelings of the star tuple fail as well.
    std::vector<int> perm{0, 1, 2};
    bool all_fail = true;
    do {
      ConfigTuple relabeled;
      relabeled.provenance = "star relabeled";
      for (int i : perm) relabeled.values.push_back(rim.values[static_cast<size_t>(i)]);
      CheckTResult r = check_T(ctx, relabeled);
      if (r.satisfied) all_fail = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    rep.add_check("all 6 star relabelings fail" + tag, all_fail, ordered_json::object());
    // Vieta anchors: hub entries add to +2*z4, rim entries to -2*z4.
    {
      long bits = cfg.precision_bits;
      ComplexBall twice = ctx.root_ball(3, bits).scale(Rat(2), bits);
      ComplexBall sh, sr;
      for (const auto& v : hub.values) sh = sh + root_sum_ball(ctx, v, bits);
      for (const auto& v : rim.values) sr = sr + root_sum_ball(ctx, v, bits);
      bool anchors = (sh - twice).contains_zero() && (sr + twice).contains_zero();
      rep.add_check("tuple sums anchor to 2*z4 and -2*z4" + tag, anchors, ordered_json::object());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// combi
// ---------------------------------------------------------------------------

Report run_combi(const RunConfig& cfg) {
  Report rep("combi", cfg.to_json());
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    Stopwatch sw;
    std::string tag = " n=" + std::to_string(n);
    LStructure X = build_X(n), Y = build_Y(n);
    size_t expect = size_t{1} << (n - 1);
    rep.add_check("universe sizes are 2^(n-1)" + tag,
                  X.size() == expect && Y.size() == expect,
                  ordered_json{{"size", X.size()}});
    rep.add_check("both structures symmetric" + tag,
                  is_symmetric(X).symmetric && is_symmetric(Y).symmetric, ordered_json::object());
    bool reducts_ok = true;
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    for (int drop = 1; drop <= n; ++drop) {
      std::vector<int> keep;
      for (int i : all)
        if (i != drop) keep.push_back(i);
      if (!find_reduct_iso(X, Y, keep)) reducts_ok = false;
    }
    rep.add_check("every (n-1)-reduct isomorphic" + tag, reducts_ok, ordered_json::object());
    IsoCertificate full = full_iso_certificate(X, Y);
    rep.add_check("full signature NONISO via intersection" + tag,
                  !full.isomorphic && full.by_intersection,
                  ordered_json{{"reason", full.reason}}, sw.seconds());
    if (n <= 4) {
      auto brute = brute_force_iso(X, Y);
      rep.add_check("exhaustive search agrees" + tag, !brute.has_value(),
                    ordered_json::object());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// theta (subset sums)
// ---------------------------------------------------------------------------

Report run_theta(const RunConfig& cfg) {
  Report rep("theta", cfg.to_json());
  for (int N = cfg.N_lo; N <= cfg.N_hi; ++N) {
    bool done = false;
    ordered_json attempts = ordered_json::array();
    for (const auto& a : cfg.a_values) {
      ordered_json attempt;
      attempt["a"] = rational_to_string(a);
      ThetaContext ctx;
      try {
        ctx = build_theta_context(ThetaFamily::PowerPlusPrev, N, a, cfg.precision_bits);
      } catch (const std::exception& e) {
        attempt["context"] = std::string("rejected: ") + e.what();
        attempts.push_back(attempt);
        continue;
      }
      bool all_k = true;
      Dyadic min_sep;
      bool first = true;
      ordered_json ks = ordered_json::array();
      for (int k = 1; k <= N && all_k; ++k) {
        SubsetSumReport r = subset_sum_injective(ctx, k);
        ks.push_back(ordered_json{{"k", k},
                                  {"injective", r.injective},
                                  {"pairs", r.pairs},
                                  {"min_separation", r.min_separation.to_double()}});
        if (!r.injective) {
          all_k = false;
          attempt["collision"] = r.collision;
        } else if (r.pairs > 0 && (first || r.min_separation < min_sep)) {
          min_sep = r.min_separation;
          first = false;
        }
      }
      attempt["k_reports"] = ks;
      attempts.push_back(attempt);
      if (all_k) {
        rep.add_check("subset sums injective N=" + std::to_string(N), min_sep.sign() > 0,
                      ordered_json{{"a", rational_to_string(a)},
                                   {"min_separation", min_sep.to_double()}});
        done = true;
        break;
      }
    }
    if (!done)
      rep.add_check("subset sums injective N=" + std::to_string(N), false,
                    ordered_json{{"note", "no configured parameter passed; pick another"},
                                 {"attempts", attempts}});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// claimB / binarize
// ---------------------------------------------------------------------------

Report run_claim_b(const RunConfig& cfg) {
  Report rep("claimB", cfg.to_json());
  rep.add_section(
      "scope",
      ordered_json{{"note",
                    "the bijection search certifies the finite combinatorial content at the "
                    "chosen rational parameter; the automorphism-extension step behind the "
                    "full equivalence claim has no finite certificate and is out of scope"}});
  for (int n : {3, 4}) {
    int N = 1 << (n - 1);
    Stopwatch sw;
    ThetaContext ctx = build_theta_context(ThetaFamily::PowerPlusPrev, N, cfg.a_values.at(0),
                                           cfg.precision_bits);
    ClaimBReport r = claim_B_check(n, ctx);
    rep.add_check("no bijection matches the odd-side sums n=" + std::to_string(n), r.passed,
                  ordered_json{{"searched", r.searched},
                               {"matching", r.matching_psi},
                               {"even_side_satisfiable", r.tuple_satisfiable_even},
                               {"tampered_sanity", r.tampered_sanity},
                               {"double_precision_agrees", r.double_precision_agrees},
                               {"detail", r.detail}},
                  sw.seconds());
  }
  return rep;
}

Report run_binarize(const RunConfig& cfg) {
  Report rep("binarize", cfg.to_json());
  Stopwatch sw;
  ThetaContext ctx =
      build_theta_context(ThetaFamily::PowerPlusPrev, 4, cfg.a_values.at(0), cfg.precision_bits);
  BinarizationReport r = binarization_check(3, ctx, 20);
  ordered_json items = ordered_json::array();
  for (const auto& it : r.items)
    items.push_back(ordered_json{{"label", it.label},
                                 {"via_sums", it.via_sums},
                                 {"via_witnesses", it.via_witnesses},
                                 {"agree", it.agree}});
  rep.add_check("the two definitions agree on all tuples", r.passed,
                ordered_json{{"positives", r.positives}, {"negatives", r.negatives},
                             {"items", items}},
                sw.seconds());
  return rep;
}

// ---------------------------------------------------------------------------
// qe corpus
// ---------------------------------------------------------------------------

namespace {

struct CorpusEntry {
  std::string name;
  std::string text;
  std::string expect;  // optional quantifier-free equivalent, from "; expect:"
};

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<CorpusEntry> out;
  for (const auto& e : fs::directory_iterator(fs::path(dir) / "corpus")) {
    if (e.path().extension() != ".sexp") continue;
    CorpusEntry entry{e.path().stem().string(), read_text_file(e.path().string()), ""};
    const std::string marker = "; expect:";
    auto pos = entry.text.find(marker);
    if (pos != std::string::npos) {
      auto eol = entry.text.find('\n', pos);
      entry.expect = entry.text.substr(pos + marker.size(),
                                       eol == std::string::npos ? std::string::npos
                                                                : eol - pos - marker.size());
    }
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  return out;
}

int max_atom_arity(const FormulaPtr& f) {
  int best = 0;
  if (f->kind == FKind::Atom) best = static_cast<int>(f->args.size());
  for (const auto& c : f->children) best = std::max(best, max_atom_arity(c));
  return best;
}

}  // namespace

Report run_qe_corpus(const RunConfig& cfg) {
  Report rep("qe-corpus", cfg.to_json());
  std::string dir = cfg.data_dir.empty() ? default_data_dir() : cfg.data_dir;
  ConstructibleCurveOracle oracle(cfg.seed, cfg.precision_bits);
  oracle.load_signature_json(read_text_file(dir + "/corpus_signature.json"));
  auto corpus = load_corpus(dir);
  QeOptions opts;
  size_t shape1 = 0;
  for (const auto& entry : corpus) {
    Stopwatch sw;
    FormulaPtr f;
    try {
      f = parse_formula(entry.text, oracle.sig());
      QeResult r = qe(f, oracle, opts);
      bool cylinder = is_cylinder_combination(r.formula, oracle.sig());
      std::string why;
      bool trace_ok = validate_trace(f, r, oracle, opts, &why);
      // Inputs with nested binders sit outside the point evaluator's
      // fragment; those entries carry an independently derived equivalent.
      FormulaPtr reference = f;
      if (!entry.expect.empty()) reference = parse_formula(entry.expect, oracle.sig());
      EquivalenceReport eq = check_equivalence_sampled(reference, r.formula, oracle,
                                                       cfg.sample_points, cfg.seed ^ 0x51u);
      bool pass = cylinder && trace_ok && eq.agreed();
      ordered_json detail{{"input", entry.text},
                          {"output", print_formula(r.formula, oracle.sig())},
                          {"cylinder", cylinder},
                          {"trace_valid", trace_ok},
                          {"points", eq.points_checked},
                          {"mismatches", eq.disagreements}};
      if (!trace_ok) detail["trace_problem"] = why;
      if (!eq.witnesses.empty()) detail["witnesses"] = eq.witnesses;
      if (entry.name == "f22_ternary") {
        detail["max_output_arity"] = max_atom_arity(r.formula);
        rep.add_check("ternary relation output uses arity >= 3",
                      max_atom_arity(r.formula) >= 3, detail);
      }
      rep.add_check("corpus " + entry.name, pass, detail, sw.seconds());
      if (entry.name.rfind("f", 0) == 0 && entry.name < "f22") ++shape1;
    } catch (const std::exception& e) {
      rep.add_check("corpus " + entry.name, false,
                    ordered_json{{"input", entry.text}, {"error", e.what()}}, sw.seconds());
    }
  }
  rep.add_check("corpus has at least 20 single-block formulas", shape1 >= 20,
                ordered_json{{"count", shape1}});
  return rep;
}

// ---------------------------------------------------------------------------
// kernel property battery (independent oracles)
// ---------------------------------------------------------------------------

namespace {

// Univariate resultant by Sylvester-matrix determinant: the independent
// oracle for the subresultant implementation.
Rat sylvester_resultant(const UPoly& p, const UPoly& q) {
  int m = p.degree(), n = q.degree();
  if (m < 0 || n < 0) return Rat(0);
  if (m == 0 && n == 0) return Rat(1);
  size_t dim = static_cast<size_t>(m + n);
  std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(dim, Rat(0)));
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) a[static_cast<size_t>(row)][static_cast<size_t>(row + k)] = p.coeff(m - k);
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k)
      a[static_cast<size_t>(n + row)][static_cast<size_t>(row + k)] = q.coeff(n - k);
  // Fraction-free-ish Gaussian elimination over Q.
  Rat det(1);
  for (size_t col = 0; col < dim; ++col) {
    size_t piv = col;
    while (piv < dim && a[piv][col] == 0) ++piv;
    if (piv == dim) return Rat(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Rat inv = Rat(1) / a[col][col];
    for (size_t r = col + 1; r < dim; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] * inv;
      for (size_t c = col; c < dim; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

MultiPoly random_bivariate(SeededRng& rng, const std::string& xv, const std::string& yv,
                           int max_deg, int terms) {
  MultiPoly p;
  for (int t = 0; t < terms; ++t) {
    unsigned dx = static_cast<unsigned>(rng.next() % static_cast<std::uint64_t>(max_deg + 1));
    unsigned dy = static_cast<unsigned>(rng.next() % static_cast<std::uint64_t>(max_deg + 1));
    Rat c = rng.next_rational(9, 3);
    if (c == 0) c = Rat(1);
    p = p + MultiPoly::var(xv).pow(dx) * MultiPoly::var(yv).pow(dy) * c;
  }
  return p;
}

}  // namespace

Report run_kernel_properties(const RunConfig& cfg) {
  Report rep("kernel", cfg.to_json());
  SeededRng rng(cfg.seed ^ 0xfeedu);

  {  // Resultant specialization against the Sylvester oracle.
    Stopwatch sw;
    int failures = 0, done = 0;
    while (done < 50) {
      MultiPoly p = random_bivariate(rng, "x", "y", 3, 4);
      MultiPoly q = random_bivariate(rng, "x", "y", 3, 4);
      if (p.degree("y") < 1 || q.degree("y") < 1) continue;
      MultiPoly r = resultant(p, q, "y");
      Rat x0 = rng.next_rational(50, 8);
      MultiPoly ps = p.substitute("x", x0), qs = q.substitute("x", x0);
      if (ps.degree("y") != p.degree("y") || qs.degree("y") != q.degree("y")) continue;
      Rat direct = sylvester_resultant(ps.to_upoly("y"), qs.to_upoly("y"));
      Rat via = r.is_zero() ? Rat(0)
                            : (r.is_constant() ? r.constant_value() : r.substitute("x", x0).constant_value());
      if (direct != via) ++failures;
      ++done;
    }
    rep.add_check("resultant specializes (50 draws)", failures == 0,
                  ordered_json{{"failures", failures}}, sw.seconds());
  }

  {  // Root isolation reconstructs the square-free input.
    Stopwatch sw;
    int failures = 0;
    for (int t = 0; t < 12; ++t) {
      int deg = 2 + static_cast<int>(rng.next() % 7);  // up to 8
      std::vector<Rat> cs;
      for (int i = 0; i < deg; ++i) cs.push_back(rng.next_rational(6, 3));
      cs.push_back(Rat(1));
      UPoly p = squarefree_part(UPoly(std::move(cs)));
      if (p.degree() < 2) continue;
      auto roots = isolate_roots(p, 96);
      // Expand prod (X - ball_i) in ball arithmetic; exact coefficients must
      // lie inside the coefficient enclosures.
      std::vector<ComplexBall> coeff(1, ComplexBall::from_rational(Rat(1), Rat(0), 160));
      for (const auto& r : roots) {
        std::vector<ComplexBall> next(coeff.size() + 1);
        for (size_t i = 0; i < coeff.size(); ++i) {
          next[i + 1] = (next[i + 1] + coeff[i]).rounded(160);
          next[i] = (next[i] - coeff[i] * r).rounded(160);
        }
        coeff = next;
      }
      for (int k = 0; k <= p.degree(); ++k) {
        ComplexBall diff = coeff[static_cast<size_t>(k)] -
                           ComplexBall::from_rational(p.coeff(k), Rat(0), 160);
        if (!diff.contains_zero()) ++failures;
      }
    }
    rep.add_check("isolated roots reconstruct the polynomial", failures == 0,
                  ordered_json{{"failures", failures}}, sw.seconds());
  }

  {  // Inclusion-exclusion rewrite against brute-force set systems.
    Stopwatch sw;
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
      int s = 1 + static_cast<int>(rng.next() % 3);
      int ground = 6;
      std::vector<std::uint32_t> sets;
      for (int j = 0; j < s; ++j)
        sets.push_back(static_cast<std::uint32_t>(rng.next() % (1u << ground)));
      std::uint32_t uni = 0;
      for (auto m : sets) uni |= m;
      long d = __builtin_popcount(uni);
      // Families as dummy unary atoms; family bound = set size.
      std::vector<std::vector<FormulaPtr>> fams;
      std::vector<long> bounds;
      for (int j = 0; j < s; ++j) {
        fams.push_back({f_atom("S" + std::to_string(j), {"y"})});
        bounds.push_back(__builtin_popcount(sets[static_cast<size_t>(j)]));
      }
      // Evaluate the emitted skeleton over the explicit system.
      std::function<bool(const FormulaPtr&)> eval = [&](const FormulaPtr& f) -> bool {
        switch (f->kind) {
          case FKind::True:
            return true;
          case FKind::False:
            return false;
          case FKind::Not:
            return !eval(f->children[0]);
          case FKind::And:
            for (const auto& c : f->children)
              if (!eval(c)) return false;
            return true;
          case FKind::Or:
            for (const auto& c : f->children)
              if (eval(c)) return true;
            return false;
          case FKind::CountExactly: {
            std::uint32_t inter = (1u << ground) - 1;
            std::function<void(const FormulaPtr&)> gather = [&](const FormulaPtr& g) {
              if (g->kind == FKind::Atom)
                inter &= sets[static_cast<size_t>(g->symbol[1] - '0')];
              for (const auto& c : g->children) gather(c);
            };
            gather(f->children[0]);
            return __builtin_popcount(inter) == f->count;
          }
          default:
            throw std::logic_error("unexpected node in skeleton");
        }
      };
      for (long dd = 0; dd <= static_cast<long>(ground); ++dd) {
        FormulaPtr skel = inclusion_exclusion_rewrite(dd, "y", fams, {}, bounds);
        bool predicted = eval(skel);
        if (predicted != (dd == d)) ++failures;
      }
    }
    rep.add_check("inclusion-exclusion matches brute force (100 systems)", failures == 0,
                  ordered_json{{"failures", failures}}, sw.seconds());
  }

  {  // Ball arithmetic encloses exact rational evaluation.
    Stopwatch sw;
    int failures = 0;
    for (int t = 0; t < 1000; ++t) {
      Rat a = rng.next_rational(40, 9), b = rng.next_rational(40, 9), c = rng.next_rational(40, 9);
      Rat exact = a * b + c * c - a + Rat(3, 7) * b;
      ComplexBall ba = ComplexBall::from_rational(a, Rat(0), 64);
      ComplexBall bb = ComplexBall::from_rational(b, Rat(0), 64);
      ComplexBall bc = ComplexBall::from_rational(c, Rat(0), 64);
      ComplexBall three7 = ComplexBall::from_rational(Rat(3, 7), Rat(0), 64);
      ComplexBall v = (ba * bb + bc * bc - ba + three7 * bb).rounded(64);
      ComplexBall diff = v - ComplexBall::from_rational(exact, Rat(0), 128);
      if (!diff.contains_zero()) ++failures;
    }
    rep.add_check("ball arithmetic encloses exact values (1000 draws)", failures == 0,
                  ordered_json{{"failures", failures}}, sw.seconds());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// the acceptance gate
// ---------------------------------------------------------------------------

Report run_all(const RunConfig& cfg) {
  Report rep("all", cfg.to_json());
  auto gate = [&](const std::string& name, Report (*fn)(const RunConfig&), double budget,
                  const RunConfig& c) {
    Stopwatch sw;
    bool ok = false;
    ordered_json detail;
    try {
      Report sub = fn(c);
      ok = sub.all_passed();
      detail = ordered_json{{"failures", sub.failures()}, {"report", sub.to_json()}};
    } catch (const std::exception& e) {
      detail = ordered_json{{"error", e.what()}};
    }
    double secs = sw.seconds();
    bool within = secs < budget;
    detail["budget_seconds"] = budget;
    rep.add_check(name, ok && within, std::move(detail), secs);
  };

  {  // Criterion 1 runs the function-field part only, under its own budget.
    Stopwatch sw;
    S4Certificate ff = s4_over_function_field();
    bool ok = ff.valid() && ff.discriminant == "256*a^3 - 27";
    double secs = sw.seconds();
    rep.add_check("1 function-field certificate", ok && secs < 1.0,
                  ordered_json{{"discriminant", ff.discriminant}, {"budget_seconds", 1.0}},
                  secs);
  }
  {
    RunConfig c2 = cfg;
    c2.a_values = {Rat(1)};
    gate("2 triangle/star reproduction", run_example21, 5.0, c2);
  }
  gate("3 odd/even structures", run_combi, 10.0, cfg);
  gate("4 subset-sum injectivity", run_theta, 30.0, cfg);
  gate("5 bijection search refutation", run_claim_b, 60.0, cfg);
  gate("6 binarized relation agreement", run_binarize, 60.0, cfg);
  gate("7+8 elimination corpus", run_qe_corpus, 120.0, cfg);
  gate("9 kernel property battery", run_kernel_properties, 30.0, cfg);
  return rep;
}

}  // namespace cqe
