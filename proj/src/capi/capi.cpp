#include "curveqe.h"

#include "curves/curveset.hpp"
#include "qe/engine.hpp"
#include "qe/equivalence.hpp"
#include "report/acceptance.hpp"
#include "report/report.hpp"

#include <cstring>
#include <string>

using namespace cqe;

struct cqe_workspace {
  ConstructibleCurveOracle oracle;
  RunConfig config;
  bool signature_loaded = false;
  std::string last_error;

  cqe_workspace(uint64_t seed, uint32_t precision)
      : oracle(seed, static_cast<long>(precision)) {
    config.seed = seed;
    config.precision_bits = static_cast<long>(precision);
  }
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(cqe_workspace* ws, const std::string& msg) {
  if (ws)
    ws->last_error = msg;
  else
    g_last_error = msg;
}

cqe_status classify(const std::exception& e, cqe_workspace* ws) {
  set_error(ws, e.what());
  if (dynamic_cast<const ParseError*>(&e)) return CQE_ERR_PARSE;
  if (dynamic_cast<const UnsupportedFragment*>(&e)) return CQE_ERR_UNSUPPORTED;
  if (dynamic_cast<const UnsupportedShape*>(&e)) return CQE_ERR_UNSUPPORTED;
  if (dynamic_cast<const EngineLimit*>(&e)) return CQE_ERR_UNSUPPORTED;
  if (dynamic_cast<const PrecisionExceeded*>(&e)) return CQE_ERR_PRECISION;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return CQE_ERR_INVALID_ARGUMENT;
  return CQE_ERR_INTERNAL;
}

RunConfig config_from_json(const char* config_json) {
  RunConfig cfg;
  if (!config_json || !*config_json) return cfg;
  auto j = ordered_json::parse(config_json);
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("precision_bits")) cfg.precision_bits = j.at("precision_bits").get<long>();
  if (j.contains("a_values")) {
    cfg.a_values.clear();
    for (const auto& a : j.at("a_values")) cfg.a_values.push_back(parse_rational(a.get<std::string>()));
    if (cfg.a_values.empty()) throw std::invalid_argument("a_values must be nonempty");
  }
  if (j.contains("n_range")) {
    cfg.n_lo = j.at("n_range").at(0).get<int>();
    cfg.n_hi = j.at("n_range").at(1).get<int>();
  }
  if (j.contains("N_range")) {
    cfg.N_lo = j.at("N_range").at(0).get<int>();
    cfg.N_hi = j.at("N_range").at(1).get<int>();
  }
  if (j.contains("data_dir")) cfg.data_dir = j.at("data_dir").get<std::string>();
  if (j.contains("sample_points")) cfg.sample_points = j.at("sample_points").get<size_t>();
  if (cfg.precision_bits < 16 || cfg.precision_bits > kPrecisionCapBits)
    throw std::invalid_argument("precision_bits out of range");
  return cfg;
}

cqe_status run_report(const char* config_json, char** out, Report (*fn)(const RunConfig&)) {
  try {
    RunConfig cfg = config_from_json(config_json);
    Report rep = fn(cfg);
    if (out) *out = dup_string(rep.to_json_text());
    return rep.all_passed() ? CQE_OK : CQE_ERR_CHECK_FAILED;
  } catch (const std::exception& e) {
    return classify(e, nullptr);
  }
}

}  // namespace

extern "C" {

const char* cqe_version(void) { return kToolVersion; }

const char* cqe_status_name(cqe_status status) {
  switch (status) {
    case CQE_OK: return "ok";
    case CQE_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case CQE_ERR_PARSE: return "parse-error";
    case CQE_ERR_UNSUPPORTED: return "unsupported";
    case CQE_ERR_PRECISION: return "precision-exceeded";
    case CQE_ERR_CHECK_FAILED: return "check-failed";
    case CQE_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

cqe_workspace* cqe_workspace_new(uint64_t seed, uint32_t precision_bits) {
  if (precision_bits < 16 || precision_bits > kPrecisionCapBits) return nullptr;
  try {
    return new cqe_workspace(seed, precision_bits);
  } catch (...) {
    return nullptr;
  }
}

void cqe_workspace_free(cqe_workspace* ws) { delete ws; }

const char* cqe_last_error(const cqe_workspace* ws) {
  return ws ? ws->last_error.c_str() : g_last_error.c_str();
}

cqe_status cqe_load_signature(cqe_workspace* ws, const char* signature_json) {
  if (!ws || !signature_json) return CQE_ERR_INVALID_ARGUMENT;
  if (ws->signature_loaded) {
    set_error(ws, "signature already loaded in this workspace");
    return CQE_ERR_INVALID_ARGUMENT;
  }
  try {
    ws->oracle.load_signature_json(signature_json);
    ws->signature_loaded = true;
    return CQE_OK;
  } catch (const std::exception& e) {
    return classify(e, ws);
  }
}

cqe_status cqe_parse_formula(cqe_workspace* ws, const char* text, char** normalized_out) {
  if (!ws || !text) return CQE_ERR_INVALID_ARGUMENT;
  try {
    FormulaPtr f = parse_formula(text, ws->oracle.sig());
    if (normalized_out) *normalized_out = dup_string(print_formula(f, ws->oracle.sig()));
    return CQE_OK;
  } catch (const std::exception& e) {
    return classify(e, ws);
  }
}

cqe_status cqe_qe(cqe_workspace* ws, const char* formula_text, char** result_out,
                  char** trace_json_out) {
  if (!ws || !formula_text) return CQE_ERR_INVALID_ARGUMENT;
  try {
    FormulaPtr f = parse_formula(formula_text, ws->oracle.sig());
    QeResult r = qe(f, ws->oracle, QeOptions{});
    if (result_out) *result_out = dup_string(print_formula(r.formula, ws->oracle.sig()));
    if (trace_json_out) *trace_json_out = dup_string(r.trace.to_json());
    return CQE_OK;
  } catch (const std::exception& e) {
    return classify(e, ws);
  }
}

cqe_status cqe_check_equivalence(cqe_workspace* ws, const char* formula_a,
                                 const char* formula_b, uint32_t samples,
                                 char** report_json_out) {
  if (!ws || !formula_a || !formula_b) return CQE_ERR_INVALID_ARGUMENT;
  try {
    FormulaPtr fa = parse_formula(formula_a, ws->oracle.sig());
    FormulaPtr fb = parse_formula(formula_b, ws->oracle.sig());
    EquivalenceReport rep =
        check_equivalence_sampled(fa, fb, ws->oracle, samples, ws->config.seed);
    if (report_json_out) *report_json_out = dup_string(rep.to_json());
    return CQE_OK;
  } catch (const std::exception& e) {
    return classify(e, ws);
  }
}

cqe_status cqe_eval(cqe_workspace* ws, const char* formula_text, const char* point_json,
                    int* truth_out) {
  if (!ws || !formula_text || !point_json || !truth_out) return CQE_ERR_INVALID_ARGUMENT;
  try {
    FormulaPtr f = parse_formula(formula_text, ws->oracle.sig());
    auto j = ordered_json::parse(point_json);
    std::map<std::string, AlgebraicNumber> pt;
    for (auto it = j.begin(); it != j.end(); ++it)
      pt.emplace(it.key(), AlgebraicNumber(parse_rational(it.value().get<std::string>())));
    *truth_out = eval_formula(f, ws->oracle, pt) ? 1 : 0;
    return CQE_OK;
  } catch (const std::exception& e) {
    return classify(e, ws);
  }
}

cqe_status cqe_constants(cqe_workspace* ws, char** constants_json_out) {
  if (!ws || !constants_json_out) return CQE_ERR_INVALID_ARGUMENT;
  try {
    ordered_json j;
    const Signature& sig = ws->oracle.sig();
    for (size_t id = 0; id < sig.constant_count(); ++id)
      j[sig.constant_name(id)] = ordered_json::parse(algnum_to_json(sig.constant(id)));
    *constants_json_out = dup_string(j.dump());
    return CQE_OK;
  } catch (const std::exception& e) {
    return classify(e, ws);
  }
}

cqe_status cqe_galois(const char* c, char** out) { return run_report(c, out, run_galois); }
cqe_status cqe_example21(const char* c, char** out) { return run_report(c, out, run_example21); }
cqe_status cqe_combi(const char* c, char** out) { return run_report(c, out, run_combi); }
cqe_status cqe_theta(const char* c, char** out) { return run_report(c, out, run_theta); }
cqe_status cqe_claim_b(const char* c, char** out) { return run_report(c, out, run_claim_b); }
cqe_status cqe_binarize(const char* c, char** out) { return run_report(c, out, run_binarize); }
cqe_status cqe_qe_corpus(const char* c, char** out) { return run_report(c, out, run_qe_corpus); }
cqe_status cqe_kernel_properties(const char* c, char** out) {
  return run_report(c, out, run_kernel_properties);
}
cqe_status cqe_run_all(const char* c, char** out) { return run_report(c, out, run_all); }

void cqe_string_free(char* s) { std::free(s); }

}  // extern "C"
