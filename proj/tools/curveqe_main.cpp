// Command-line front end; talks to the engine exclusively through the shared
// library's C interface.

#include <curveqe.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CommonFlags {
  std::uint64_t seed = 20240801;
  unsigned precision_bits = 128;
  std::vector<std::string> a_values;
  std::string n_range, N_range;
  std::string out_path;
  std::string format = "json";
  bool force_json = false;
  std::string data_dir;
  unsigned sample_points = 500;
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
  cmd->add_option("--seed", fl.seed, "deterministic seed");
  cmd->add_option("--precision-bits", fl.precision_bits, "working precision (<= 4096)");
  cmd->add_option("--a", fl.a_values, "rational parameter values, e.g. --a 1 --a 5/7");
  cmd->add_option("--n", fl.n_range, "predicate-count range, e.g. 2..6");
  cmd->add_option("--N", fl.N_range, "root-count range, e.g. 4..8");
  cmd->add_option("--out", fl.out_path, "write the report to this file");
  cmd->add_option("--format", fl.format, "json or markdown")
      ->check(CLI::IsMember({"json", "markdown"}));
  cmd->add_flag("--json", fl.force_json, "shorthand for --format json");
  cmd->add_option("--data-dir", fl.data_dir, "corpus directory (defaults to the shipped data)");
  cmd->add_option("--sample-points", fl.sample_points, "points per equivalence check");
}

std::pair<int, int> parse_range(const std::string& text, int lo, int hi) {
  if (text.empty()) return {lo, hi};
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int v = std::stoi(text);
    return {v, v};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

std::string config_json(const CommonFlags& fl) {
  ordered_json j;
  j["seed"] = fl.seed;
  j["precision_bits"] = fl.precision_bits;
  if (!fl.a_values.empty()) j["a_values"] = fl.a_values;
  auto [nlo, nhi] = parse_range(fl.n_range, 2, 6);
  j["n_range"] = {nlo, nhi};
  auto [Nlo, Nhi] = parse_range(fl.N_range, 4, 8);
  j["N_range"] = {Nlo, Nhi};
  if (!fl.data_dir.empty()) j["data_dir"] = fl.data_dir;
  j["sample_points"] = fl.sample_points;
  return j.dump();
}

std::string render_markdown(const std::string& report_json) {
  auto j = ordered_json::parse(report_json);
  std::ostringstream os;
  os << "# " << j.value("command", "report") << "\n\ntool: " << j.value("tool", "") << "\n\n";
  if (j.contains("checks")) {
    os << "| check | status |\n|---|---|\n";
    for (const auto& c : j["checks"])
      os << "| " << c.value("name", "") << " | " << c.value("status", "") << " |\n";
  }
  os << "\noverall: " << j.value("status", "") << "\n";
  return os.str();
}

int emit(const CommonFlags& fl, const std::string& report_json, cqe_status status) {
  std::string text = (fl.format == "markdown" && !fl.force_json)
                         ? render_markdown(report_json)
                         : report_json;
  if (!fl.out_path.empty()) {
    std::ofstream out(fl.out_path);
    if (!out) {
      std::cerr << "cannot write " << fl.out_path << "\n";
      return 3;
    }
    out << text << "\n";
  } else {
    std::cout << text << "\n";
  }
  if (status == CQE_OK) return 0;
  if (status == CQE_ERR_CHECK_FAILED) return 1;
  return 3;
}

int run_report_command(const CommonFlags& fl,
                       cqe_status (*fn)(const char*, char**)) {
  char* report = nullptr;
  cqe_status st = fn(config_json(fl).c_str(), &report);
  if (!report) {
    std::cerr << "error: " << cqe_status_name(st) << ": " << cqe_last_error(nullptr) << "\n";
    return 3;
  }
  std::string text(report);
  cqe_string_free(report);
  return emit(fl, text, st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curveqe: exact elimination and counterexample workbench for plane-curve "
               "vocabularies"};
  app.require_subcommand(1);

  CommonFlags fl;
  std::string formula_path, signature_path, point_json, formula_inline;

  auto* qe_cmd = app.add_subcommand("qe", "eliminate a formula file over a signature");
  add_common(qe_cmd, fl);
  qe_cmd->add_option("--formula", formula_path, "formula file (prefix grammar)");
  qe_cmd->add_option("--formula-text", formula_inline, "formula given inline");
  qe_cmd->add_option("--signature", signature_path, "signature JSON file")->required();

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula at a rational point");
  add_common(eval_cmd, fl);
  eval_cmd->add_option("--formula", formula_path, "formula file");
  eval_cmd->add_option("--formula-text", formula_inline, "formula given inline");
  eval_cmd->add_option("--signature", signature_path, "signature JSON file")->required();
  eval_cmd->add_option("--point", point_json, "JSON point, e.g. {\"x\":\"3/2\"}")->required();

  auto* galois_cmd = app.add_subcommand("galois", "symmetric-group certificates for the quartic family");
  add_common(galois_cmd, fl);
  auto* ex21_cmd = app.add_subcommand("example21", "triangle/star ternary-relation reproduction");
  add_common(ex21_cmd, fl);
  auto* combi_cmd = app.add_subcommand("combi", "odd/even symmetric structures over an n range");
  add_common(combi_cmd, fl);
  auto* theta_cmd = app.add_subcommand("theta", "subset-sum injectivity over root systems");
  add_common(theta_cmd, fl);
  auto* claimb_cmd = app.add_subcommand("claimB", "exhaustive bijection-search refutation");
  add_common(claimb_cmd, fl);
  auto* binarize_cmd = app.add_subcommand("binarize", "binary-relation encoding agreement");
  add_common(binarize_cmd, fl);
  auto* corpus_cmd = app.add_subcommand("corpus", "run the shipped elimination corpus");
  add_common(corpus_cmd, fl);
  auto* kernel_cmd = app.add_subcommand("kernel", "algebra kernel property battery");
  add_common(kernel_cmd, fl);
  auto* all_cmd = app.add_subcommand("all", "full acceptance suite");
  add_common(all_cmd, fl);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(qe_cmd) || app.got_subcommand(eval_cmd)) {
      std::string formula = formula_inline.empty() ? read_file(formula_path) : formula_inline;
      cqe_workspace* ws = cqe_workspace_new(fl.seed, fl.precision_bits);
      if (!ws) {
        std::cerr << "bad workspace parameters\n";
        return 2;
      }
      cqe_status st = cqe_load_signature(ws, read_file(signature_path).c_str());
      if (st != CQE_OK) {
        std::cerr << "signature: " << cqe_last_error(ws) << "\n";
        cqe_workspace_free(ws);
        return 2;
      }
      int rc = 0;
      if (app.got_subcommand(qe_cmd)) {
        char* result = nullptr;
        char* trace = nullptr;
        st = cqe_qe(ws, formula.c_str(), &result, &trace);
        if (st != CQE_OK) {
          std::cerr << "qe: " << cqe_status_name(st) << ": " << cqe_last_error(ws) << "\n";
          rc = 3;
        } else {
          char* equiv = nullptr;
          cqe_check_equivalence(ws, formula.c_str(), result, fl.sample_points, &equiv);
          char* constants = nullptr;
          cqe_constants(ws, &constants);
          ordered_json j;
          j["input"] = formula;
          j["result"] = result;
          if (constants) j["constants"] = ordered_json::parse(constants);
          cqe_string_free(constants);
          j["trace"] = ordered_json::parse(trace);
          if (equiv) j["equivalence"] = ordered_json::parse(equiv);
          bool agreed = equiv && j["equivalence"].value("agreed", false);
          j["status"] = agreed ? "pass" : "fail";
          CommonFlags fj = fl;
          fj.format = "json";
          rc = emit(fj, j.dump(2), agreed ? CQE_OK : CQE_ERR_CHECK_FAILED);
          cqe_string_free(equiv);
        }
        cqe_string_free(result);
        cqe_string_free(trace);
      } else {
        int truth = 0;
        st = cqe_eval(ws, formula.c_str(), point_json.c_str(), &truth);
        if (st != CQE_OK) {
          std::cerr << "eval: " << cqe_status_name(st) << ": " << cqe_last_error(ws) << "\n";
          rc = 3;
        } else {
          ordered_json j;
          j["formula"] = formula;
          j["point"] = ordered_json::parse(point_json);
          j["value"] = truth != 0;
          CommonFlags fj = fl;
          fj.format = "json";
          rc = emit(fj, j.dump(2), CQE_OK);
        }
      }
      cqe_workspace_free(ws);
      return rc;
    }
    if (app.got_subcommand(galois_cmd)) return run_report_command(fl, cqe_galois);
    if (app.got_subcommand(ex21_cmd)) return run_report_command(fl, cqe_example21);
    if (app.got_subcommand(combi_cmd)) return run_report_command(fl, cqe_combi);
    if (app.got_subcommand(theta_cmd)) return run_report_command(fl, cqe_theta);
    if (app.got_subcommand(claimb_cmd)) return run_report_command(fl, cqe_claim_b);
    if (app.got_subcommand(binarize_cmd)) return run_report_command(fl, cqe_binarize);
    if (app.got_subcommand(corpus_cmd)) return run_report_command(fl, cqe_qe_corpus);
    if (app.got_subcommand(kernel_cmd)) return run_report_command(fl, cqe_kernel_properties);
    if (app.got_subcommand(all_cmd)) return run_report_command(fl, cqe_run_all);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
