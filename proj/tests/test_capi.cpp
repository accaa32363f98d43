#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <curveqe.h>

#include <nlohmann/json.hpp>

#include <string>

namespace {

const char* kSignature = R"({
  "symbols": [
    {"name": "parab", "arity": 2, "curve": {"kind": "plane", "arity": 2, "polys": ["x2 - x1^2"]}},
    {"name": "circ",  "arity": 2, "curve": {"kind": "plane", "arity": 2, "polys": ["x1^2 + x2^2 - 1"]}}
  ]
})";

std::string strip_timing(const std::string& report) {
  auto j = nlohmann::ordered_json::parse(report);
  j.erase("timing");
  return j.dump();
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(cqe_version()).find("curveqe") != std::string::npos);
  CHECK(std::string(cqe_status_name(CQE_OK)) == "ok");
  CHECK(std::string(cqe_status_name(CQE_ERR_PARSE)) == "parse-error");
}

TEST_CASE("workspace lifecycle and parameter validation") {
  CHECK(cqe_workspace_new(1, 8) == nullptr);      // below the minimum precision
  CHECK(cqe_workspace_new(1, 100000) == nullptr); // above the cap
  cqe_workspace* ws = cqe_workspace_new(42, 128);
  REQUIRE(ws != nullptr);
  cqe_workspace_free(ws);
}

TEST_CASE("signature loading, parsing, elimination, evaluation") {
  cqe_workspace* ws = cqe_workspace_new(42, 128);
  REQUIRE(ws != nullptr);
  REQUIRE(cqe_load_signature(ws, kSignature) == CQE_OK);
  CHECK(cqe_load_signature(ws, kSignature) == CQE_ERR_INVALID_ARGUMENT);  // once only

  char* normalized = nullptr;
  REQUIRE(cqe_parse_formula(ws, "(exists y (and (parab x y) (circ x y)))", &normalized) == CQE_OK);
  CHECK(std::string(normalized).find("exists") != std::string::npos);
  cqe_string_free(normalized);

  CHECK(cqe_parse_formula(ws, "(parab x)", nullptr) == CQE_ERR_PARSE);
  CHECK(std::string(cqe_last_error(ws)).find("arity") != std::string::npos);

  char* result = nullptr;
  char* trace = nullptr;
  REQUIRE(cqe_qe(ws, "(exists y (and (parab x y) (circ x y)))", &result, &trace) == CQE_OK);
  REQUIRE(result != nullptr);
  REQUIRE(trace != nullptr);
  CHECK(std::string(result).find("exists") == std::string::npos);
  auto tj = nlohmann::ordered_json::parse(trace);
  CHECK(tj.contains("steps"));

  char* equiv = nullptr;
  REQUIRE(cqe_check_equivalence(ws, "(exists y (and (parab x y) (circ x y)))", result, 120,
                                &equiv) == CQE_OK);
  auto ej = nlohmann::ordered_json::parse(equiv);
  CHECK(ej.at("agreed").get<bool>());
  cqe_string_free(equiv);
  cqe_string_free(result);
  cqe_string_free(trace);

  int truth = -1;
  REQUIRE(cqe_eval(ws, "(parab x y)", R"({"x":"2","y":"4"})", &truth) == CQE_OK);
  CHECK(truth == 1);
  REQUIRE(cqe_eval(ws, "(parab x y)", R"({"x":"2","y":"5"})", &truth) == CQE_OK);
  CHECK(truth == 0);
  cqe_workspace_free(ws);
}

TEST_CASE("null arguments are rejected") {
  CHECK(cqe_load_signature(nullptr, kSignature) == CQE_ERR_INVALID_ARGUMENT);
  cqe_workspace* ws = cqe_workspace_new(1, 64);
  CHECK(cqe_qe(ws, nullptr, nullptr, nullptr) == CQE_ERR_INVALID_ARGUMENT);
  cqe_workspace_free(ws);
}

TEST_CASE("report runs are deterministic modulo timing") {
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(cqe_galois("{\"seed\": 9}", &a) == CQE_OK);
  REQUIRE(cqe_galois("{\"seed\": 9}", &b) == CQE_OK);
  CHECK(strip_timing(a) == strip_timing(b));
  cqe_string_free(a);
  cqe_string_free(b);
}

TEST_CASE("combi experiment through the shared surface") {
  char* report = nullptr;
  cqe_status st = cqe_combi(R"({"n_range": [2, 4]})", &report);
  REQUIRE(report != nullptr);
  CHECK(st == CQE_OK);
  auto j = nlohmann::ordered_json::parse(report);
  CHECK(j.at("status").get<std::string>() == "pass");
  cqe_string_free(report);
}

TEST_CASE("bad config surfaces as invalid argument") {
  char* report = nullptr;
  CHECK(cqe_galois("{\"precision_bits\": 2}", &report) == CQE_ERR_INVALID_ARGUMENT);
  CHECK(report == nullptr);
}

TEST_CASE("experiment reports are reproducible bit-for-bit modulo timing") {
  char* a = nullptr;
  char* b = nullptr;
  const char* cfg = R"({"seed": 7, "a_values": ["1"]})";
  REQUIRE(cqe_example21(cfg, &a) == CQE_OK);
  REQUIRE(cqe_example21(cfg, &b) == CQE_OK);
  CHECK(strip_timing(a) == strip_timing(b));
  cqe_string_free(a);
  cqe_string_free(b);
}

TEST_CASE("eliminated formulas can dereference their constant handles") {
  cqe_workspace* ws = cqe_workspace_new(42, 128);
  REQUIRE(cqe_load_signature(ws, kSignature) == CQE_OK);
  char* result = nullptr;
  REQUIRE(cqe_qe(ws, "(exists y (and (parab x y) (circ x y)))", &result, nullptr) == CQE_OK);
  char* constants = nullptr;
  REQUIRE(cqe_constants(ws, &constants) == CQE_OK);
  auto j = nlohmann::ordered_json::parse(constants);
  // Every "= x <name>" in the result resolves in the table.
  std::string r(result);
  size_t pos = 0;
  while ((pos = r.find("(= x ", pos)) != std::string::npos) {
    size_t end = r.find(')', pos);
    std::string name = r.substr(pos + 5, end - pos - 5);
    CHECK(j.contains(name));
    pos = end;
  }
  cqe_string_free(result);
  cqe_string_free(constants);
  cqe_workspace_free(ws);
}
