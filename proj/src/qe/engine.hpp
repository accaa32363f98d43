#ifndef CQE_QE_ENGINE_HPP
#define CQE_QE_ENGINE_HPP

#include "qe/oracle.hpp"

#include <string>
#include <vector>

namespace cqe {

// One rewrite step in the audited elimination record.
struct TraceNode {
  std::string rule;  // grouping | positive | finite-(4) | infinite-(5) | section-(6) | inclexcl
  std::string input;
  std::string output;
  long negations = -1;  // negated-conjunct count for block-level steps
  std::vector<TraceNode> children;
};

struct EliminationTrace {
  std::vector<TraceNode> steps;
  std::string to_json() const;
};

// Caps that make the engine report instead of thrash.
struct QeOptions {
  size_t max_dnf_disjuncts = 256;
  long max_count_range = 64;
  size_t max_exceptional = 12;
};

struct QeResult {
  FormulaPtr formula;
  EliminationTrace trace;
};

class EngineLimit : public std::runtime_error {
public:
  explicit EngineLimit(const std::string& what) : std::runtime_error(what) {}
};
class UnsupportedShape : public std::runtime_error {
public:
  explicit UnsupportedShape(const std::string& what) : std::runtime_error(what) {}
};

// Innermost-first quantifier elimination over the oracle's vocabulary.
// Quantifier-free inputs come back unchanged with an empty trace.
QeResult qe(const FormulaPtr& f, GeometricOracle& oracle, const QeOptions& opts = {});

// The single-block operation: EXISTS y of a conjunction of literals, all
// mentioning y.  Exposed for tests.
FormulaPtr eliminate_block(const std::string& y, const std::vector<FormulaPtr>& literals,
                           GeometricOracle& oracle, const QeOptions& opts, TraceNode* parent);

// "At least d" over a positive conjunction; every conjunct must mention y.
FormulaPtr eliminate_counting(long d, const std::vector<FormulaPtr>& conjuncts,
                              const std::string& y, GeometricOracle& oracle,
                              const QeOptions& opts, TraceNode* parent);

// Exact-count-d of a union of conjunction families (inclusion-exclusion over
// intersection counts).  Pure rewrite: emits CountExactly nodes binding y, to
// be eliminated downstream.  family_bounds[i] bounds family i's finite count.
FormulaPtr inclusion_exclusion_rewrite(long d, const std::string& y,
                                       const std::vector<std::vector<FormulaPtr>>& families,
                                       const std::vector<FormulaPtr>& shared,
                                       const std::vector<long>& family_bounds);

// Re-runs the elimination and checks that the recorded steps reproduce, that
// rule tags are legal, leaf outputs are quantifier-free, and that every
// section step strictly decreases the negation count.
bool validate_trace(const FormulaPtr& input, const QeResult& recorded, GeometricOracle& oracle,
                    const QeOptions& opts, std::string* why = nullptr);

}  // namespace cqe

#endif
