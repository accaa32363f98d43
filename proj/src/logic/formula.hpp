#ifndef CQE_LOGIC_FORMULA_HPP
#define CQE_LOGIC_FORMULA_HPP

#include "core/algnum.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace cqe {

// Declared predicate symbols plus the table of named constant handles.
// Constants are opaque here; only the oracle looks inside them.
class Signature {
public:
  struct SymbolInfo {
    std::string name;
    int arity = 0;
    int backing_id = -1;  // opaque reference into an oracle's curve table
  };

  size_t add_symbol(const std::string& name, int arity, int backing_id = -1);
  const SymbolInfo* find(const std::string& name) const;
  const std::vector<SymbolInfo>& symbols() const { return symbols_; }

  size_t add_constant(const std::string& name, AlgebraicNumber value);
  // Rational literals intern to one handle per value.
  size_t intern_rational(const Rat& value);
  std::optional<size_t> find_constant(const std::string& name) const;
  const AlgebraicNumber& constant(size_t id) const { return constants_.at(id).second; }
  const std::string& constant_name(size_t id) const { return constants_.at(id).first; }
  size_t constant_count() const { return constants_.size(); }

private:
  std::vector<SymbolInfo> symbols_;
  std::map<std::string, size_t> symbol_index_;
  std::vector<std::pair<std::string, AlgebraicNumber>> constants_;
  std::map<std::string, size_t> constant_index_;
};

enum class FKind {
  True,
  False,
  Atom,
  Equals,
  Not,
  And,
  Or,
  Exists,
  CountAtLeast,
  CountExactly,
  CountInfinite,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree.
struct Formula {
  FKind kind;
  std::string symbol;             // Atom
  std::vector<std::string> args;  // Atom argument variables (pairwise distinct)
  std::string var;                // binder variable or Equals left-hand side
  size_t const_id = 0;            // Equals right-hand side
  long count = 0;                 // CountAtLeast / CountExactly
  std::vector<FormulaPtr> children;
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(const std::string& symbol, std::vector<std::string> args);
FormulaPtr f_equals(const std::string& var, size_t const_id);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(std::vector<FormulaPtr> fs);
FormulaPtr f_or(std::vector<FormulaPtr> fs);
FormulaPtr f_exists(const std::string& var, FormulaPtr body);
FormulaPtr f_count_ge(long d, const std::string& var, FormulaPtr body);
FormulaPtr f_count_eq(long d, const std::string& var, FormulaPtr body);
FormulaPtr f_count_inf(const std::string& var, FormulaPtr body);

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b);

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line, col;
};

// Parenthesized prefix grammar; every predicate must be declared in sig with
// the right arity.  Rational literals and declared constant names are allowed
// on the right of '='.
FormulaPtr parse_formula(const std::string& text, Signature& sig);
std::string print_formula(const FormulaPtr& f, const Signature& sig);

std::set<std::string> free_vars(const FormulaPtr& f);
// All variables bound anywhere inside f.
std::set<std::string> bound_vars(const FormulaPtr& f);

// Exists -> CountAtLeast(1); CountAtLeast(0, ...) -> True; boolean identities
// involving true/false collapsed.
FormulaPtr normalize(const FormulaPtr& f);

// Disjunctive normal form of the quantifier-free skeleton.  Quantified
// subformulas are treated as opaque literals.  Contradictory conjuncts
// (literal and its negation) are dropped.
FormulaPtr to_dnf_matrix(const FormulaPtr& f);

// Quantifier-free and every atom applies a declared symbol (dummy variables
// permitted: that is exactly a cylinder over the atom's base).
bool is_cylinder_combination(const FormulaPtr& f, const Signature& sig);

// Substitution support: the oracle (or a test mock) decides what a sectioned
// atom becomes and how constants compare.
struct SectionArg {
  std::optional<std::string> var;  // present: still a variable
  size_t const_id = 0;             // otherwise: this constant
};
class SectionRegistrar {
public:
  virtual ~SectionRegistrar() = default;
  // Atom of `symbol` with some positions pinned to constants; returns the
  // replacement formula (an atom over a freshly registered section symbol,
  // or true/false when every position is pinned).
  virtual FormulaPtr section_atom(const std::string& symbol, const std::vector<SectionArg>& args) = 0;
  virtual bool constants_equal(size_t a, size_t b) = 0;
};

// Replace every free occurrence of var by the constant.  Rejects formulas
// that bind var anywhere.
FormulaPtr substitute_constant(const FormulaPtr& f, const std::string& var, size_t const_id,
                               SectionRegistrar& reg);

}  // namespace cqe

#endif
