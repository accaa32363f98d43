#ifndef CQE_QE_ORACLE_HPP
#define CQE_QE_ORACLE_HPP

#include "logic/formula.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cqe {

// Solution set in one variable: finitely many values, or all but finitely
// many.  The exact carrier for fiber analysis and point evaluation.
struct YSet {
  bool cofinite = false;
  std::vector<AlgebraicNumber> values;  // members, or the removed values

  static YSet all() { return {true, {}}; }
  static YSet none() { return {false, {}}; }
  bool is_infinite() const { return cofinite; }
  size_t finite_count() const { return values.size(); }
};

YSet yset_intersect(const YSet& a, const YSet& b);
YSet yset_union(const YSet& a, const YSet& b);
YSet yset_complement(const YSet& a);
YSet yset_remove(const YSet& a, const std::vector<AlgebraicNumber>& removed);
bool yset_contains(const YSet& a, const AlgebraicNumber& v);

// Result of grouping a positive conjunction over the bound variable:
// an (optional) curve symbol E over (x', y) avoiding the exceptional
// constants, plus one residual formula per exceptional constant.
struct GroupedConjunction {
  std::optional<FormulaPtr> e_atom;          // Atom over x' + y, or nothing (empty E)
  std::vector<std::string> xprime;           // sorted free variables of the conjunction
  std::vector<size_t> exceptional;           // constant handles q_l (pairwise distinct)
  std::vector<FormulaPtr> residuals;         // phi_l, parallel to exceptional
};

// Per-atom fiber-size data for uniform-finiteness bounds.
struct AtomCountBounds {
  long finite_bound = 0;                 // valid whenever the atom's fiber is finite
  std::optional<long> unconditional;     // valid always (the fiber is never infinite)
};

// What the elimination engine needs from the geometry.  The shipped
// implementation works over constructible curve tables; anything outside its
// fragment fails loudly rather than approximately.
class GeometricOracle {
public:
  virtual ~GeometricOracle() = default;

  virtual Signature& sig() = 0;
  virtual const Signature& sig() const = 0;

  // Rewrite every atom whose backing is composite (unions, excess points,
  // removed points, link systems) into a boolean combination of atoms with
  // primitive backings.  Idempotent.
  virtual FormulaPtr expand_atoms(const FormulaPtr& f) = 0;

  // Grouping of a positive conjunction (atoms all mentioning y).
  virtual GroupedConjunction group(const std::vector<FormulaPtr>& conjuncts,
                                   const std::string& y) = 0;

  // Atom over x' holding exactly where the grouped curve of `conjuncts` has
  // at least `e` fiber points over y; f_true()/f_false() when trivial.
  virtual FormulaPtr count_curve(const std::vector<FormulaPtr>& conjuncts, const std::string& y,
                                 long e) = 0;

  // Tuples of constant handles (parallel to the atom's non-y arguments) over
  // which the atom's y-fiber is infinite.
  virtual std::vector<std::vector<size_t>> infinite_locus(const FormulaPtr& atom,
                                                          const std::string& y) = 0;

  // A true bound on every finite fiber size of the conjunction.
  virtual long uniform_bound(const std::vector<FormulaPtr>& conjuncts, const std::string& y) = 0;
  virtual AtomCountBounds atom_count_bounds(const FormulaPtr& atom, const std::string& y) = 0;

  // Section of an atom at a pinned constant; returns the replacement formula
  // (atom over a registered section symbol, an equality expansion, or a
  // truth constant).
  virtual FormulaPtr register_section(const FormulaPtr& atom, const std::string& var,
                                      size_t const_id) = 0;
  // The complement of the same section within the y-line, as a positive
  // formula (the set is again a 1-curve).
  virtual FormulaPtr complement_section(const FormulaPtr& atom, const std::string& y,
                                        const std::map<std::string, size_t>& pinned) = 0;

  // Exact truth of an atom / equality at a full point.
  virtual bool eval_atom(const FormulaPtr& atom,
                         const std::map<std::string, AlgebraicNumber>& point) = 0;

  // Exact solution set in y of an atom at a partial point covering all its
  // other variables.
  virtual YSet atom_y_solutions(const FormulaPtr& atom, const std::string& y,
                                const std::map<std::string, AlgebraicNumber>& point) = 0;

  virtual const AlgebraicNumber& constant(size_t id) const = 0;
  virtual bool constants_equal(size_t a, size_t b) = 0;
};

}  // namespace cqe

#endif
