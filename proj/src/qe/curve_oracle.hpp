#ifndef CQE_QE_CURVE_ORACLE_HPP
#define CQE_QE_CURVE_ORACLE_HPP

#include "curves/curveset.hpp"
#include "curves/fibers.hpp"
#include "qe/oracle.hpp"

#include <map>
#include <string>
#include <vector>

namespace cqe {

// Error for inputs outside the documented fragment of the shipped oracle.
class UnsupportedFragment : public std::runtime_error {
public:
  explicit UnsupportedFragment(const std::string& what) : std::runtime_error(what) {}
};

// Geometric oracle instantiated for constructible plane-curve tables.
// Derived symbols (grouped curves, counting predicates, sections,
// complements) are registered lazily with deterministic names; exact
// semantics are carried by conjunction/count filters where resultant
// geometry alone is only a superset.
class ConstructibleCurveOracle : public GeometricOracle, public SectionRegistrar {
public:
  explicit ConstructibleCurveOracle(std::uint64_t seed = 0, long precision_bits = 128);

  // Surface declarations.
  size_t declare(const std::string& name, CurveSet backing);
  void load_signature_json(const std::string& json_text);
  size_t intern_algebraic(const AlgebraicNumber& value);

  const CurveSet& geometry_of(const std::string& symbol) const;
  // Certified points on a symbol (after exact-membership filtering for
  // derived counting symbols).  May return fewer than asked.
  std::vector<Point> sample_symbol_points(const std::string& symbol, size_t count,
                                          std::uint64_t seed);
  std::vector<size_t> constant_handles() const;

  // GeometricOracle
  Signature& sig() override { return sig_; }
  const Signature& sig() const override { return sig_; }
  FormulaPtr expand_atoms(const FormulaPtr& f) override;
  GroupedConjunction group(const std::vector<FormulaPtr>& conjuncts,
                           const std::string& y) override;
  FormulaPtr count_curve(const std::vector<FormulaPtr>& conjuncts, const std::string& y,
                         long e) override;
  std::vector<std::vector<size_t>> infinite_locus(const FormulaPtr& atom,
                                                  const std::string& y) override;
  long uniform_bound(const std::vector<FormulaPtr>& conjuncts, const std::string& y) override;
  AtomCountBounds atom_count_bounds(const FormulaPtr& atom, const std::string& y) override;
  FormulaPtr register_section(const FormulaPtr& atom, const std::string& var,
                              size_t const_id) override;
  FormulaPtr complement_section(const FormulaPtr& atom, const std::string& y,
                                const std::map<std::string, size_t>& pinned) override;
  bool eval_atom(const FormulaPtr& atom,
                 const std::map<std::string, AlgebraicNumber>& point) override;
  YSet atom_y_solutions(const FormulaPtr& atom, const std::string& y,
                        const std::map<std::string, AlgebraicNumber>& point) override;
  const AlgebraicNumber& constant(size_t id) const override { return sig_.constant(id); }
  bool constants_equal(size_t a, size_t b) override;

  // SectionRegistrar (for formula-core substitution)
  FormulaPtr section_atom(const std::string& symbol, const std::vector<SectionArg>& args) override;

private:
  enum class BackingKind { Plain, Conjunction, Count };
  struct Backing {
    CurveSet geom;
    BackingKind kind = BackingKind::Plain;
    // For Conjunction (args = xprime + y) and Count (args = xprime):
    std::vector<FormulaPtr> conj;
    std::vector<std::string> xprime;
    std::string yvar;
    std::vector<size_t> excluded_y;
    long threshold = 1;
  };

  const Backing& backing_of_atom(const FormulaPtr& atom) const;
  bool atom_is_primitive(const FormulaPtr& atom) const;
  size_t register_backing(const std::string& base_name, Backing b);
  std::string fresh_name(const std::string& base);

  // The plane polynomial of a primitive plane atom, renamed to the atom's
  // argument variables.
  MultiPoly plane_poly_in_vars(const FormulaPtr& atom) const;

  // Solution set of one primitive component in the atom's i-th argument.
  YSet component_solutions(const CurveSet& geom, const FormulaPtr& atom, size_t solve_pos,
                           const std::map<std::string, AlgebraicNumber>& point);

  GroupedConjunction group_uncached(const std::vector<FormulaPtr>& conjuncts,
                                    const std::string& y);
  std::string conjunction_key(const std::vector<FormulaPtr>& conjuncts,
                              const std::string& y) const;

  Signature sig_;
  std::vector<Backing> backings_;
  std::map<std::string, GroupedConjunction> group_cache_;
  std::map<std::string, FormulaPtr> count_cache_;
  std::map<std::string, std::string> derived_names_;  // dedupe by construction key
  std::uint64_t seed_;
  long prec_;
  int fresh_counter_ = 0;
};

}  // namespace cqe

#endif
