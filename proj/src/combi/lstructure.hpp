#ifndef CQE_COMBI_LSTRUCTURE_HPP
#define CQE_COMBI_LSTRUCTURE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cqe {

// Finite structure with n unary predicates.  Universe elements are opaque
// labels (canonically: subset bitmasks); membership is stored per element as
// a predicate profile, bit i-1 of profile[e] meaning element e lies in P_i.
struct LStructure {
  int n = 0;
  std::vector<std::uint32_t> universe;  // labels, strictly increasing
  std::vector<std::uint32_t> profile;   // parallel to universe

  size_t size() const { return universe.size(); }
  bool in_pred(size_t elem, int i) const { return (profile[elem] >> (i - 1)) & 1u; }
  std::string to_json() const;
};

// Odd-cardinality subsets of {1..n} with P_i = "contains i".
LStructure build_X(int n);
// Even-cardinality subsets of {1..n} with P_i = "contains i".
LStructure build_Y(int n);

// A bijection as a vector: element k of the source maps to target index map[k].
using Bijection = std::vector<size_t>;

struct SymmetryReport {
  bool symmetric = false;
  // Witness bijection per permutation, in lexicographic permutation order.
  std::vector<Bijection> witnesses;
};

// For every permutation sigma of the predicate indices, find a bijection of
// the universe carrying P_i to P_sigma(i).  For subset-encoded structures the
// induced action of sigma on labels is tried first.
SymmetryReport is_symmetric(const LStructure& s);

// Bijection matching the predicates listed in `keep` (1-based indices), or
// nullopt.  For the odd/even pair with keep = {1..n-1}, the toggle-top-bit
// map is verified directly before any search.
std::optional<Bijection> find_reduct_iso(const LStructure& s, const LStructure& t,
                                         const std::vector<int>& keep);

// As find_reduct_iso, but predicate i of s is matched against predicate
// to[i] of t (parallel index vectors).
std::optional<Bijection> find_relabeled_iso(const LStructure& s, const LStructure& t,
                                            const std::vector<int>& from,
                                            const std::vector<int>& to);

struct IsoCertificate {
  bool isomorphic = false;
  bool by_intersection = false;  // decided by the all-predicates-meet test
  std::optional<Bijection> witness;
  std::string reason;  // for refutations: which invariant separates them
};

// Full-signature decision: intersection fast path (is the meet of all
// predicates empty?) and a profile-matching search; refuses universes > 12
// when the fast path does not decide.
IsoCertificate full_iso_certificate(const LStructure& s, const LStructure& t);

// Independent exhaustive backtracking search (universe <= 8), used to
// cross-check the certificate path.
std::optional<Bijection> brute_force_iso(const LStructure& s, const LStructure& t);

}  // namespace cqe

#endif
