#include "combi/lstructure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cqe {

std::string LStructure::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["universe"] = universe;
  nlohmann::ordered_json preds = nlohmann::ordered_json::array();
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint32_t> members;
    for (size_t e = 0; e < universe.size(); ++e)
      if (in_pred(e, i)) members.push_back(universe[e]);
    preds.push_back(members);
  }
  j["preds"] = preds;
  return j.dump();
}

namespace {

LStructure build_by_parity(int n, int parity) {
  if (n < 2) throw std::domain_error("structures are defined for n >= 2");
  if (n > 20) throw std::domain_error("universe would be too large");
  LStructure s;
  s.n = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) % 2 == parity) {
      s.universe.push_back(mask);
      s.profile.push_back(mask);
    }
  }
  return s;
}

std::uint32_t apply_perm_to_mask(const std::vector<int>& perm, std::uint32_t mask) {
  std::uint32_t out = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    if ((mask >> i) & 1u) out |= 1u << (perm[i] - 1);
  return out;
}

// Profile of each element restricted and reordered: bit j of the result is
// bit (sel[j]-1) of the input.
std::vector<std::uint32_t> restricted_profiles(const LStructure& s, const std::vector<int>& sel) {
  std::vector<std::uint32_t> out(s.size(), 0);
  for (size_t e = 0; e < s.size(); ++e)
    for (size_t j = 0; j < sel.size(); ++j)
      if ((s.profile[e] >> (sel[j] - 1)) & 1u) out[e] |= 1u << j;
  return out;
}

// A predicate-preserving bijection exists iff the profile multisets agree;
// matching sorted orders yields a witness.
std::optional<Bijection> match_profiles(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<size_t> ia(a.size()), ib(b.size());
  std::iota(ia.begin(), ia.end(), 0);
  std::iota(ib.begin(), ib.end(), 0);
  std::sort(ia.begin(), ia.end(), [&](size_t x, size_t y) { return a[x] < a[y]; });
  std::sort(ib.begin(), ib.end(), [&](size_t x, size_t y) { return b[x] < b[y]; });
  Bijection map(a.size());
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[ia[k]] != b[ib[k]]) return std::nullopt;
    map[ia[k]] = ib[k];
  }
  return map;
}

}  // namespace

LStructure build_X(int n) { return build_by_parity(n, 1); }
LStructure build_Y(int n) { return build_by_parity(n, 0); }

SymmetryReport is_symmetric(const LStructure& s) {
  SymmetryReport report;
  std::vector<int> perm(static_cast<size_t>(s.n));
  std::iota(perm.begin(), perm.end(), 1);
  report.symmetric = true;
  std::map<std::uint32_t, size_t> index_of;
  for (size_t e = 0; e < s.size(); ++e) index_of[s.universe[e]] = e;
  do {
    // Induced action on subset labels, when the labels happen to be profiles.
    bool induced_ok = true;
    Bijection induced(s.size());
    for (size_t e = 0; e < s.size() && induced_ok; ++e) {
      if (s.profile[e] != s.universe[e]) {
        induced_ok = false;
        break;
      }
      std::uint32_t img = apply_perm_to_mask(perm, s.universe[e]);
      auto it = index_of.find(img);
      if (it == index_of.end())
        induced_ok = false;
      else
        induced[e] = it->second;
    }
    if (induced_ok) {
      report.witnesses.push_back(induced);
      continue;
    }
    // General fallback: permuted-profile multiset matching.
    std::vector<std::uint32_t> permuted(s.size(), 0);
    for (size_t e = 0; e < s.size(); ++e)
      permuted[e] = apply_perm_to_mask(perm, s.profile[e] & ((1u << s.n) - 1));
    auto w = match_profiles(permuted, s.profile);
    if (!w) {
      report.symmetric = false;
      report.witnesses.clear();
      return report;
    }
    report.witnesses.push_back(*w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return report;
}

std::optional<Bijection> find_reduct_iso(const LStructure& s, const LStructure& t,
                                         const std::vector<int>& keep) {
  if (s.size() != t.size()) return std::nullopt;
  // Direct witness for the odd/even pair under keep = {1..n-1}: toggle the
  // top element in each subset label.
  if (s.n == t.n && static_cast<int>(keep.size()) == s.n - 1) {
    std::vector<int> expect(static_cast<size_t>(s.n) - 1);
    std::iota(expect.begin(), expect.end(), 1);
    if (keep == expect) {
      std::uint32_t top = 1u << (s.n - 1);
      std::map<std::uint32_t, size_t> t_index;
      for (size_t e = 0; e < t.size(); ++e) t_index[t.universe[e]] = e;
      Bijection phi(s.size());
      bool ok = true;
      for (size_t e = 0; e < s.size() && ok; ++e) {
        std::uint32_t img = s.universe[e] ^ top;
        auto it = t_index.find(img);
        if (it == t_index.end() || t.profile[it->second] != img ||
            s.profile[e] != s.universe[e]) {
          ok = false;
        } else {
          phi[e] = it->second;
        }
      }
      if (ok) {
        // Confirm predicate preservation on the kept indices.
        for (size_t e = 0; e < s.size() && ok; ++e)
          for (int i : keep)
            if (s.in_pred(e, i) != t.in_pred(phi[e], i)) {
              ok = false;
              break;
            }
        if (ok) return phi;
      }
    }
  }
  return match_profiles(restricted_profiles(s, keep), restricted_profiles(t, keep));
}

std::optional<Bijection> find_relabeled_iso(const LStructure& s, const LStructure& t,
                                            const std::vector<int>& from,
                                            const std::vector<int>& to) {
  if (from.size() != to.size()) throw std::invalid_argument("index lists differ in length");
  return match_profiles(restricted_profiles(s, from), restricted_profiles(t, to));
}

IsoCertificate full_iso_certificate(const LStructure& s, const LStructure& t) {
  IsoCertificate cert;
  if (s.n != t.n || s.size() != t.size()) {
    cert.isomorphic = false;
    cert.reason = "size or signature mismatch";
    return cert;
  }
  std::uint32_t all = s.n >= 32 ? ~0u : ((1u << s.n) - 1);
  bool s_meet = false, t_meet = false;
  for (size_t e = 0; e < s.size(); ++e)
    if ((s.profile[e] & all) == all) s_meet = true;
  for (size_t e = 0; e < t.size(); ++e)
    if ((t.profile[e] & all) == all) t_meet = true;
  if (s_meet != t_meet) {
    cert.isomorphic = false;
    cert.by_intersection = true;
    cert.reason = std::string("exactly one of the two structures has a common point of all ") +
                  "predicates (meet " + (s_meet ? "nonempty/empty" : "empty/nonempty") + ")";
    return cert;
  }
  if (s.size() > 12)
    throw std::domain_error("full isomorphism search refused: universe > 12 and the "
                            "intersection test does not decide");
  std::vector<int> keep(static_cast<size_t>(s.n));
  std::iota(keep.begin(), keep.end(), 1);
  auto w = match_profiles(restricted_profiles(s, keep), restricted_profiles(t, keep));
  if (w) {
    cert.isomorphic = true;
    cert.witness = *w;
  } else {
    cert.isomorphic = false;
    cert.reason = "no bijection matches all predicate profiles";
  }
  return cert;
}

std::optional<Bijection> brute_force_iso(const LStructure& s, const LStructure& t) {
  if (s.size() != t.size() || s.n != t.n) return std::nullopt;
  if (s.size() > 8) throw std::domain_error("brute_force_iso restricted to universes <= 8");
  std::vector<size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint32_t all = (1u << s.n) - 1;
  do {
    bool ok = true;
    for (size_t e = 0; e < s.size(); ++e)
      if ((s.profile[e] & all) != (t.profile[perm[e]] & all)) {
        ok = false;
        break;
      }
    if (ok) return Bijection(perm.begin(), perm.end());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace cqe
