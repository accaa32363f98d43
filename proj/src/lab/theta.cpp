#include "lab/theta.hpp"

#include "core/rootisolation.hpp"

#include <algorithm>
#include <sstream>

namespace cqe {

namespace {

UPoly family_poly(ThetaFamily family, int N, const Rat& a0) {
  if (family == ThetaFamily::QuarticXPlusA) {
    if (N != 4) throw std::invalid_argument("the quartic family fixes N = 4");
    return UPoly({a0, Rat(1), Rat(0), Rat(0), Rat(1)});
  }
  if (N < 2) throw std::invalid_argument("need N >= 2");
  std::vector<Rat> c(static_cast<size_t>(N) + 1, Rat(0));
  c[0] = a0;
  c[static_cast<size_t>(N) - 1] = 1;
  c[static_cast<size_t>(N)] = 1;
  return UPoly(std::move(c));
}

}  // namespace

ThetaContext build_theta_context(ThetaFamily family, int N, const Rat& a0, long precision_bits) {
  ThetaContext ctx;
  ctx.family = family;
  ctx.N = N;
  ctx.a0 = a0;
  ctx.poly = family_poly(family, N, a0);
  ctx.precision_bits = precision_bits;
  auto balls = isolate_roots(ctx.poly, precision_bits);
  if (static_cast<int>(balls.size()) != N)
    throw std::runtime_error("context rejected: the polynomial has a repeated root at this parameter");
  UPoly sf = squarefree_part(ctx.poly);
  for (auto& b : balls) ctx.roots.emplace_back(sf, b);
  // Root-sum anchor from the subleading coefficient.
  ComplexBall sum;
  for (int i = 0; i < N; ++i) sum = sum + ctx.roots[static_cast<size_t>(i)].box();
  Rat expected = family == ThetaFamily::QuarticXPlusA ? Rat(0) : Rat(-1);
  ComplexBall diff = sum - ComplexBall::from_rational(expected, Rat(0), precision_bits);
  if (!diff.contains_zero())
    throw std::logic_error("root-sum anchor failed for the context polynomial");
  // Certified pairwise separation.
  bool first = true;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      Dyadic sep = balls_separation_lower(ctx.roots[static_cast<size_t>(i)].box(),
                                          ctx.roots[static_cast<size_t>(j)].box());
      if (sep.sign() <= 0) throw std::logic_error("isolated roots without positive separation");
      if (first || sep < ctx.separation) ctx.separation = sep;
      first = false;
    }
  return ctx;
}

std::string RootSum::describe() const {
  std::ostringstream os;
  os << "sum{";
  for (size_t i = 0; i < indices.size(); ++i) os << (i ? "," : "") << "z" << (indices[i] + 1);
  os << "}";
  if (offset != 0) os << " + " << rational_to_string(offset);
  return os.str();
}

ComplexBall root_sum_ball(const ThetaContext& ctx, const RootSum& s, long bits) {
  ComplexBall acc = ComplexBall::from_rational(s.offset, Rat(0), bits + 8);
  for (int i : s.indices) acc = acc + ctx.root_ball(static_cast<size_t>(i), bits);
  return acc;
}

AlgebraicNumber root_sum_value(const ThetaContext& ctx, const RootSum& s) {
  std::string key = s.describe();
  auto it = ctx.sum_cache.find(key);
  if (it != ctx.sum_cache.end()) return it->second;
  AlgebraicNumber acc(s.offset);
  for (int i : s.indices) acc = alg_add(acc, ctx.roots.at(static_cast<size_t>(i)));
  ctx.sum_cache.emplace(key, acc);
  return acc;
}

bool root_sums_equal(const ThetaContext& ctx, const RootSum& a, const RootSum& b) {
  if (a.indices == b.indices) return a.offset == b.offset;
  for (long bits = ctx.precision_bits; bits <= 1024; bits *= 2) {
    if (balls_disjoint(root_sum_ball(ctx, a, bits), root_sum_ball(ctx, b, bits))) return false;
  }
  return alg_equal(root_sum_value(ctx, a), root_sum_value(ctx, b));
}

MultiPoly r_locus_poly(const std::string& yvar, const std::string& svar) {
  MultiPoly y = MultiPoly::var(yvar), s = MultiPoly::var(svar);
  return s * y.pow(3) * Rat(-4) + s.pow(2) * y.pow(2) * Rat(6) -
         (s.pow(3) * Rat(4) + MultiPoly::constant(Rat(2))) * y + s.pow(4) + s;
}

std::pair<ConfigTuple, ConfigTuple> triangle_star_configs(const ThetaContext& ctx) {
  if (ctx.family != ThetaFamily::QuarticXPlusA || ctx.N != 4)
    throw std::invalid_argument("the paired configurations need the quartic context");
  ConfigTuple hub, rim;
  hub.provenance = "hub: s_i = z_i + z_4";
  rim.provenance = "rim: s'_i = z_j + z_k over {1,2,3} \\ {i}";
  for (int i = 0; i < 3; ++i) hub.values.push_back({{i, 3}, Rat(0)});
  rim.values.push_back({{1, 2}, Rat(0)});  // s'_1 = z_2 + z_3
  rim.values.push_back({{0, 2}, Rat(0)});  // s'_2 = z_1 + z_3
  rim.values.push_back({{0, 1}, Rat(0)});  // s'_3 = z_1 + z_2
  return {hub, rim};
}

namespace {

// The quadratic cofactor of the locus polynomial after removing the excluded
// root y = s/2:  2s*y^2 - 2s^2*y + (s^3 + 1).
std::vector<ComplexBall> quad_locus_coeffs(const ComplexBall& s, long prec) {
  ComplexBall two = ComplexBall::from_rational(Rat(2), Rat(0), prec);
  ComplexBall one = ComplexBall::from_rational(Rat(1), Rat(0), prec);
  std::vector<ComplexBall> c(3);
  c[2] = (two * s).rounded(prec);
  c[1] = (-(two * s * s)).rounded(prec);
  c[0] = ((s * s * s) + one).rounded(prec);
  return c;
}

}  // namespace

CheckTResult check_T(const ThetaContext& ctx, const ConfigTuple& config) {
  if (config.values.size() != 3) throw std::invalid_argument("check_T expects a 3-tuple");
  CheckTResult out;

  // Degenerate entries: s = 0 has an empty witness locus; s^3 = -2 merges the
  // excluded point with the quadratic cofactor.
  std::vector<AlgebraicNumber> s_alg;
  for (const auto& s : config.values) {
    AlgebraicNumber v = root_sum_value(ctx, s);
    if (alg_is_zero(v)) {
      out.satisfied = false;
      out.detail = "an entry is zero, so its witness locus is empty";
      return out;
    }
    s_alg.push_back(std::move(v));
  }
  // s^3 = -2 collapses the quadratic cofactor onto the excluded point
  // y = s/2 (both roots coincide with it), leaving an empty locus.
  UPoly cube_plus_two({Rat(2), Rat(0), Rat(0), Rat(1)});
  for (size_t i = 0; i < 3; ++i)
    if (upoly_zero_at(cube_plus_two, s_alg[i])) {
      out.satisfied = false;
      out.detail = "an entry has a degenerate locus (its cube is -2)";
      return out;
    }

  MultiPoly q_sym = MultiPoly::parse("2*s*y^2 - 2*s^2*y + s^3 + 1");

  long bits = std::max<long>(ctx.precision_bits, 64);
  while (true) {
    // Locus disks per entry: roots of the quadratic cofactor, minus the
    // merged excluded point when applicable.
    std::vector<std::vector<ComplexBall>> loci(3);
    bool certified = true;
    for (size_t i = 0; i < 3 && certified; ++i) {
      ComplexBall sball = root_sum_ball(ctx, config.values[i], bits);
      auto coeffs = quad_locus_coeffs(sball, bits + 16);
      auto disks = isolate_roots_ball_coeffs(coeffs, std::min<long>(bits, 512));
      if (disks.size() != 2) {
        certified = false;
        break;
      }
      loci[i] = disks;
    }
    if (certified) {
      // Triple intersection over the certified disks.
      bool any_overlap_triple = false;
      Dyadic best_sep;
      bool first_triple = true;
      for (const auto& b1 : loci[0])
        for (const auto& b2 : loci[1])
          for (const auto& b3 : loci[2]) {
            Dyadic s12 = balls_separation_lower(b1, b2);
            Dyadic s13 = balls_separation_lower(b1, b3);
            Dyadic s23 = balls_separation_lower(b2, b3);
            Dyadic triple_gap = s12;
            if (s13 > triple_gap) triple_gap = s13;
            if (s23 > triple_gap) triple_gap = s23;
            if (triple_gap.sign() <= 0) any_overlap_triple = true;
            if (first_triple || triple_gap < best_sep) best_sep = triple_gap;
            first_triple = false;
          }
      if (!any_overlap_triple) {
        out.satisfied = false;
        out.separation = best_sep;
        out.detail = "no witness: every locus triple is separated";
        return out;
      }
      // Candidate confirmation: is some context root a common witness?  A
      // witness y for an entry s needs z = s - y to be another context root
      // (both sides of the defining equation evaluate to -a), so confirming
      // a root witness is a chain of exact pair-sum comparisons.
      for (int m = 0; m < ctx.N; ++m) {
        bool works = true;
        for (size_t i = 0; i < 3 && works; ++i) {
          bool found = false;
          for (int j = 0; j < ctx.N && !found; ++j) {
            if (j == m) continue;  // z = y is excluded
            RootSum pair{{std::min(m, j), std::max(m, j)}, Rat(0)};
            if (root_sums_equal(ctx, config.values[i], pair)) found = true;
          }
          works = found;
        }
        if (works) {
          out.satisfied = true;
          out.witness = ctx.root_ball(static_cast<size_t>(m), bits);
          out.witness_root_index = m;
          out.detail = "witness is context root " + std::to_string(m + 1);
          return out;
        }
      }
      // Exact fallback: common roots of the per-entry annihilators.
      if (bits >= 1024) {
        UPoly g;
        for (size_t i = 0; i < 3; ++i) {
          MultiPoly mp = MultiPoly::from_upoly(s_alg[i].minpoly(), "s");
          MultiPoly r = resultant(mp, q_sym, "s");
          UPoly h = squarefree_part(r.to_upoly("y"));
          g = g.is_zero() ? h : gcd(g, h);
        }
        if (g.degree() >= 1) {
          UPoly gsf = squarefree_part(g);
          for (const auto& ball : isolate_roots(gsf, 256)) {
            AlgebraicNumber cand(gsf, ball);
            bool works = true;
            for (size_t i = 0; i < 3 && works; ++i) {
              if (!bivariate_zero_at(q_sym, "y", cand, "s", s_alg[i])) works = false;
              if (works && alg_equal(cand, alg_scale(s_alg[i], Rat(1, 2)))) works = false;
            }
            if (works) {
              out.satisfied = true;
              out.witness = cand.box();
              out.detail = "witness from the annihilator intersection";
              return out;
            }
          }
          out.satisfied = false;
          out.detail = "annihilator intersection has no common witness";
          return out;
        }
        out.satisfied = false;
        out.detail = "annihilators are coprime";
        return out;
      }
    }
    bits *= 2;
    if (bits > kPrecisionCapBits)
      throw PrecisionExceeded("witness decision exceeded the precision cap");
  }
}

SubsetSumReport subset_sum_injective(const ThetaContext& ctx, int k) {
  if (k < 1 || k > ctx.N) throw std::invalid_argument("need 1 <= k <= N");
  SubsetSumReport rep;
  rep.k = k;
  // Enumerate k-subsets of root indices.
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  std::function<void(int)> gen = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (int i = start; i < ctx.N; ++i) {
      cur.push_back(i);
      gen(i + 1);
      cur.pop_back();
    }
  };
  gen(0);
  rep.pairs = subsets.size() * (subsets.size() - 1) / 2;
  if (subsets.size() <= 1) {
    rep.injective = true;  // a single subset is vacuously injective
    return rep;
  }
  long bits = ctx.precision_bits;
  while (true) {
    std::vector<ComplexBall> sums;
    sums.reserve(subsets.size());
    for (const auto& s : subsets) sums.push_back(root_sum_ball(ctx, {s, Rat(0)}, bits));
    bool all_disjoint = true;
    Dyadic min_sep;
    bool first = true;
    for (size_t i = 0; i < sums.size() && all_disjoint; ++i)
      for (size_t j = i + 1; j < sums.size(); ++j) {
        Dyadic sep = balls_separation_lower(sums[i], sums[j]);
        if (sep.sign() <= 0) {
          all_disjoint = false;
          // Past the soft cap, decide the stuck pair exactly.
          if (bits >= 1024) {
            RootSum a{subsets[i], Rat(0)}, b{subsets[j], Rat(0)};
            if (root_sums_equal(ctx, a, b)) {
              rep.injective = false;
              rep.collision = a.describe() + " = " + b.describe();
              return rep;
            }
          }
          break;
        }
        if (first || sep < min_sep) min_sep = sep;
        first = false;
      }
    if (all_disjoint) {
      rep.injective = true;
      rep.min_separation = min_sep;
      return rep;
    }
    bits *= 2;
    if (bits > kPrecisionCapBits)
      throw PrecisionExceeded("subset-sum separation exceeded the precision cap");
  }
}

}  // namespace cqe
