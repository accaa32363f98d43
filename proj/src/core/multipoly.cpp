#include "core/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cqe {

void MultiPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (it->second == 0) ? terms_.erase(it) : std::next(it);
  if (terms_.empty()) vars_.clear();
}

MultiPoly MultiPoly::constant(const Rat& c) {
  MultiPoly p;
  if (c != 0) p.terms_[{}] = c;
  return p;
}

MultiPoly MultiPoly::var(const std::string& name) {
  MultiPoly p;
  p.vars_ = {name};
  p.terms_[{1}] = Rat(1);
  return p;
}

MultiPoly MultiPoly::from_upoly(const UPoly& u, const std::string& var) {
  MultiPoly p;
  if (u.is_zero()) return p;
  p.vars_ = {var};
  for (int k = 0; k <= u.degree(); ++k)
    if (u.coeff(k) != 0) p.terms_[{static_cast<unsigned>(k)}] = u.coeff(k);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const Exps& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

Rat MultiPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) throw std::domain_error("constant_value of non-constant polynomial");
  return terms_.begin()->second;
}

bool MultiPoly::uses_var(const std::string& v) const { return degree(v) > 0; }

int MultiPoly::degree(const std::string& v) const {
  if (terms_.empty()) return -1;
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return 0;
  size_t idx = static_cast<size_t>(it - vars_.begin());
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
  return static_cast<int>(d);
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  unsigned best = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned x : e) s += x;
    best = std::max(best, s);
  }
  return static_cast<int>(best);
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& vs) const {
  MultiPoly out;
  out.vars_ = vs;
  std::vector<int> pos(vars_.size(), -1);
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vs.begin(), vs.end(), vars_[i]);
    pos[i] = static_cast<int>(it - vs.begin());
  }
  for (const auto& [e, c] : terms_) {
    Exps ne(vs.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) ne[static_cast<size_t>(pos[i])] = e[i];
    out.terms_[ne] = c;
  }
  return out;
}

void MultiPoly::align(const MultiPoly& a, const MultiPoly& b, MultiPoly& oa, MultiPoly& ob) {
  std::vector<std::string> vs = a.vars_;
  vs.insert(vs.end(), b.vars_.begin(), b.vars_.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  oa = a.with_vars(vs);
  ob = b.with_vars(vs);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly a, b;
  align(*this, o, a, b);
  for (const auto& [e, c] : b.terms_) {
    auto [it, inserted] = a.terms_.emplace(e, c);
    if (!inserted) it->second += c;
  }
  a.prune();
  return a;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (is_zero() || o.is_zero()) return MultiPoly();
  MultiPoly a, b;
  align(*this, o, a, b);
  MultiPoly out;
  out.vars_ = a.vars_;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exps e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = out.terms_.emplace(std::move(e), ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  out.prune();
  return out;
}

MultiPoly MultiPoly::operator*(const Rat& c) const {
  if (c == 0) return MultiPoly();
  MultiPoly out = *this;
  for (auto& [e, v] : out.terms_) v *= c;
  return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly acc = constant(Rat(1));
  MultiPoly base = *this;
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  MultiPoly a, b;
  align(*this, o, a, b);
  return a.terms_ == b.terms_;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(const std::string& v) const {
  int d = degree(v);
  std::vector<MultiPoly> out(static_cast<size_t>(std::max(d, 0)) + 1);
  if (terms_.empty()) return {MultiPoly()};
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) {
    out[0] = *this;
    return out;
  }
  size_t idx = static_cast<size_t>(it - vars_.begin());
  std::vector<std::string> rest = vars_;
  rest.erase(rest.begin() + static_cast<long>(idx));
  for (const auto& [e, c] : terms_) {
    Exps re = e;
    unsigned k = re[idx];
    re.erase(re.begin() + static_cast<long>(idx));
    MultiPoly& target = out[k];
    if (target.terms_.empty()) target.vars_ = rest;
    auto [t, inserted] = target.terms_.emplace(re, c);
    if (!inserted) t->second += c;
  }
  for (auto& p : out) p.prune();
  return out;
}

MultiPoly MultiPoly::from_coeffs_in(const std::string& v, const std::vector<MultiPoly>& cs) {
  MultiPoly acc;
  MultiPoly x = var(v);
  for (size_t k = cs.size(); k-- > 0;) acc = acc * x + cs[k];
  return acc;
}

MultiPoly MultiPoly::leading_coeff(const std::string& v) const {
  auto cs = coeffs_in(v);
  return cs.back();
}

MultiPoly MultiPoly::derivative(const std::string& v) const {
  auto cs = coeffs_in(v);
  if (cs.size() <= 1) return MultiPoly();
  std::vector<MultiPoly> ds(cs.size() - 1);
  for (size_t k = 1; k < cs.size(); ++k) ds[k - 1] = cs[k] * Rat(static_cast<long>(k));
  return from_coeffs_in(v, ds);
}

MultiPoly MultiPoly::substitute(const std::string& v, const Rat& value) const {
  auto cs = coeffs_in(v);
  MultiPoly acc;
  for (size_t k = cs.size(); k-- > 0;) acc = acc * Rat(value) + cs[k];
  return acc;
}

MultiPoly MultiPoly::substitute(const std::string& v, const MultiPoly& value) const {
  auto cs = coeffs_in(v);
  MultiPoly acc;
  for (size_t k = cs.size(); k-- > 0;) acc = acc * value + cs[k];
  return acc;
}

MultiPoly MultiPoly::rename_var(const std::string& from, const std::string& to) const {
  if (from == to || !std::count(vars_.begin(), vars_.end(), from)) return *this;
  return substitute(from, var(to));
}

Rat MultiPoly::eval(const std::map<std::string, Rat>& point) const {
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(vars_[i]);
      if (it == point.end()) throw std::domain_error("eval: missing value for " + vars_[i]);
      Rat b = it->second;
      for (unsigned k = 0; k < e[i]; ++k) t *= b;
    }
    acc += t;
  }
  return acc;
}

ComplexBall MultiPoly::eval_ball(const std::map<std::string, ComplexBall>& point, long prec) const {
  ComplexBall acc;
  for (const auto& [e, c] : terms_) {
    ComplexBall t = ComplexBall::from_rational(c, Rat(0), prec);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(vars_[i]);
      if (it == point.end()) throw std::domain_error("eval_ball: missing value for " + vars_[i]);
      for (unsigned k = 0; k < e[i]; ++k) t = (t * it->second).rounded(prec);
    }
    acc = (acc + t).rounded(prec);
  }
  return acc;
}

UPoly MultiPoly::to_upoly(const std::string& v) const {
  std::vector<Rat> cs(static_cast<size_t>(std::max(degree(v), 0)) + 1, Rat(0));
  auto pos = std::find(vars_.begin(), vars_.end(), v);
  size_t idx = pos == vars_.end() ? vars_.size() : static_cast<size_t>(pos - vars_.begin());
  for (const auto& [e, c] : terms_) {
    unsigned k = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      if (i == idx) {
        k = e[i];
      } else if (e[i] != 0) {
        throw std::domain_error("to_upoly: polynomial involves variable " + vars_[i]);
      }
    }
    cs[k] = c;
  }
  return UPoly(std::move(cs));
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  // Highest term first: iterate the map in reverse (lex on exponent vectors).
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rat c = it->second;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    std::string monom;
    for (size_t i = 0; i < it->first.size(); ++i) {
      unsigned k = it->first[i];
      if (k == 0) continue;
      if (!monom.empty()) monom += "*";
      monom += vars_[i];
      if (k > 1) monom += "^" + std::to_string(k);
    }
    if (monom.empty()) {
      os << rational_to_string(c);
    } else if (c == 1) {
      os << monom;
    } else {
      os << rational_to_string(c) << "*" << monom;
    }
  }
  return os.str();
}

namespace {

struct PolyLexer {
  std::string s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return s[i];
  }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text) {
  PolyLexer lx{text};
  MultiPoly acc;
  bool expect_term = true;
  int pending_sign = 1;
  while (!lx.eof()) {
    char c = lx.peek();
    if (c == '+' || c == '-') {
      if (c == '-') pending_sign = -pending_sign;
      ++lx.i;
      expect_term = true;
      continue;
    }
    if (!expect_term) throw std::invalid_argument("polynomial parse error near '" + std::string(1, c) + "'");
    // term: factors separated by '*'
    MultiPoly term = constant(Rat(pending_sign));
    pending_sign = 1;
    bool more = true;
    while (more) {
      char f = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(f))) {
        size_t j = lx.i;
        while (j < lx.s.size() && (std::isdigit(static_cast<unsigned char>(lx.s[j])) || lx.s[j] == '/' || lx.s[j] == '.'))
          ++j;
        term = term * parse_rational(lx.s.substr(lx.i, j - lx.i));
        lx.i = j;
      } else if (std::isalpha(static_cast<unsigned char>(f)) || f == '_') {
        size_t j = lx.i;
        while (j < lx.s.size() && (std::isalnum(static_cast<unsigned char>(lx.s[j])) || lx.s[j] == '_')) ++j;
        std::string name = lx.s.substr(lx.i, j - lx.i);
        lx.i = j;
        unsigned k = 1;
        if (!lx.eof() && lx.peek() == '^') {
          ++lx.i;
          size_t j2 = lx.i;
          lx.skip();
          j2 = lx.i;
          while (j2 < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[j2]))) ++j2;
          if (j2 == lx.i) throw std::invalid_argument("polynomial parse: missing exponent");
          k = static_cast<unsigned>(std::stoul(lx.s.substr(lx.i, j2 - lx.i)));
          lx.i = j2;
        }
        term = term * var(name).pow(k);
      } else {
        throw std::invalid_argument("polynomial parse error near '" + std::string(1, f) + "'");
      }
      if (!lx.eof() && lx.peek() == '*') {
        ++lx.i;
      } else {
        more = false;
      }
    }
    acc = acc + term;
    expect_term = false;
  }
  if (expect_term && !acc.is_zero()) throw std::invalid_argument("polynomial parse: dangling sign");
  return acc;
}

namespace {

// lc(b)^(deg a - deg b + 1) * a  mod  b, eliminating v.  The exact count of
// multiplier powers matters for the subresultant algorithm.
MultiPoly prem_exact(const MultiPoly& a, const MultiPoly& b, const std::string& v) {
  int db = b.degree(v);
  int da = a.degree(v);
  if (db < 0) throw std::domain_error("prem by zero");
  if (da < db) return a;
  MultiPoly lb = b.leading_coeff(v);
  MultiPoly r = a;
  MultiPoly xv = MultiPoly::var(v);
  int reductions = 0;
  while (!r.is_zero() && r.degree(v) >= db) {
    int d = r.degree(v);
    MultiPoly lr = r.leading_coeff(v);
    r = r * lb - b * lr * xv.pow(static_cast<unsigned>(d - db));
    ++reductions;
  }
  // Scale so the total multiplier is lb^(da-db+1) regardless of degree drops.
  int missing = (da - db + 1) - reductions;
  for (int i = 0; i < missing; ++i) r = r * lb;
  return r;
}

MultiPoly normalize_gcd(const MultiPoly& g) {
  if (g.is_zero()) return g;
  // Divide by the lex-leading rational coefficient.
  Rat lead = g.terms().rbegin()->second;
  return g * (Rat(1) / lead);
}

}  // namespace

MultiPoly content_in(const MultiPoly& p, const std::string& v) {
  auto cs = p.coeffs_in(v);
  MultiPoly g;
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_gcd(c) : gcd_multi(g, c);
    if (g.is_constant()) return MultiPoly::constant(Rat(1));
  }
  return g.is_zero() ? MultiPoly() : g;
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::domain_error("divide_exact by zero");
  if (a.is_zero()) return a;
  MultiPoly r = a;
  MultiPoly q;
  // Lex-leading term elimination.
  while (!r.is_zero()) {
    // align exponents
    const auto& rt = *r.terms().rbegin();
    const auto& bt = *b.terms().rbegin();
    // Build monomial quotient rt/bt.
    std::map<std::string, long> re, be;
    for (size_t i = 0; i < rt.first.size(); ++i)
      if (rt.first[i]) re[r.vars()[i]] = rt.first[i];
    for (size_t i = 0; i < bt.first.size(); ++i)
      if (bt.first[i]) be[b.vars()[i]] = bt.first[i];
    MultiPoly mono = MultiPoly::constant(rt.second / bt.second);
    for (const auto& [name, k] : be) {
      auto it = re.find(name);
      if (it == re.end() || it->second < k)
        throw std::domain_error("divide_exact: not divisible");
      it->second -= k;
    }
    for (const auto& [name, k] : re)
      if (k > 0) mono = mono * MultiPoly::var(name).pow(static_cast<unsigned>(k));
    q = q + mono;
    r = r - mono * b;
  }
  return q;
}

MultiPoly gcd_multi(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return normalize_gcd(b);
  if (b.is_zero()) return normalize_gcd(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(Rat(1));
  // Pick the variable of highest degree in a that occurs in either.
  std::string v;
  int best = 0;
  for (const auto& name : a.vars()) {
    int d = a.degree(name);
    if (d > best) {
      best = d;
      v = name;
    }
  }
  if (b.degree(v) <= 0) {
    // v absent from b: gcd divides the content of a w.r.t. v.
    return gcd_multi(content_in(a, v), b);
  }
  MultiPoly ca = content_in(a, v), cb = content_in(b, v);
  MultiPoly pa = divide_exact(a, ca), pb = divide_exact(b, cb);
  MultiPoly c = gcd_multi(ca, cb);
  // Primitive PRS.
  MultiPoly f = pa, g = pb;
  if (f.degree(v) < g.degree(v)) std::swap(f, g);
  while (true) {
    MultiPoly r = prem_exact(f, g, v);
    if (r.is_zero()) break;
    if (r.degree(v) == 0) {
      g = MultiPoly::constant(Rat(1));
      break;
    }
    MultiPoly cr = content_in(r, v);
    r = divide_exact(r, cr);
    f = g;
    g = r;
  }
  if (g.is_constant()) return normalize_gcd(c);
  MultiPoly cg = content_in(g, v);
  return normalize_gcd(c * divide_exact(g, cg));
}

MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& v) {
  if (a.is_zero() || b.is_zero()) return MultiPoly();
  int da = a.degree(v), db = b.degree(v);
  if (da == 0 && db == 0) return MultiPoly::constant(Rat(1));
  if (da == 0) return a.pow(static_cast<unsigned>(db));
  if (db == 0) return b.pow(static_cast<unsigned>(da));
  int sign = 1;
  MultiPoly A = a, B = b;
  if (da < db) {
    std::swap(A, B);
    std::swap(da, db);
    if ((da & 1) && (db & 1)) sign = -sign;
  }
  // Fraction-free subresultant PRS (Collins / Cohen).
  MultiPoly g = MultiPoly::constant(Rat(1));
  MultiPoly h = MultiPoly::constant(Rat(1));
  while (true) {
    int dA = A.degree(v), dB = B.degree(v);
    int delta = dA - dB;
    if ((dA & 1) && (dB & 1)) sign = -sign;
    MultiPoly R = prem_exact(A, B, v);
    A = B;
    MultiPoly divisor = g * h.pow(static_cast<unsigned>(delta));
    B = divide_exact(R, divisor);
    g = A.leading_coeff(v);
    // h = g^delta / h^(delta-1)
    if (delta == 0) {
      // unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = divide_exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
    if (B.is_zero()) return MultiPoly();
    if (B.degree(v) == 0) {
      int dA2 = A.degree(v);
      // res = s * lc(B)^dA2 / h^(dA2 - 1)
      MultiPoly num = B.pow(static_cast<unsigned>(dA2));
      MultiPoly res = dA2 >= 1 ? divide_exact(num, h.pow(static_cast<unsigned>(dA2 - 1)))
                               : num;
      return sign < 0 ? -res : res;
    }
  }
}

MultiPoly discriminant(const MultiPoly& p, const std::string& v) {
  int n = p.degree(v);
  if (n < 2) throw std::domain_error("discriminant needs degree >= 2");
  MultiPoly res = resultant(p, p.derivative(v), v);
  MultiPoly lc = p.leading_coeff(v);
  MultiPoly d = divide_exact(res, lc);
  long k = static_cast<long>(n) * (n - 1) / 2;
  return (k % 2 != 0) ? -d : d;
}

MultiPoly squarefree_in(const MultiPoly& p, const std::string& v) {
  if (p.is_zero() || p.degree(v) == 0) return p;
  MultiPoly g = gcd_multi(p, p.derivative(v));
  if (g.is_constant()) return p;
  return divide_exact(p, g);
}

MultiPoly pseudo_rem(const MultiPoly& a, const MultiPoly& b, const std::string& v) {
  return prem_exact(a, b, v);
}

}  // namespace cqe
