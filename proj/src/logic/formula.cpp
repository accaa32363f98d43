#include "logic/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cqe {

size_t Signature::add_symbol(const std::string& name, int arity, int backing_id) {
  if (arity < 1) throw std::invalid_argument("symbol arity must be >= 1: " + name);
  if (symbol_index_.count(name)) throw std::invalid_argument("duplicate symbol: " + name);
  symbols_.push_back({name, arity, backing_id});
  symbol_index_[name] = symbols_.size() - 1;
  return symbols_.size() - 1;
}

const Signature::SymbolInfo* Signature::find(const std::string& name) const {
  auto it = symbol_index_.find(name);
  return it == symbol_index_.end() ? nullptr : &symbols_[it->second];
}

size_t Signature::add_constant(const std::string& name, AlgebraicNumber value) {
  if (constant_index_.count(name)) throw std::invalid_argument("duplicate constant: " + name);
  constants_.emplace_back(name, std::move(value));
  constant_index_[name] = constants_.size() - 1;
  return constants_.size() - 1;
}

size_t Signature::intern_rational(const Rat& value) {
  std::string name = rational_to_string(value);
  auto it = constant_index_.find(name);
  if (it != constant_index_.end()) return it->second;
  return add_constant(name, AlgebraicNumber(value));
}

std::optional<size_t> Signature::find_constant(const std::string& name) const {
  auto it = constant_index_.find(name);
  if (it == constant_index_.end()) return std::nullopt;
  return it->second;
}

namespace {

FormulaPtr make(FKind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

}  // namespace

FormulaPtr f_true() {
  static FormulaPtr t = make(FKind::True);
  return t;
}
FormulaPtr f_false() {
  static FormulaPtr t = make(FKind::False);
  return t;
}

FormulaPtr f_atom(const std::string& symbol, std::vector<std::string> args) {
  auto f = std::make_shared<Formula>();
  f->kind = FKind::Atom;
  f->symbol = symbol;
  f->args = std::move(args);
  return f;
}

FormulaPtr f_equals(const std::string& var, size_t const_id) {
  auto f = std::make_shared<Formula>();
  f->kind = FKind::Equals;
  f->var = var;
  f->const_id = const_id;
  return f;
}

FormulaPtr f_not(FormulaPtr g) {
  auto f = std::make_shared<Formula>();
  f->kind = FKind::Not;
  f->children = {std::move(g)};
  return f;
}

FormulaPtr f_and(std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw std::invalid_argument("conjunction needs at least one member");
  auto f = std::make_shared<Formula>();
  f->kind = FKind::And;
  f->children = std::move(fs);
  return f;
}

FormulaPtr f_or(std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw std::invalid_argument("disjunction needs at least one member");
  auto f = std::make_shared<Formula>();
  f->kind = FKind::Or;
  f->children = std::move(fs);
  return f;
}

namespace {

FormulaPtr binder(FKind k, long count, const std::string& var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->var = var;
  f->count = count;
  f->children = {std::move(body)};
  return f;
}

}  // namespace

FormulaPtr f_exists(const std::string& var, FormulaPtr body) {
  return binder(FKind::Exists, 1, var, std::move(body));
}
FormulaPtr f_count_ge(long d, const std::string& var, FormulaPtr body) {
  if (d < 0) throw std::invalid_argument("count must be >= 0");
  return binder(FKind::CountAtLeast, d, var, std::move(body));
}
FormulaPtr f_count_eq(long d, const std::string& var, FormulaPtr body) {
  if (d < 0) throw std::invalid_argument("count must be >= 0");
  return binder(FKind::CountExactly, d, var, std::move(body));
}
FormulaPtr f_count_inf(const std::string& var, FormulaPtr body) {
  return binder(FKind::CountInfinite, 0, var, std::move(body));
}

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->symbol != b->symbol || a->args != b->args || a->var != b->var ||
      a->const_id != b->const_id || a->count != b->count ||
      a->children.size() != b->children.size())
    return false;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (!formulas_equal(a->children[i], b->children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Kind { LParen, RParen, Word, End } kind;
  std::string text;
  int line, col;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) {}
  Token next() {
    skip_ws();
    if (i_ >= s_.size()) return {Token::End, "", line_, col_};
    char c = s_[i_];
    if (c == '(') {
      Token t{Token::LParen, "(", line_, col_};
      advance();
      return t;
    }
    if (c == ')') {
      Token t{Token::RParen, ")", line_, col_};
      advance();
      return t;
    }
    int l = line_, cl = col_;
    std::string w;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')') {
      w.push_back(s_[i_]);
      advance();
    }
    return {Token::Word, w, l, cl};
  }

private:
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void skip_ws() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance();
      } else if (s_[i_] == ';') {  // comment to end of line
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }
  const std::string& s_;
  size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

bool is_identifier(const std::string& w) {
  if (w.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(w[0])) && w[0] != '_') return false;
  for (char c : w)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return true;
}

bool is_rational_literal(const std::string& w) {
  if (w.empty()) return false;
  size_t i = (w[0] == '-' || w[0] == '+') ? 1 : 0;
  if (i >= w.size()) return false;
  bool digit = false;
  for (; i < w.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(w[i])))
      digit = true;
    else if (w[i] != '/' && w[i] != '.')
      return false;
  }
  return digit;
}

class Parser {
public:
  Parser(const std::string& text, Signature& sig) : lx_(text), sig_(sig) { shift(); }

  FormulaPtr parse_all() {
    FormulaPtr f = parse_formula();
    if (tok_.kind != Token::End) fail("trailing input after formula");
    validate(f, {});
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, tok_.line, tok_.col); }
  void shift() { tok_ = lx_.next(); }
  std::string expect_word(const char* what) {
    if (tok_.kind != Token::Word) fail(std::string("expected ") + what);
    std::string w = tok_.text;
    shift();
    return w;
  }

  FormulaPtr parse_formula() {
    if (tok_.kind == Token::Word) {
      if (tok_.text == "true") {
        shift();
        return f_true();
      }
      if (tok_.text == "false") {
        shift();
        return f_false();
      }
      fail("expected formula");
    }
    if (tok_.kind != Token::LParen) fail("expected formula");
    shift();
    std::string head = expect_word("operator or predicate");
    FormulaPtr out;
    if (head == "and" || head == "or") {
      std::vector<FormulaPtr> kids;
      while (tok_.kind != Token::RParen) kids.push_back(parse_formula());
      if (kids.empty()) fail(head + " needs at least one operand");
      out = head == "and" ? f_and(std::move(kids)) : f_or(std::move(kids));
    } else if (head == "not") {
      out = f_not(parse_formula());
    } else if (head == "exists" || head == "countINF") {
      std::string v = expect_word("variable");
      if (!is_identifier(v)) fail("bad variable name: " + v);
      FormulaPtr body = parse_formula();
      out = head == "exists" ? f_exists(v, body) : f_count_inf(v, body);
    } else if (head == "countGE" || head == "countEQ") {
      std::string n = expect_word("count");
      long d = 0;
      try {
        size_t pos = 0;
        d = std::stol(n, &pos);
        if (pos != n.size() || d < 0) throw std::invalid_argument("");
      } catch (...) {
        fail("bad count: " + n);
      }
      std::string v = expect_word("variable");
      if (!is_identifier(v)) fail("bad variable name: " + v);
      FormulaPtr body = parse_formula();
      out = head == "countGE" ? f_count_ge(d, v, body) : f_count_eq(d, v, body);
    } else if (head == "=") {
      std::string v = expect_word("variable");
      if (!is_identifier(v)) fail("bad variable name: " + v);
      std::string c = expect_word("constant");
      size_t cid;
      if (is_rational_literal(c)) {
        cid = sig_.intern_rational(parse_rational(c));
      } else if (auto found = sig_.find_constant(c)) {
        cid = *found;
      } else {
        fail("undeclared constant: " + c);
      }
      out = f_equals(v, cid);
    } else if (is_identifier(head)) {
      const Signature::SymbolInfo* info = sig_.find(head);
      if (!info) fail("undeclared symbol: " + head);
      std::vector<std::string> args;
      while (tok_.kind == Token::Word) {
        if (!is_identifier(tok_.text)) fail("bad variable name: " + tok_.text);
        args.push_back(tok_.text);
        shift();
      }
      if (static_cast<int>(args.size()) != info->arity)
        fail("arity mismatch for " + head + ": expected " + std::to_string(info->arity) +
             ", got " + std::to_string(args.size()));
      for (size_t i = 0; i < args.size(); ++i)
        for (size_t j = i + 1; j < args.size(); ++j)
          if (args[i] == args[j]) fail("repeated variable in argument tuple: " + args[i]);
      out = f_atom(head, std::move(args));
    } else {
      fail("unknown operator: " + head);
    }
    if (tok_.kind != Token::RParen) fail("expected )");
    shift();
    return out;
  }

  // No variable may be bound twice along one branch.
  void validate(const FormulaPtr& f, std::set<std::string> bound) {
    switch (f->kind) {
      case FKind::Exists:
      case FKind::CountAtLeast:
      case FKind::CountExactly:
      case FKind::CountInfinite:
        if (bound.count(f->var))
          throw ParseError("variable bound twice on one branch: " + f->var, tok_.line, tok_.col);
        bound.insert(f->var);
        validate(f->children[0], bound);
        return;
      default:
        for (const auto& c : f->children) validate(c, bound);
    }
  }

  Lexer lx_;
  Token tok_{Token::End, "", 0, 0};
  Signature& sig_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, Signature& sig) {
  return Parser(text, sig).parse_all();
}

std::string print_formula(const FormulaPtr& f, const Signature& sig) {
  std::ostringstream os;
  switch (f->kind) {
    case FKind::True:
      os << "true";
      break;
    case FKind::False:
      os << "false";
      break;
    case FKind::Atom:
      os << "(" << f->symbol;
      for (const auto& a : f->args) os << " " << a;
      os << ")";
      break;
    case FKind::Equals:
      os << "(= " << f->var << " " << sig.constant_name(f->const_id) << ")";
      break;
    case FKind::Not:
      os << "(not " << print_formula(f->children[0], sig) << ")";
      break;
    case FKind::And:
    case FKind::Or:
      os << "(" << (f->kind == FKind::And ? "and" : "or");
      for (const auto& c : f->children) os << " " << print_formula(c, sig);
      os << ")";
      break;
    case FKind::Exists:
      os << "(exists " << f->var << " " << print_formula(f->children[0], sig) << ")";
      break;
    case FKind::CountAtLeast:
      os << "(countGE " << f->count << " " << f->var << " " << print_formula(f->children[0], sig)
         << ")";
      break;
    case FKind::CountExactly:
      os << "(countEQ " << f->count << " " << f->var << " " << print_formula(f->children[0], sig)
         << ")";
      break;
    case FKind::CountInfinite:
      os << "(countINF " << f->var << " " << print_formula(f->children[0], sig) << ")";
      break;
  }
  return os.str();
}

namespace {

void collect_vars(const FormulaPtr& f, std::set<std::string>& bound_here,
                  std::set<std::string>& free_out) {
  switch (f->kind) {
    case FKind::Atom:
      for (const auto& a : f->args)
        if (!bound_here.count(a)) free_out.insert(a);
      return;
    case FKind::Equals:
      if (!bound_here.count(f->var)) free_out.insert(f->var);
      return;
    case FKind::Exists:
    case FKind::CountAtLeast:
    case FKind::CountExactly:
    case FKind::CountInfinite: {
      bool inserted = bound_here.insert(f->var).second;
      collect_vars(f->children[0], bound_here, free_out);
      if (inserted) bound_here.erase(f->var);
      return;
    }
    default:
      for (const auto& c : f->children) collect_vars(c, bound_here, free_out);
  }
}

void collect_bound(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Exists:
    case FKind::CountAtLeast:
    case FKind::CountExactly:
    case FKind::CountInfinite:
      out.insert(f->var);
      collect_bound(f->children[0], out);
      return;
    default:
      for (const auto& c : f->children) collect_bound(c, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, free;
  collect_vars(f, bound, free);
  return free;
}

std::set<std::string> bound_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_bound(f, out);
  return out;
}

FormulaPtr normalize(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Atom:
    case FKind::Equals:
      return f;
    case FKind::Not: {
      FormulaPtr c = normalize(f->children[0]);
      if (c->kind == FKind::True) return f_false();
      if (c->kind == FKind::False) return f_true();
      if (c->kind == FKind::Not) return c->children[0];
      return f_not(c);
    }
    case FKind::And:
    case FKind::Or: {
      bool is_and = f->kind == FKind::And;
      std::vector<FormulaPtr> kids;
      for (const auto& c : f->children) {
        FormulaPtr n = normalize(c);
        if (n->kind == (is_and ? FKind::True : FKind::False)) continue;
        if (n->kind == (is_and ? FKind::False : FKind::True))
          return is_and ? f_false() : f_true();
        bool dup = false;
        for (const auto& k : kids)
          if (formulas_equal(k, n)) {
            dup = true;
            break;
          }
        if (!dup) kids.push_back(n);
      }
      if (kids.empty()) return is_and ? f_true() : f_false();
      if (kids.size() == 1) return kids[0];
      return is_and ? f_and(std::move(kids)) : f_or(std::move(kids));
    }
    case FKind::Exists:
      return f_count_ge(1, f->var, normalize(f->children[0]));
    case FKind::CountAtLeast: {
      if (f->count == 0) return f_true();
      return f_count_ge(f->count, f->var, normalize(f->children[0]));
    }
    case FKind::CountExactly:
      return f_count_eq(f->count, f->var, normalize(f->children[0]));
    case FKind::CountInfinite:
      return f_count_inf(f->var, normalize(f->children[0]));
  }
  return f;
}

namespace {

bool is_literal(const FormulaPtr& f) {
  if (f->kind == FKind::Not) {
    FKind k = f->children[0]->kind;
    return k != FKind::And && k != FKind::Or && k != FKind::Not;
  }
  return f->kind != FKind::And && f->kind != FKind::Or;
}

// Negation-normal form over the boolean skeleton; quantified nodes opaque.
FormulaPtr to_nnf(const FormulaPtr& f, bool negated) {
  switch (f->kind) {
    case FKind::True:
      return negated ? f_false() : f_true();
    case FKind::False:
      return negated ? f_true() : f_false();
    case FKind::Not:
      return to_nnf(f->children[0], !negated);
    case FKind::And:
    case FKind::Or: {
      bool is_and = (f->kind == FKind::And) != negated;
      std::vector<FormulaPtr> kids;
      for (const auto& c : f->children) kids.push_back(to_nnf(c, negated));
      return is_and ? f_and(std::move(kids)) : f_or(std::move(kids));
    }
    default:
      return negated ? f_not(f) : f;
  }
}

bool literal_complement(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind == FKind::Not && formulas_equal(a->children[0], b)) return true;
  if (b->kind == FKind::Not && formulas_equal(b->children[0], a)) return true;
  return false;
}

}  // namespace

FormulaPtr to_dnf_matrix(const FormulaPtr& f) {
  FormulaPtr n = to_nnf(normalize(f), false);
  // Bottom-up: a list of conjuncts (each a list of literals).
  struct Builder {
    std::vector<std::vector<FormulaPtr>> run(const FormulaPtr& g) {
      if (g->kind == FKind::Or) {
        std::vector<std::vector<FormulaPtr>> out;
        for (const auto& c : g->children) {
          auto sub = run(c);
          out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
      }
      if (g->kind == FKind::And) {
        std::vector<std::vector<FormulaPtr>> acc{{}};
        for (const auto& c : g->children) {
          auto sub = run(c);
          std::vector<std::vector<FormulaPtr>> next;
          for (const auto& left : acc)
            for (const auto& right : sub) {
              std::vector<FormulaPtr> merged = left;
              merged.insert(merged.end(), right.begin(), right.end());
              next.push_back(std::move(merged));
            }
          acc = std::move(next);
        }
        return acc;
      }
      return {{g}};
    }
  };
  if (n->kind == FKind::True || n->kind == FKind::False) return n;
  auto disjuncts = Builder{}.run(n);
  std::vector<FormulaPtr> out;
  for (auto& lits : disjuncts) {
    // Dedupe literals, drop contradictory conjuncts.
    std::vector<FormulaPtr> clean;
    bool contradictory = false;
    for (const auto& l : lits) {
      bool dup = false;
      for (const auto& c : clean) {
        if (formulas_equal(c, l)) dup = true;
        if (literal_complement(c, l)) contradictory = true;
      }
      if (!dup) clean.push_back(l);
    }
    if (contradictory) continue;
    out.push_back(clean.size() == 1 ? clean[0] : f_and(std::move(clean)));
  }
  if (out.empty()) return f_false();
  if (out.size() == 1) return out[0];
  return f_or(std::move(out));
}

bool is_cylinder_combination(const FormulaPtr& f, const Signature& sig) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return true;
    case FKind::Equals:
      return true;  // a singleton 1-curve cylinder
    case FKind::Atom: {
      const auto* info = sig.find(f->symbol);
      return info && info->arity == static_cast<int>(f->args.size());
    }
    case FKind::Not:
    case FKind::And:
    case FKind::Or: {
      for (const auto& c : f->children)
        if (!is_cylinder_combination(c, sig)) return false;
      return true;
    }
    default:
      return false;  // any quantifier disqualifies
  }
}

namespace {

FormulaPtr substitute_rec(const FormulaPtr& f, const std::string& var, size_t const_id,
                          SectionRegistrar& reg) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return f;
    case FKind::Equals:
      if (f->var == var)
        return reg.constants_equal(f->const_id, const_id) ? f_true() : f_false();
      return f;
    case FKind::Atom: {
      bool mentions = std::find(f->args.begin(), f->args.end(), var) != f->args.end();
      if (!mentions) return f;
      std::vector<SectionArg> sargs;
      for (const auto& a : f->args) {
        SectionArg sa;
        if (a == var)
          sa.const_id = const_id;
        else
          sa.var = a;
        sargs.push_back(sa);
      }
      return reg.section_atom(f->symbol, sargs);
    }
    case FKind::Not:
      return f_not(substitute_rec(f->children[0], var, const_id, reg));
    case FKind::And:
    case FKind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& c : f->children) kids.push_back(substitute_rec(c, var, const_id, reg));
      return f->kind == FKind::And ? f_and(std::move(kids)) : f_or(std::move(kids));
    }
    case FKind::Exists:
    case FKind::CountAtLeast:
    case FKind::CountExactly:
    case FKind::CountInfinite: {
      auto g = std::make_shared<Formula>(*f);
      g->children = {substitute_rec(f->children[0], var, const_id, reg)};
      return g;
    }
  }
  return f;
}

}  // namespace

FormulaPtr substitute_constant(const FormulaPtr& f, const std::string& var, size_t const_id,
                               SectionRegistrar& reg) {
  if (bound_vars(f).count(var))
    throw std::invalid_argument("substitute_constant: variable is bound in the formula: " + var);
  return substitute_rec(f, var, const_id, reg);
}

}  // namespace cqe
