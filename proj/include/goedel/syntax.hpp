#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "goedel/errors.hpp"

// The object language: a first-order arithmetic signature (0, S, +, *, =)
// plus a denumerable family of variables x1, x2, ... and extension constants
// a1, a2, ... Numerals are kept compact: a single AST node carrying the
// successor count as a bignum, never materialized symbol by symbol.
//
// Concrete syntax (ASCII, fully parenthesized):
//   atomic      t=u
//   negation    ~(F)
//   binary      (F&G)  (F|G)  (F->G)
//   quantifier  Exi(F)  Axi(F)        i a decimal variable index >= 1
//   terms       0   0^(d)   S t   (t+u)   (t*u)   xi   ai

namespace goedel {

using Nat = boost::multiprecision::cpp_int;

// Default cap on how many successor symbols a numeral may expand to when a
// token sequence has to be materialized (Goedel numbering). Numerals above
// the cap still parse, print and substitute fine.
inline constexpr std::uint64_t kDefaultNumeralBound = 1000;

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

enum class SymbolKind {
  Zero,
  Succ,
  Plus,
  Times,
  Equals,
  Neg,
  And,
  Or,
  Implies,
  Exists,
  Forall,
  LParen,
  RParen,
  Variable,
  Constant,
};

// A single token of the object language. `index` is meaningful only for
// Variable/Constant and is always >= 1.
struct Symbol {
  SymbolKind kind;
  std::uint64_t index = 0;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.kind == b.kind && a.index == b.index;
  }
};

inline Symbol sym(SymbolKind k) { return Symbol{k, 0}; }

inline Symbol var_symbol(std::uint64_t index) {
  return Symbol{SymbolKind::Variable, index};
}

inline Symbol const_symbol(std::uint64_t index) {
  return Symbol{SymbolKind::Constant, index};
}

// ASCII spelling used by the printer and by token-sequence rendering.
inline std::string spelling(const Symbol& s) {
  switch (s.kind) {
    case SymbolKind::Zero: return "0";
    case SymbolKind::Succ: return "S";
    case SymbolKind::Plus: return "+";
    case SymbolKind::Times: return "*";
    case SymbolKind::Equals: return "=";
    case SymbolKind::Neg: return "~";
    case SymbolKind::And: return "&";
    case SymbolKind::Or: return "|";
    case SymbolKind::Implies: return "->";
    case SymbolKind::Exists: return "E";
    case SymbolKind::Forall: return "A";
    case SymbolKind::LParen: return "(";
    case SymbolKind::RParen: return ")";
    case SymbolKind::Variable: return "x" + std::to_string(s.index);
    case SymbolKind::Constant: return "a" + std::to_string(s.index);
  }
  return "?";
}

using TokenSeq = std::vector<Symbol>;

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

class Term {
 public:
  enum class Kind { Numeral, Variable, Constant, Succ, Plus, Times };

  // Factories. succ() folds a numeral base, so Succ never sits directly
  // above a Numeral and terms are canonical by construction.
  static Term numeral(Nat count) {
    Node n;
    n.kind = Kind::Numeral;
    n.count = std::move(count);
    return Term(std::make_shared<const Node>(std::move(n)));
  }
  static Term variable(std::uint64_t index) {
    Node n;
    n.kind = Kind::Variable;
    n.index = index;
    return Term(std::make_shared<const Node>(std::move(n)));
  }
  static Term constant(std::uint64_t index) {
    Node n;
    n.kind = Kind::Constant;
    n.index = index;
    return Term(std::make_shared<const Node>(std::move(n)));
  }
  static Term succ(Term base) {
    if (base.kind() == Kind::Numeral) return numeral(base.count() + 1);
    Node n;
    n.kind = Kind::Succ;
    n.children.push_back(std::move(base));
    return Term(std::make_shared<const Node>(std::move(n)));
  }
  static Term plus(Term lhs, Term rhs) { return binary(Kind::Plus, std::move(lhs), std::move(rhs)); }
  static Term times(Term lhs, Term rhs) { return binary(Kind::Times, std::move(lhs), std::move(rhs)); }

  Kind kind() const { return node_->kind; }
  const Nat& count() const { return node_->count; }
  std::uint64_t index() const { return node_->index; }
  const Term& base() const { return node_->children[0]; }
  const Term& lhs() const { return node_->children[0]; }
  const Term& rhs() const { return node_->children[1]; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Numeral: return a.count() == b.count();
      case Kind::Variable:
      case Kind::Constant: return a.index() == b.index();
      case Kind::Succ: return a.base() == b.base();
      case Kind::Plus:
      case Kind::Times: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return false;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    Nat count;                  // Numeral
    std::uint64_t index = 0;    // Variable / Constant
    std::vector<Term> children;
  };

  static Term binary(Kind k, Term l, Term r) {
    Node n;
    n.kind = k;
    n.children.push_back(std::move(l));
    n.children.push_back(std::move(r));
    return Term(std::make_shared<const Node>(std::move(n)));
  }

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

class Formula {
 public:
  enum class Kind { Equals, Neg, And, Or, Implies, Exists, Forall };

  static Formula equals(Term lhs, Term rhs) {
    Node n;
    n.kind = Kind::Equals;
    n.terms.push_back(std::move(lhs));
    n.terms.push_back(std::move(rhs));
    return Formula(std::make_shared<const Node>(std::move(n)));
  }
  static Formula neg(Formula f) {
    Node n;
    n.kind = Kind::Neg;
    n.children.push_back(std::move(f));
    return Formula(std::make_shared<const Node>(std::move(n)));
  }
  static Formula conj(Formula l, Formula r) { return binary(Kind::And, std::move(l), std::move(r)); }
  static Formula disj(Formula l, Formula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
  static Formula implies(Formula l, Formula r) { return binary(Kind::Implies, std::move(l), std::move(r)); }
  static Formula exists(std::uint64_t var, Formula body) { return quant(Kind::Exists, var, std::move(body)); }
  static Formula forall(std::uint64_t var, Formula body) { return quant(Kind::Forall, var, std::move(body)); }

  Kind kind() const { return node_->kind; }
  const Term& lhs_term() const { return node_->terms[0]; }
  const Term& rhs_term() const { return node_->terms[1]; }
  const Formula& child() const { return node_->children[0]; }
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }
  std::uint64_t var() const { return node_->var; }
  const Formula& body() const { return node_->children[0]; }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Equals:
        return a.lhs_term() == b.lhs_term() && a.rhs_term() == b.rhs_term();
      case Kind::Neg: return a.child() == b.child();
      case Kind::And:
      case Kind::Or:
      case Kind::Implies: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
      case Kind::Exists:
      case Kind::Forall: return a.var() == b.var() && a.body() == b.body();
    }
    return false;
  }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::vector<Term> terms;       // Equals
    std::vector<Formula> children; // Neg / And / Or / Implies / quantifier body
    std::uint64_t var = 0;         // Exists / Forall
  };

  static Formula binary(Kind k, Formula l, Formula r) {
    Node n;
    n.kind = k;
    n.children.push_back(std::move(l));
    n.children.push_back(std::move(r));
    return Formula(std::make_shared<const Node>(std::move(n)));
  }
  static Formula quant(Kind k, std::uint64_t var, Formula body) {
    Node n;
    n.kind = k;
    n.var = var;
    n.children.push_back(std::move(body));
    return Formula(std::make_shared<const Node>(std::move(n)));
  }

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {

inline void print_term(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Numeral:
      if (t.count() == 0) {
        out += '0';
      } else {
        out += "0^(";
        out += t.count().str();
        out += ')';
      }
      return;
    case Term::Kind::Variable:
      out += 'x';
      out += std::to_string(t.index());
      return;
    case Term::Kind::Constant:
      out += 'a';
      out += std::to_string(t.index());
      return;
    case Term::Kind::Succ:
      out += 'S';
      print_term(t.base(), out);
      return;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      out += '(';
      print_term(t.lhs(), out);
      out += t.kind() == Term::Kind::Plus ? '+' : '*';
      print_term(t.rhs(), out);
      out += ')';
      return;
  }
}

inline void print_formula(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Equals:
      print_term(f.lhs_term(), out);
      out += '=';
      print_term(f.rhs_term(), out);
      return;
    case Formula::Kind::Neg:
      out += "~(";
      print_formula(f.child(), out);
      out += ')';
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      out += '(';
      print_formula(f.lhs(), out);
      if (f.kind() == Formula::Kind::And) out += '&';
      else if (f.kind() == Formula::Kind::Or) out += '|';
      else out += "->";
      print_formula(f.rhs(), out);
      out += ')';
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out += f.kind() == Formula::Kind::Exists ? 'E' : 'A';
      out += 'x';
      out += std::to_string(f.var());
      out += '(';
      print_formula(f.body(), out);
      out += ')';
      return;
  }
}

}  // namespace detail

// Canonical rendering. Numerals always come out as `0` or `0^(d)`, never as
// expanded successor runs.
inline std::string print(const Term& t) {
  std::string out;
  detail::print_term(t, out);
  return out;
}

inline std::string print(const Formula& f) {
  std::string out;
  detail::print_formula(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Token sequences
// ---------------------------------------------------------------------------

namespace detail {

inline void term_tokens(const Term& t, std::uint64_t numeral_bound, TokenSeq& out) {
  switch (t.kind()) {
    case Term::Kind::Numeral: {
      if (t.count() > numeral_bound)
        throw NumeralTooLarge("numeral 0^(" + t.count().str() +
                              ") exceeds the expansion bound " +
                              std::to_string(numeral_bound));
      auto n = t.count().convert_to<std::uint64_t>();
      for (std::uint64_t i = 0; i < n; ++i) out.push_back(sym(SymbolKind::Succ));
      out.push_back(sym(SymbolKind::Zero));
      return;
    }
    case Term::Kind::Variable:
      out.push_back(var_symbol(t.index()));
      return;
    case Term::Kind::Constant:
      out.push_back(const_symbol(t.index()));
      return;
    case Term::Kind::Succ:
      out.push_back(sym(SymbolKind::Succ));
      term_tokens(t.base(), numeral_bound, out);
      return;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      out.push_back(sym(SymbolKind::LParen));
      term_tokens(t.lhs(), numeral_bound, out);
      out.push_back(sym(t.kind() == Term::Kind::Plus ? SymbolKind::Plus : SymbolKind::Times));
      term_tokens(t.rhs(), numeral_bound, out);
      out.push_back(sym(SymbolKind::RParen));
      return;
  }
}

inline void formula_tokens(const Formula& f, std::uint64_t numeral_bound, TokenSeq& out) {
  switch (f.kind()) {
    case Formula::Kind::Equals:
      term_tokens(f.lhs_term(), numeral_bound, out);
      out.push_back(sym(SymbolKind::Equals));
      term_tokens(f.rhs_term(), numeral_bound, out);
      return;
    case Formula::Kind::Neg:
      out.push_back(sym(SymbolKind::Neg));
      out.push_back(sym(SymbolKind::LParen));
      formula_tokens(f.child(), numeral_bound, out);
      out.push_back(sym(SymbolKind::RParen));
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      out.push_back(sym(SymbolKind::LParen));
      formula_tokens(f.lhs(), numeral_bound, out);
      SymbolKind op = f.kind() == Formula::Kind::And ? SymbolKind::And
                    : f.kind() == Formula::Kind::Or ? SymbolKind::Or
                                                    : SymbolKind::Implies;
      out.push_back(sym(op));
      formula_tokens(f.rhs(), numeral_bound, out);
      out.push_back(sym(SymbolKind::RParen));
      return;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out.push_back(sym(f.kind() == Formula::Kind::Exists ? SymbolKind::Exists
                                                          : SymbolKind::Forall));
      out.push_back(var_symbol(f.var()));
      out.push_back(sym(SymbolKind::LParen));
      formula_tokens(f.body(), numeral_bound, out);
      out.push_back(sym(SymbolKind::RParen));
      return;
  }
}

inline Nat term_token_length(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Numeral: return t.count() + 1;
    case Term::Kind::Variable:
    case Term::Kind::Constant: return 1;
    case Term::Kind::Succ: return term_token_length(t.base()) + 1;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      return term_token_length(t.lhs()) + term_token_length(t.rhs()) + 3;
  }
  return 0;
}

inline Nat formula_token_length(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Equals:
      return term_token_length(f.lhs_term()) + term_token_length(f.rhs_term()) + 1;
    case Formula::Kind::Neg: return formula_token_length(f.child()) + 3;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return formula_token_length(f.lhs()) + formula_token_length(f.rhs()) + 3;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return formula_token_length(f.body()) + 4;
  }
  return 0;
}

}  // namespace detail

// Token sequence with numerals expanded into successor runs. Throws
// NumeralTooLarge when a numeral exceeds `numeral_bound`.
inline TokenSeq tokens(const Formula& f, std::uint64_t numeral_bound = kDefaultNumeralBound) {
  TokenSeq out;
  detail::formula_tokens(f, numeral_bound, out);
  return out;
}

inline TokenSeq tokens(const Term& t, std::uint64_t numeral_bound = kDefaultNumeralBound) {
  TokenSeq out;
  detail::term_tokens(t, numeral_bound, out);
  return out;
}

// Exact token count without materializing anything (numerals count as
// count+1 tokens, so the result is a bignum).
inline Nat token_length(const Formula& f) { return detail::formula_token_length(f); }
inline Nat token_length(const Term& t) { return detail::term_token_length(t); }

// ---------------------------------------------------------------------------
// Variables and constants
// ---------------------------------------------------------------------------

namespace detail {

inline void term_vars(const Term& t, std::set<std::uint64_t>& out) {
  switch (t.kind()) {
    case Term::Kind::Variable: out.insert(t.index()); return;
    case Term::Kind::Succ: term_vars(t.base(), out); return;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      term_vars(t.lhs(), out);
      term_vars(t.rhs(), out);
      return;
    default: return;
  }
}

inline void formula_free_vars(const Formula& f, std::set<std::uint64_t>& out) {
  switch (f.kind()) {
    case Formula::Kind::Equals:
      term_vars(f.lhs_term(), out);
      term_vars(f.rhs_term(), out);
      return;
    case Formula::Kind::Neg: formula_free_vars(f.child(), out); return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      formula_free_vars(f.lhs(), out);
      formula_free_vars(f.rhs(), out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::set<std::uint64_t> inner;
      formula_free_vars(f.body(), inner);
      inner.erase(f.var());
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

inline void term_constants(const Term& t, std::set<std::uint64_t>& out) {
  switch (t.kind()) {
    case Term::Kind::Constant: out.insert(t.index()); return;
    case Term::Kind::Succ: term_constants(t.base(), out); return;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      term_constants(t.lhs(), out);
      term_constants(t.rhs(), out);
      return;
    default: return;
  }
}

inline void formula_constants(const Formula& f, std::set<std::uint64_t>& out) {
  switch (f.kind()) {
    case Formula::Kind::Equals:
      term_constants(f.lhs_term(), out);
      term_constants(f.rhs_term(), out);
      return;
    case Formula::Kind::Neg: formula_constants(f.child(), out); return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      formula_constants(f.lhs(), out);
      formula_constants(f.rhs(), out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      formula_constants(f.body(), out);
      return;
  }
}

}  // namespace detail

inline std::set<std::uint64_t> free_vars(const Formula& f) {
  std::set<std::uint64_t> out;
  detail::formula_free_vars(f, out);
  return out;
}

inline std::set<std::uint64_t> variables(const Term& t) {
  std::set<std::uint64_t> out;
  detail::term_vars(t, out);
  return out;
}

inline std::set<std::uint64_t> constants(const Formula& f) {
  std::set<std::uint64_t> out;
  detail::formula_constants(f, out);
  return out;
}

inline std::set<std::uint64_t> constants(const Term& t) {
  std::set<std::uint64_t> out;
  detail::term_constants(t, out);
  return out;
}

inline bool is_closed(const Term& t) { return variables(t).empty(); }

inline bool mentions_constants(const Formula& f) { return !constants(f).empty(); }

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace detail {

inline Term term_subst_var(const Term& t, std::uint64_t var, const Term& repl, bool& changed) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (t.index() == var) {
        changed = true;
        return repl;
      }
      return t;
    case Term::Kind::Succ: {
      bool c = false;
      Term b = term_subst_var(t.base(), var, repl, c);
      if (!c) return t;
      changed = true;
      return Term::succ(std::move(b));
    }
    case Term::Kind::Plus:
    case Term::Kind::Times: {
      bool c = false;
      Term l = term_subst_var(t.lhs(), var, repl, c);
      Term r = term_subst_var(t.rhs(), var, repl, c);
      if (!c) return t;
      changed = true;
      return t.kind() == Term::Kind::Plus ? Term::plus(std::move(l), std::move(r))
                                          : Term::times(std::move(l), std::move(r));
    }
    default: return t;
  }
}

inline Formula formula_subst_var(const Formula& f, std::uint64_t var, const Term& repl,
                                 bool& changed) {
  switch (f.kind()) {
    case Formula::Kind::Equals: {
      bool c = false;
      Term l = term_subst_var(f.lhs_term(), var, repl, c);
      Term r = term_subst_var(f.rhs_term(), var, repl, c);
      if (!c) return f;
      changed = true;
      return Formula::equals(std::move(l), std::move(r));
    }
    case Formula::Kind::Neg: {
      bool c = false;
      Formula b = formula_subst_var(f.child(), var, repl, c);
      if (!c) return f;
      changed = true;
      return Formula::neg(std::move(b));
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      bool c = false;
      Formula l = formula_subst_var(f.lhs(), var, repl, c);
      Formula r = formula_subst_var(f.rhs(), var, repl, c);
      if (!c) return f;
      changed = true;
      if (f.kind() == Formula::Kind::And) return Formula::conj(std::move(l), std::move(r));
      if (f.kind() == Formula::Kind::Or) return Formula::disj(std::move(l), std::move(r));
      return Formula::implies(std::move(l), std::move(r));
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      if (f.var() == var) return f;  // bound occurrences stay untouched
      bool c = false;
      Formula b = formula_subst_var(f.body(), var, repl, c);
      if (!c) return f;
      changed = true;
      return f.kind() == Formula::Kind::Exists ? Formula::exists(f.var(), std::move(b))
                                               : Formula::forall(f.var(), std::move(b));
    }
  }
  return f;
}

inline Term term_subst_const(const Term& t, std::uint64_t index, const Term& repl, bool& changed) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      if (t.index() == index) {
        changed = true;
        return repl;
      }
      return t;
    case Term::Kind::Succ: {
      bool c = false;
      Term b = term_subst_const(t.base(), index, repl, c);
      if (!c) return t;
      changed = true;
      return Term::succ(std::move(b));
    }
    case Term::Kind::Plus:
    case Term::Kind::Times: {
      bool c = false;
      Term l = term_subst_const(t.lhs(), index, repl, c);
      Term r = term_subst_const(t.rhs(), index, repl, c);
      if (!c) return t;
      changed = true;
      return t.kind() == Term::Kind::Plus ? Term::plus(std::move(l), std::move(r))
                                          : Term::times(std::move(l), std::move(r));
    }
    default: return t;
  }
}

inline Formula formula_subst_const(const Formula& f, std::uint64_t index, const Term& repl,
                                   bool& changed) {
  switch (f.kind()) {
    case Formula::Kind::Equals: {
      bool c = false;
      Term l = term_subst_const(f.lhs_term(), index, repl, c);
      Term r = term_subst_const(f.rhs_term(), index, repl, c);
      if (!c) return f;
      changed = true;
      return Formula::equals(std::move(l), std::move(r));
    }
    case Formula::Kind::Neg: {
      bool c = false;
      Formula b = formula_subst_const(f.child(), index, repl, c);
      if (!c) return f;
      changed = true;
      return Formula::neg(std::move(b));
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      bool c = false;
      Formula l = formula_subst_const(f.lhs(), index, repl, c);
      Formula r = formula_subst_const(f.rhs(), index, repl, c);
      if (!c) return f;
      changed = true;
      if (f.kind() == Formula::Kind::And) return Formula::conj(std::move(l), std::move(r));
      if (f.kind() == Formula::Kind::Or) return Formula::disj(std::move(l), std::move(r));
      return Formula::implies(std::move(l), std::move(r));
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool c = false;
      Formula b = formula_subst_const(f.body(), index, repl, c);
      if (!c) return f;
      changed = true;
      return f.kind() == Formula::Kind::Exists ? Formula::exists(f.var(), std::move(b))
                                               : Formula::forall(f.var(), std::move(b));
    }
  }
  return f;
}

}  // namespace detail

// Replaces every free occurrence of x`var` by the closed term `t`. Shared
// subtrees without the variable are returned as-is, so a vacuous
// substitution yields the identical formula object.
inline Formula substitute(const Formula& f, std::uint64_t var, const Term& t) {
  if (!is_closed(t))
    throw OpenTermError("substitution term " + print(t) + " contains variables");
  bool changed = false;
  return detail::formula_subst_var(f, var, t, changed);
}

// Replaces every occurrence of constant a`index` by the closed term `t`.
inline Formula substitute_constant(const Formula& f, std::uint64_t index, const Term& t) {
  if (!is_closed(t))
    throw OpenTermError("substitution term " + print(t) + " contains variables");
  bool changed = false;
  return detail::formula_subst_const(f, index, t, changed);
}

// Class signs are formulas of the base language (no constants) with at most
// x1 free.
inline bool is_class_sign(const Formula& f) {
  if (mentions_constants(f)) return false;
  auto fv = free_vars(f);
  fv.erase(1);
  return fv.empty();
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

struct Lexeme {
  enum class Type {
    Numeral,   // 0 or 0^(d)
    Succ, Plus, Times, Equals, Neg, And, Or, Implies,
    Exists, Forall, LParen, RParen,
    Variable, Constant,
    End,
  };
  Type type;
  Nat number;           // Numeral
  std::uint64_t index;  // Variable / Constant
  std::size_t pos;
};

inline const char* lexeme_name(Lexeme::Type t) {
  switch (t) {
    case Lexeme::Type::Numeral: return "numeral";
    case Lexeme::Type::Succ: return "'S'";
    case Lexeme::Type::Plus: return "'+'";
    case Lexeme::Type::Times: return "'*'";
    case Lexeme::Type::Equals: return "'='";
    case Lexeme::Type::Neg: return "'~'";
    case Lexeme::Type::And: return "'&'";
    case Lexeme::Type::Or: return "'|'";
    case Lexeme::Type::Implies: return "'->'";
    case Lexeme::Type::Exists: return "'E'";
    case Lexeme::Type::Forall: return "'A'";
    case Lexeme::Type::LParen: return "'('";
    case Lexeme::Type::RParen: return "')'";
    case Lexeme::Type::Variable: return "variable";
    case Lexeme::Type::Constant: return "constant";
    case Lexeme::Type::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Lexeme> run() {
    std::vector<Lexeme> out;
    while (true) {
      skip_space();
      std::size_t start = pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Lexeme::Type::End, 0, 0, start});
        return out;
      }
      char c = text_[pos_];
      switch (c) {
        case '0': out.push_back(lex_numeral()); break;
        case 'S': ++pos_; out.push_back({Lexeme::Type::Succ, 0, 0, start}); break;
        case '+': ++pos_; out.push_back({Lexeme::Type::Plus, 0, 0, start}); break;
        case '*': ++pos_; out.push_back({Lexeme::Type::Times, 0, 0, start}); break;
        case '=': ++pos_; out.push_back({Lexeme::Type::Equals, 0, 0, start}); break;
        case '~': ++pos_; out.push_back({Lexeme::Type::Neg, 0, 0, start}); break;
        case '&': ++pos_; out.push_back({Lexeme::Type::And, 0, 0, start}); break;
        case '|': ++pos_; out.push_back({Lexeme::Type::Or, 0, 0, start}); break;
        case 'E': ++pos_; out.push_back({Lexeme::Type::Exists, 0, 0, start}); break;
        case 'A': ++pos_; out.push_back({Lexeme::Type::Forall, 0, 0, start}); break;
        case '(': ++pos_; out.push_back({Lexeme::Type::LParen, 0, 0, start}); break;
        case ')': ++pos_; out.push_back({Lexeme::Type::RParen, 0, 0, start}); break;
        case '-':
          ++pos_;
          if (pos_ >= text_.size() || text_[pos_] != '>')
            throw SyntaxError(start, {"'->'"}, "stray '-' at offset " + std::to_string(start));
          ++pos_;
          out.push_back({Lexeme::Type::Implies, 0, 0, start});
          break;
        case 'x':
          out.push_back(lex_indexed(Lexeme::Type::Variable));
          break;
        case 'a':
          out.push_back(lex_indexed(Lexeme::Type::Constant));
          break;
        default:
          throw SyntaxError(start, {"token"},
                            std::string("unexpected character '") + c + "' at offset " +
                                std::to_string(start));
      }
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Lexeme lex_numeral() {
    std::size_t start = pos_;
    ++pos_;  // consume '0'
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      if (pos_ >= text_.size() || text_[pos_] != '(')
        throw SyntaxError(pos_, {"'('"}, "expected '(' after '0^' at offset " + std::to_string(pos_));
      ++pos_;
      std::string digits = read_digits();
      if (digits.empty())
        throw SyntaxError(pos_, {"digits"},
                          "expected decimal count in '0^(...)' at offset " + std::to_string(pos_));
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw SyntaxError(pos_, {"')'"}, "unterminated '0^(' at offset " + std::to_string(pos_));
      ++pos_;
      return {Lexeme::Type::Numeral, Nat(digits), 0, start};
    }
    return {Lexeme::Type::Numeral, Nat(0), 0, start};
  }

  Lexeme lex_indexed(Lexeme::Type type) {
    std::size_t start = pos_;
    ++pos_;  // consume 'x' or 'a'
    std::string digits = read_digits();
    if (digits.empty())
      throw SyntaxError(pos_, {"digits"},
                        "expected index digits at offset " + std::to_string(pos_));
    Nat value(digits);
    if (value < 1)
      throw SyntaxError(start, {"index >= 1"},
                        "indices start at 1, got " + digits + " at offset " + std::to_string(start));
    if (value > std::numeric_limits<std::uint64_t>::max())
      throw SyntaxError(start, {"index"}, "index too large at offset " + std::to_string(start));
    return {type, 0, value.convert_to<std::uint64_t>(), start};
  }

  std::string read_digits() {
    std::string out;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      out += text_[pos_++];
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Recursive descent over the lexeme stream. The single ambiguity is a
// formula starting with '(' — binary connective vs. a parenthesized
// arithmetic term on the left of '=' — resolved by backtracking; the error
// that made it furthest wins diagnostics.
class Parser {
 public:
  explicit Parser(std::vector<Lexeme> lexemes) : lex_(std::move(lexemes)) {}

  Formula formula_all() {
    Formula f = formula();
    expect(Lexeme::Type::End);
    return f;
  }

  Term term_all() {
    Term t = term();
    expect(Lexeme::Type::End);
    return t;
  }

 private:
  const Lexeme& cur() const { return lex_[i_]; }

  void expect(Lexeme::Type t) {
    if (cur().type != t)
      throw SyntaxError(cur().pos, {lexeme_name(t)},
                        std::string("expected ") + lexeme_name(t) + " but found " +
                            lexeme_name(cur().type) + " at offset " + std::to_string(cur().pos));
    if (cur().type != Lexeme::Type::End) ++i_;
  }

  Formula formula() {
    switch (cur().type) {
      case Lexeme::Type::Neg: {
        ++i_;
        expect(Lexeme::Type::LParen);
        Formula body = formula();
        expect(Lexeme::Type::RParen);
        return Formula::neg(std::move(body));
      }
      case Lexeme::Type::Exists:
      case Lexeme::Type::Forall: {
        bool ex = cur().type == Lexeme::Type::Exists;
        ++i_;
        if (cur().type != Lexeme::Type::Variable)
          throw SyntaxError(cur().pos, {"variable"},
                            "expected quantified variable at offset " + std::to_string(cur().pos));
        std::uint64_t v = cur().index;
        ++i_;
        expect(Lexeme::Type::LParen);
        Formula body = formula();
        expect(Lexeme::Type::RParen);
        return ex ? Formula::exists(v, std::move(body)) : Formula::forall(v, std::move(body));
      }
      case Lexeme::Type::LParen: {
        // Try (F op G) first, fall back to a term-led equality.
        std::size_t save = i_;
        std::optional<SyntaxError> first_err;
        try {
          ++i_;
          Formula l = formula();
          Formula::Kind op;
          if (cur().type == Lexeme::Type::And) op = Formula::Kind::And;
          else if (cur().type == Lexeme::Type::Or) op = Formula::Kind::Or;
          else if (cur().type == Lexeme::Type::Implies) op = Formula::Kind::Implies;
          else
            throw SyntaxError(cur().pos, {"'&'", "'|'", "'->'"},
                              "expected binary connective at offset " + std::to_string(cur().pos));
          ++i_;
          Formula r = formula();
          expect(Lexeme::Type::RParen);
          if (op == Formula::Kind::And) return Formula::conj(std::move(l), std::move(r));
          if (op == Formula::Kind::Or) return Formula::disj(std::move(l), std::move(r));
          return Formula::implies(std::move(l), std::move(r));
        } catch (const SyntaxError& e) {
          first_err = e;
          i_ = save;
        }
        try {
          return equality();
        } catch (const SyntaxError& e) {
          // Report whichever interpretation consumed more input.
          if (first_err && first_err->position() > e.position()) throw *first_err;
          throw;
        }
      }
      default:
        return equality();
    }
  }

  Formula equality() {
    Term l = term();
    expect(Lexeme::Type::Equals);
    Term r = term();
    return Formula::equals(std::move(l), std::move(r));
  }

  Term term() {
    switch (cur().type) {
      case Lexeme::Type::Numeral: {
        Nat n = cur().number;
        ++i_;
        return Term::numeral(std::move(n));
      }
      case Lexeme::Type::Succ: {
        ++i_;
        return Term::succ(term());  // folds numeral bases
      }
      case Lexeme::Type::Variable: {
        std::uint64_t v = cur().index;
        ++i_;
        return Term::variable(v);
      }
      case Lexeme::Type::Constant: {
        std::uint64_t c = cur().index;
        ++i_;
        return Term::constant(c);
      }
      case Lexeme::Type::LParen: {
        ++i_;
        Term l = term();
        bool plus;
        if (cur().type == Lexeme::Type::Plus) plus = true;
        else if (cur().type == Lexeme::Type::Times) plus = false;
        else
          throw SyntaxError(cur().pos, {"'+'", "'*'"},
                            "expected '+' or '*' at offset " + std::to_string(cur().pos));
        ++i_;
        Term r = term();
        expect(Lexeme::Type::RParen);
        return plus ? Term::plus(std::move(l), std::move(r))
                    : Term::times(std::move(l), std::move(r));
      }
      default:
        throw SyntaxError(cur().pos, {"term"},
                          std::string("expected a term but found ") + lexeme_name(cur().type) +
                              " at offset " + std::to_string(cur().pos));
    }
  }

  std::vector<Lexeme> lex_;
  std::size_t i_ = 0;
};

}  // namespace detail

// Parses the canonical concrete syntax. `S t` is accepted on input and
// normalized (successors over a numeral fold into the numeral).
inline Formula parse_formula(std::string_view text) {
  return detail::Parser(detail::Lexer(text).run()).formula_all();
}

inline Term parse_term(std::string_view text) {
  return detail::Parser(detail::Lexer(text).run()).term_all();
}

// Renders a raw symbol sequence as text. Parseable sequences re-lex to the
// same tokens; garbage sequences simply fail to parse downstream.
inline std::string render(const TokenSeq& seq) {
  std::string out;
  for (const Symbol& s : seq) out += spelling(s);
  return out;
}

}  // namespace goedel
