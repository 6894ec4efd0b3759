#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "goedel/errors.hpp"
#include "goedel/syntax.hpp"

// A minimal Hilbert-style calculus over the arithmetic language: K/S plus
// conjunction, disjunction, reductio and double negation elimination;
// closed-term quantifier axioms with generalization; equality axioms with a
// replacement (Leibniz) schema; and the seven Robinson axioms as fixed
// sentences. Proofs are explicit line-justified sequences, and every schema
// instance is recognized from the formula shape alone, so a proof file is
// checkable without any side information.
//
// Every schema is closed under replacing constants by numerals, which is
// what makes the constant-elimination translation below work line by line.

namespace goedel {

// ---------------------------------------------------------------------------
// Proof objects
// ---------------------------------------------------------------------------

struct BaseAxiom {
  std::string schema;
  friend bool operator==(const BaseAxiom&, const BaseAxiom&) = default;
};
struct ExtraAxiom {
  std::uint64_t index = 1;
  friend bool operator==(const ExtraAxiom&, const ExtraAxiom&) = default;
};
// Line references are 1-based and must point at earlier lines.
struct ModusPonens {
  std::size_t implication = 0;
  std::size_t antecedent = 0;
  friend bool operator==(const ModusPonens&, const ModusPonens&) = default;
};
struct Generalization {
  std::size_t line = 0;
  std::uint64_t var = 1;
  friend bool operator==(const Generalization&, const Generalization&) = default;
};

using Justification = std::variant<BaseAxiom, ExtraAxiom, ModusPonens, Generalization>;

struct ProofLine {
  Formula formula;
  Justification just;
};

struct Proof {
  std::vector<ProofLine> lines;
};

struct Verdict {
  bool ok = false;
  std::optional<std::size_t> line;
  std::optional<std::string> reason;

  static Verdict accept() { return Verdict{true, std::nullopt, std::nullopt}; }
  static Verdict reject(std::size_t line, std::string reason) {
    return Verdict{false, line, std::move(reason)};
  }
};

// A named axiom system. All systems share the base schemas; they differ in
// the language (constants allowed or not) and in the extra axioms, which
// are looked up lazily so an infinite family never gets materialized.
struct System {
  std::string name;
  bool allows_constants = false;
  std::function<std::optional<Formula>(std::uint64_t)> extra_axiom;
  std::function<std::optional<Nat>(std::uint64_t)> constant_binding;
};

inline System system_s() {
  System s;
  s.name = "S";
  s.allows_constants = false;
  s.extra_axiom = [](std::uint64_t) { return std::nullopt; };
  s.constant_binding = [](std::uint64_t) { return std::nullopt; };
  return s;
}

// ---------------------------------------------------------------------------
// Schema recognition
// ---------------------------------------------------------------------------

namespace detail {

// The canonical form of j successors over a term.
inline Term succ_tower(Term base, const Nat& height) {
  if (base.kind() == Term::Kind::Numeral) return Term::numeral(base.count() + height);
  Term out = std::move(base);
  for (Nat i = 0; i < height; ++i) out = Term::succ(std::move(out));
  return out;
}

// If a == S^j(t) canonically for some j >= 1, returns j.
inline std::optional<Nat> tower_height(const Term& a, const Term& t) {
  if (t.kind() == Term::Kind::Numeral) {
    if (a.kind() != Term::Kind::Numeral || a.count() <= t.count()) return std::nullopt;
    return a.count() - t.count();
  }
  Nat j = 0;
  Term cur = a;
  while (cur.kind() == Term::Kind::Succ) {
    cur = cur.base();
    j += 1;
    if (cur == t) return j;
  }
  return std::nullopt;
}

// G differs from F only by some (possibly zero) occurrences of the term t
// replaced by u — in the sense of plugging t resp. u into one context and
// renormalizing, so successor runs that fold into numerals still count.
inline bool term_replaced(const Term& a, const Term& b, const Term& t, const Term& u) {
  if (a == b) return true;
  if (a == t && b == u) return true;
  // a = S^j(t) and b = S^j(u) after folding
  if (auto j = tower_height(a, t)) {
    if (b == succ_tower(u, *j)) return true;
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Succ:
      return b.kind() == Term::Kind::Succ && term_replaced(a.base(), b.base(), t, u);
    case Term::Kind::Plus:
    case Term::Kind::Times:
      return term_replaced(a.lhs(), b.lhs(), t, u) && term_replaced(a.rhs(), b.rhs(), t, u);
    default: return false;
  }
}

inline bool formula_replaced(const Formula& f, const Formula& g, const Term& t, const Term& u) {
  if (f == g) return true;
  if (f.kind() != g.kind()) return false;
  switch (f.kind()) {
    case Formula::Kind::Equals:
      return term_replaced(f.lhs_term(), g.lhs_term(), t, u) &&
             term_replaced(f.rhs_term(), g.rhs_term(), t, u);
    case Formula::Kind::Neg: return formula_replaced(f.child(), g.child(), t, u);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return formula_replaced(f.lhs(), g.lhs(), t, u) &&
             formula_replaced(f.rhs(), g.rhs(), t, u);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return f.var() == g.var() && formula_replaced(f.body(), g.body(), t, u);
  }
  return false;
}

// Matching result for instantiation schemas: does G equal F[v:=t] for some
// closed t? `term` stays empty when v has no free occurrence (then G == F).
struct InstMatch {
  bool ok = false;
  std::optional<Term> term;
};

inline bool term_inst(const Term& a, const Term& b, std::uint64_t v, bool shadowed,
                      std::optional<Term>& t) {
  if (a.kind() == Term::Kind::Variable && a.index() == v && !shadowed) {
    if (t) return *t == b;
    t = b;
    return true;
  }
  // S^j(v) folds into a numeral when v is instantiated with one.
  if (a.kind() == Term::Kind::Succ && b.kind() == Term::Kind::Numeral && !shadowed) {
    Nat j = 0;
    Term core = a;
    while (core.kind() == Term::Kind::Succ) {
      core = core.base();
      j += 1;
    }
    if (core.kind() != Term::Kind::Variable || core.index() != v) return false;
    if (b.count() < j) return false;
    Term learned = Term::numeral(b.count() - j);
    if (t) return *t == learned;
    t = std::move(learned);
    return true;
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Numeral: return a.count() == b.count();
    case Term::Kind::Variable:
    case Term::Kind::Constant: return a.index() == b.index();
    case Term::Kind::Succ: return term_inst(a.base(), b.base(), v, shadowed, t);
    case Term::Kind::Plus:
    case Term::Kind::Times:
      return term_inst(a.lhs(), b.lhs(), v, shadowed, t) &&
             term_inst(a.rhs(), b.rhs(), v, shadowed, t);
  }
  return false;
}

inline bool formula_inst(const Formula& f, const Formula& g, std::uint64_t v, bool shadowed,
                         std::optional<Term>& t) {
  if (f.kind() != g.kind()) return false;
  switch (f.kind()) {
    case Formula::Kind::Equals:
      return term_inst(f.lhs_term(), g.lhs_term(), v, shadowed, t) &&
             term_inst(f.rhs_term(), g.rhs_term(), v, shadowed, t);
    case Formula::Kind::Neg: return formula_inst(f.child(), g.child(), v, shadowed, t);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return formula_inst(f.lhs(), g.lhs(), v, shadowed, t) &&
             formula_inst(f.rhs(), g.rhs(), v, shadowed, t);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      if (f.var() != g.var()) return false;
      return formula_inst(f.body(), g.body(), v, shadowed || f.var() == v, t);
  }
  return false;
}

inline InstMatch match_instantiation(const Formula& f, std::uint64_t v, const Formula& g) {
  std::optional<Term> t;
  if (!formula_inst(f, g, v, false, t)) return {};
  if (t && !is_closed(*t)) return {};  // only closed instantiation is supported
  return {true, std::move(t)};
}

inline const std::vector<Formula>& robinson_axioms() {
  static const std::vector<Formula> kAxioms = {
      parse_formula("Ax1(Ax2((Sx1=Sx2->x1=x2)))"),
      parse_formula("Ax1(~(Sx1=0))"),
      parse_formula("Ax1((~(x1=0)->Ex2(x1=Sx2)))"),
      parse_formula("Ax1((x1+0)=x1)"),
      parse_formula("Ax1(Ax2((x1+Sx2)=S(x1+x2)))"),
      parse_formula("Ax1((x1*0)=0)"),
      parse_formula("Ax1(Ax2((x1*Sx2)=((x1*x2)+x1)))"),
  };
  return kAxioms;
}

// Shape checks, one per schema. Each returns true iff the formula is an
// instance.

inline bool is_k(const Formula& f) {
  // A -> (B -> A)
  return f.kind() == Formula::Kind::Implies && f.rhs().kind() == Formula::Kind::Implies &&
         f.rhs().rhs() == f.lhs();
}

inline bool is_s(const Formula& f) {
  // (A -> (B -> C)) -> ((A -> B) -> (A -> C))
  using K = Formula::Kind;
  if (f.kind() != K::Implies) return false;
  const Formula& p = f.lhs();
  const Formula& q = f.rhs();
  if (p.kind() != K::Implies || p.rhs().kind() != K::Implies) return false;
  if (q.kind() != K::Implies || q.lhs().kind() != K::Implies || q.rhs().kind() != K::Implies)
    return false;
  const Formula& a = p.lhs();
  const Formula& b = p.rhs().lhs();
  const Formula& c = p.rhs().rhs();
  return q.lhs().lhs() == a && q.lhs().rhs() == b && q.rhs().lhs() == a && q.rhs().rhs() == c;
}

inline bool is_and_elim_left(const Formula& f) {
  return f.kind() == Formula::Kind::Implies && f.lhs().kind() == Formula::Kind::And &&
         f.lhs().lhs() == f.rhs();
}

inline bool is_and_elim_right(const Formula& f) {
  return f.kind() == Formula::Kind::Implies && f.lhs().kind() == Formula::Kind::And &&
         f.lhs().rhs() == f.rhs();
}

inline bool is_and_intro(const Formula& f) {
  // A -> (B -> (A & B))
  using K = Formula::Kind;
  if (f.kind() != K::Implies || f.rhs().kind() != K::Implies) return false;
  const Formula& c = f.rhs().rhs();
  return c.kind() == K::And && c.lhs() == f.lhs() && c.rhs() == f.rhs().lhs();
}

inline bool is_or_intro_left(const Formula& f) {
  return f.kind() == Formula::Kind::Implies && f.rhs().kind() == Formula::Kind::Or &&
         f.rhs().lhs() == f.lhs();
}

inline bool is_or_intro_right(const Formula& f) {
  return f.kind() == Formula::Kind::Implies && f.rhs().kind() == Formula::Kind::Or &&
         f.rhs().rhs() == f.lhs();
}

inline bool is_or_elim(const Formula& f) {
  // (A -> C) -> ((B -> C) -> ((A | B) -> C))
  using K = Formula::Kind;
  if (f.kind() != K::Implies || f.lhs().kind() != K::Implies) return false;
  const Formula& a = f.lhs().lhs();
  const Formula& c = f.lhs().rhs();
  const Formula& q = f.rhs();
  if (q.kind() != K::Implies || q.lhs().kind() != K::Implies) return false;
  const Formula& b = q.lhs().lhs();
  if (q.lhs().rhs() != c) return false;
  const Formula& r = q.rhs();
  if (r.kind() != K::Implies || r.lhs().kind() != K::Or) return false;
  return r.lhs().lhs() == a && r.lhs().rhs() == b && r.rhs() == c;
}

inline bool is_reductio(const Formula& f) {
  // (A -> B) -> ((A -> ~B) -> ~A)
  using K = Formula::Kind;
  if (f.kind() != K::Implies || f.lhs().kind() != K::Implies) return false;
  const Formula& a = f.lhs().lhs();
  const Formula& b = f.lhs().rhs();
  const Formula& q = f.rhs();
  if (q.kind() != K::Implies || q.lhs().kind() != K::Implies) return false;
  if (q.lhs().lhs() != a) return false;
  if (q.lhs().rhs().kind() != K::Neg || q.lhs().rhs().child() != b) return false;
  return q.rhs().kind() == K::Neg && q.rhs().child() == a;
}

inline bool is_dneg_elim(const Formula& f) {
  using K = Formula::Kind;
  return f.kind() == K::Implies && f.lhs().kind() == K::Neg &&
         f.lhs().child().kind() == K::Neg && f.lhs().child().child() == f.rhs();
}

inline bool is_forall_inst(const Formula& f) {
  // Ax_v(F) -> F[v:=t], t closed
  if (f.kind() != Formula::Kind::Implies || f.lhs().kind() != Formula::Kind::Forall) return false;
  return match_instantiation(f.lhs().body(), f.lhs().var(), f.rhs()).ok;
}

inline bool is_exists_intro(const Formula& f) {
  // F[v:=t] -> Ex_v(F), t closed
  if (f.kind() != Formula::Kind::Implies || f.rhs().kind() != Formula::Kind::Exists) return false;
  return match_instantiation(f.rhs().body(), f.rhs().var(), f.lhs()).ok;
}

inline bool is_forall_impl(const Formula& f) {
  // Ax_v((F -> G)) -> (F -> Ax_v(G)), v not free in F
  using K = Formula::Kind;
  if (f.kind() != K::Implies || f.lhs().kind() != K::Forall) return false;
  std::uint64_t v = f.lhs().var();
  const Formula& inner = f.lhs().body();
  if (inner.kind() != K::Implies) return false;
  const Formula& q = f.rhs();
  if (q.kind() != K::Implies || q.rhs().kind() != K::Forall || q.rhs().var() != v) return false;
  if (q.lhs() != inner.lhs() || q.rhs().body() != inner.rhs()) return false;
  return free_vars(inner.lhs()).count(v) == 0;
}

inline bool is_exists_impl(const Formula& f) {
  // Ax_v((F -> G)) -> (Ex_v(F) -> G), v not free in G
  using K = Formula::Kind;
  if (f.kind() != K::Implies || f.lhs().kind() != K::Forall) return false;
  std::uint64_t v = f.lhs().var();
  const Formula& inner = f.lhs().body();
  if (inner.kind() != K::Implies) return false;
  const Formula& q = f.rhs();
  if (q.kind() != K::Implies || q.lhs().kind() != K::Exists || q.lhs().var() != v) return false;
  if (q.lhs().body() != inner.lhs() || q.rhs() != inner.rhs()) return false;
  return free_vars(inner.rhs()).count(v) == 0;
}

inline bool is_eq_refl(const Formula& f) {
  return f.kind() == Formula::Kind::Equals && f.lhs_term() == f.rhs_term();
}

inline bool is_eq_sym(const Formula& f) {
  using K = Formula::Kind;
  if (f.kind() != K::Implies || f.lhs().kind() != K::Equals || f.rhs().kind() != K::Equals)
    return false;
  return f.lhs().lhs_term() == f.rhs().rhs_term() && f.lhs().rhs_term() == f.rhs().lhs_term();
}

inline bool is_eq_trans(const Formula& f) {
  // t=u -> (u=w -> t=w)
  using K = Formula::Kind;
  if (f.kind() != K::Implies || f.lhs().kind() != K::Equals) return false;
  const Formula& q = f.rhs();
  if (q.kind() != K::Implies || q.lhs().kind() != K::Equals || q.rhs().kind() != K::Equals)
    return false;
  return f.lhs().rhs_term() == q.lhs().lhs_term() && f.lhs().lhs_term() == q.rhs().lhs_term() &&
         q.lhs().rhs_term() == q.rhs().rhs_term();
}

inline bool is_cong_succ(const Formula& f) {
  // t=u -> St=Su (successor of a numeral folds, so compare via the factory)
  using K = Formula::Kind;
  if (f.kind() != K::Implies || f.lhs().kind() != K::Equals || f.rhs().kind() != K::Equals)
    return false;
  return f.rhs().lhs_term() == Term::succ(f.lhs().lhs_term()) &&
         f.rhs().rhs_term() == Term::succ(f.lhs().rhs_term());
}

inline bool is_cong_binary(const Formula& f, Term::Kind op) {
  // t=u -> (v=w -> (t?v)=(u?w))
  using K = Formula::Kind;
  if (f.kind() != K::Implies || f.lhs().kind() != K::Equals) return false;
  const Formula& q = f.rhs();
  if (q.kind() != K::Implies || q.lhs().kind() != K::Equals || q.rhs().kind() != K::Equals)
    return false;
  const Term& lhs = q.rhs().lhs_term();
  const Term& rhs = q.rhs().rhs_term();
  if (lhs.kind() != op || rhs.kind() != op) return false;
  return lhs.lhs() == f.lhs().lhs_term() && lhs.rhs() == q.lhs().lhs_term() &&
         rhs.lhs() == f.lhs().rhs_term() && rhs.rhs() == q.lhs().rhs_term();
}

inline bool is_leibniz(const Formula& f) {
  // t=u -> ((F -> G) & (G -> F)), t and u closed, G = F with some
  // occurrences of t replaced by u. Zero replacements are allowed.
  using K = Formula::Kind;
  if (f.kind() != K::Implies || f.lhs().kind() != K::Equals) return false;
  const Term& t = f.lhs().lhs_term();
  const Term& u = f.lhs().rhs_term();
  if (!is_closed(t) || !is_closed(u)) return false;
  const Formula& body = f.rhs();
  if (body.kind() != K::And) return false;
  const Formula& fwd = body.lhs();
  const Formula& bwd = body.rhs();
  if (fwd.kind() != K::Implies || bwd.kind() != K::Implies) return false;
  if (fwd.lhs() != bwd.rhs() || fwd.rhs() != bwd.lhs()) return false;
  return formula_replaced(fwd.lhs(), fwd.rhs(), t, u);
}

}  // namespace detail

inline const std::vector<std::string>& base_schemas() {
  static const std::vector<std::string> kIds = {
      "k", "s", "and_elim_left", "and_elim_right", "and_intro",
      "or_intro_left", "or_intro_right", "or_elim", "reductio", "dneg_elim",
      "forall_inst", "exists_intro", "forall_impl", "exists_impl",
      "eq_refl", "eq_sym", "eq_trans", "cong_succ", "cong_plus", "cong_times",
      "leibniz",
      "robinson_1", "robinson_2", "robinson_3", "robinson_4", "robinson_5",
      "robinson_6", "robinson_7",
  };
  return kIds;
}

// True iff `f` instantiates the named base schema. Unknown ids are simply
// not instances.
inline bool is_schema_instance(const std::string& schema, const Formula& f) {
  using namespace detail;
  if (schema == "k") return is_k(f);
  if (schema == "s") return is_s(f);
  if (schema == "and_elim_left") return is_and_elim_left(f);
  if (schema == "and_elim_right") return is_and_elim_right(f);
  if (schema == "and_intro") return is_and_intro(f);
  if (schema == "or_intro_left") return is_or_intro_left(f);
  if (schema == "or_intro_right") return is_or_intro_right(f);
  if (schema == "or_elim") return is_or_elim(f);
  if (schema == "reductio") return is_reductio(f);
  if (schema == "dneg_elim") return is_dneg_elim(f);
  if (schema == "forall_inst") return is_forall_inst(f);
  if (schema == "exists_intro") return is_exists_intro(f);
  if (schema == "forall_impl") return is_forall_impl(f);
  if (schema == "exists_impl") return is_exists_impl(f);
  if (schema == "eq_refl") return is_eq_refl(f);
  if (schema == "eq_sym") return is_eq_sym(f);
  if (schema == "eq_trans") return is_eq_trans(f);
  if (schema == "cong_succ") return is_cong_succ(f);
  if (schema == "cong_plus") return is_cong_binary(f, Term::Kind::Plus);
  if (schema == "cong_times") return is_cong_binary(f, Term::Kind::Times);
  if (schema == "leibniz") return is_leibniz(f);
  if (schema.rfind("robinson_", 0) == 0 && schema.size() == 10) {
    char d = schema[9];
    if (d >= '1' && d <= '7')
      return f == detail::robinson_axioms()[static_cast<std::size_t>(d - '1')];
  }
  return false;
}

// ---------------------------------------------------------------------------
// Checking
// ---------------------------------------------------------------------------

// Accepts iff every line is a schema instance, a listed extra axiom, or
// follows from earlier lines by the cited rule. Deterministic and total;
// the verdict carries the first failing line.
inline Verdict check_proof(const System& sys, const Proof& p) {
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const ProofLine& line = p.lines[i];
    if (!sys.allows_constants && mentions_constants(line.formula))
      return Verdict::reject(lineno, "formula mentions constants outside the language of " + sys.name);

    if (const auto* ax = std::get_if<BaseAxiom>(&line.just)) {
      if (!is_schema_instance(ax->schema, line.formula))
        return Verdict::reject(lineno, "not an instance of schema '" + ax->schema + "'");
    } else if (const auto* ex = std::get_if<ExtraAxiom>(&line.just)) {
      auto axiom = sys.extra_axiom(ex->index);
      if (!axiom)
        return Verdict::reject(lineno, sys.name + " has no extra axiom with index " +
                                           std::to_string(ex->index));
      if (*axiom != line.formula)
        return Verdict::reject(lineno, "formula differs from extra axiom " +
                                           std::to_string(ex->index) + " of " + sys.name);
    } else if (const auto* mp = std::get_if<ModusPonens>(&line.just)) {
      if (mp->implication < 1 || mp->implication > i || mp->antecedent < 1 || mp->antecedent > i)
        return Verdict::reject(lineno, "modus ponens cites a line that is not earlier");
      const Formula& impl = p.lines[mp->implication - 1].formula;
      const Formula& ante = p.lines[mp->antecedent - 1].formula;
      if (impl.kind() != Formula::Kind::Implies)
        return Verdict::reject(lineno, "cited implication line is not an implication");
      if (impl.lhs() != ante)
        return Verdict::reject(lineno, "antecedent line does not match the implication");
      if (impl.rhs() != line.formula)
        return Verdict::reject(lineno, "conclusion does not match the implication");
    } else if (const auto* gen = std::get_if<Generalization>(&line.just)) {
      if (gen->line < 1 || gen->line > i)
        return Verdict::reject(lineno, "generalization cites a line that is not earlier");
      Formula expected = Formula::forall(gen->var, p.lines[gen->line - 1].formula);
      if (expected != line.formula)
        return Verdict::reject(lineno, "formula is not the generalization of the cited line");
    }
  }
  return Verdict::accept();
}

// ---------------------------------------------------------------------------
// Constant elimination
// ---------------------------------------------------------------------------

inline std::set<std::uint64_t> proof_constants(const Proof& p) {
  std::set<std::uint64_t> out;
  for (const ProofLine& line : p.lines) {
    auto cs = constants(line.formula);
    out.insert(cs.begin(), cs.end());
  }
  return out;
}

// Replaces each constant a_i by the numeral for bindings(i) in every line.
// Extra-axiom lines turn into reflexivity instances; all other
// justifications carry over unchanged. The result is constant-free.
inline Proof translate_proof(const Proof& p, const std::map<std::uint64_t, Nat>& bindings) {
  for (std::uint64_t c : proof_constants(p))
    if (!bindings.count(c))
      throw UnboundConstant("no binding for constant a" + std::to_string(c));

  Proof out;
  out.lines.reserve(p.lines.size());
  for (const ProofLine& line : p.lines) {
    Formula f = line.formula;
    for (const auto& [index, value] : bindings)
      f = substitute_constant(f, index, Term::numeral(value));
    Justification just = line.just;
    if (std::holds_alternative<ExtraAxiom>(just)) just = BaseAxiom{"eq_refl"};
    out.lines.push_back({std::move(f), std::move(just)});
  }
  return out;
}

struct ConservativityResult {
  Verdict extended;            // the proof in the extended system
  Verdict translated;          // the translated proof in S
  bool conclusion_matches = false;
  Proof translated_proof;
};

// Witnesses conservativity for one proof: checks it in the extended system,
// eliminates the constants via the system's canonical bindings, re-checks
// in S, and confirms the conclusion translates to the translated conclusion.
inline ConservativityResult conservativity_check(const System& sys_ext, const Proof& p) {
  ConservativityResult result;
  result.extended = check_proof(sys_ext, p);
  if (!result.extended.ok) {
    result.translated = Verdict{false, std::nullopt, "extended-system check failed"};
    return result;
  }

  std::map<std::uint64_t, Nat> bindings;
  for (std::uint64_t c : proof_constants(p)) {
    auto value = sys_ext.constant_binding(c);
    if (!value)
      throw UnboundConstant(sys_ext.name + " assigns no value to constant a" + std::to_string(c));
    bindings.emplace(c, *value);
  }

  result.translated_proof = translate_proof(p, bindings);
  result.translated = check_proof(system_s(), result.translated_proof);

  if (p.lines.empty()) {
    result.conclusion_matches = true;
  } else {
    Formula conclusion = p.lines.back().formula;
    for (const auto& [index, value] : bindings)
      conclusion = substitute_constant(conclusion, index, Term::numeral(value));
    result.conclusion_matches = conclusion == result.translated_proof.lines.back().formula;
  }
  return result;
}

}  // namespace goedel
