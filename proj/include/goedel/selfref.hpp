#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "goedel/enumeration.hpp"
#include "goedel/errors.hpp"
#include "goedel/numbering.hpp"
#include "goedel/proofs.hpp"
#include "goedel/syntax.hpp"

// The three constructions of directly self-referential sentences:
//
//   * under the nonstandard numbering, the sentence Ex1((x1=0^(2k)&A))
//     contains the numeral of its own code 2k;
//   * the system S' adds one constant a_i per class sign A_i together with
//     the axiom a_i=0^(n_i), where n_i codes A_i(a_i), so a_i names the
//     code of the very sentence that uses it;
//   * the system S* uses a single constant a1 and the one axiom a1=0^(n),
//     where n codes the instance phi = B(a1) of a chosen property B.
//
// Everything here is a pure construction; provability facts about the
// results are out of scope.

namespace goedel {

// ---------------------------------------------------------------------------
// Nonstandard-numbering sentences
// ---------------------------------------------------------------------------

struct SmullyanSentence {
  Formula sentence;
  Formula class_sign;
  GoedelNumber k;     // standard code of the class sign
  GoedelNumber code;  // nonstandard code of the sentence, = 2k
};

// Builds Ex1((x1=0^(2k)&A)) for the class sign A, whose embedded numeral
// denotes the sentence's own nonstandard code.
inline SmullyanSentence smullyan_sentence(const Formula& a,
                                          std::uint64_t numeral_bound = kDefaultNumeralBound) {
  if (!is_class_sign(a))
    throw NotAClassSign("formula " + print(a) + " is not a class sign");
  GoedelNumber k = gn_std(a, numeral_bound);
  GoedelNumber code(2 * k.value);
  Formula sentence = Formula::exists(
      1, Formula::conj(Formula::equals(Term::variable(1), Term::numeral(code.value)), a));
  return SmullyanSentence{std::move(sentence), a, std::move(k), std::move(code)};
}

// ---------------------------------------------------------------------------
// The infinite-constants system S'
// ---------------------------------------------------------------------------

struct SPrimeAxiom {
  std::uint64_t index = 0;
  Formula class_sign;  // A_i
  Formula instance;    // A_i(a_i)
  GoedelNumber n;      // extended code of the instance
  Formula axiom;       // a_i = 0^(n_i)
};

// The i-th axiom a_i=0^(n_i) of S', generated on demand; the infinite
// family is never materialized.
inline SPrimeAxiom sprime_axiom(std::uint64_t i,
                                std::uint64_t numeral_bound = kDefaultNumeralBound,
                                EnumerationOptions options = {}) {
  if (i < 1) throw std::invalid_argument("axiom index must be >= 1");
  Formula a_i = class_sign(i, options);
  Formula instance = substitute(a_i, 1, Term::constant(i));
  GoedelNumber n = gn_ext(instance, numeral_bound);
  Formula axiom = Formula::equals(Term::constant(i), Term::numeral(n.value));
  return SPrimeAxiom{i, std::move(a_i), std::move(instance), std::move(n), std::move(axiom)};
}

inline System system_sprime(std::uint64_t numeral_bound = kDefaultNumeralBound,
                            EnumerationOptions options = {}) {
  System s;
  s.name = "S'";
  s.allows_constants = true;
  s.extra_axiom = [numeral_bound, options](std::uint64_t i) -> std::optional<Formula> {
    if (i < 1) return std::nullopt;
    return sprime_axiom(i, numeral_bound, options).axiom;
  };
  s.constant_binding = [numeral_bound, options](std::uint64_t i) -> std::optional<Nat> {
    if (i < 1) return std::nullopt;
    return sprime_axiom(i, numeral_bound, options).n.value;
  };
  return s;
}

// ---------------------------------------------------------------------------
// The single-constant system S*
// ---------------------------------------------------------------------------

struct SStarFixedPoint {
  Formula property;  // B, over x1 (may already mention a1)
  Formula phi;       // B with x1 replaced by a1
  GoedelNumber n;    // extended code of phi
  Formula axiom;     // a1 = 0^(n)
};

// Fixes the point of the property B: phi = B(a1) and the axiom a1=0^(n)
// with n the code of phi, so the constant is both used in phi and, through
// the axiom, names phi's own code.
inline SStarFixedPoint sstar_fixed_point(const Formula& b,
                                         std::uint64_t numeral_bound = kDefaultNumeralBound) {
  auto fv = free_vars(b);
  fv.erase(1);
  if (!fv.empty())
    throw BadProperty("property " + print(b) + " has free variables other than x1");
  auto cs = constants(b);
  cs.erase(1);
  if (!cs.empty())
    throw BadProperty("property " + print(b) + " mentions constants other than a1");
  Formula phi = substitute(b, 1, Term::constant(1));
  GoedelNumber n = gn_ext(phi, numeral_bound);
  Formula axiom = Formula::equals(Term::constant(1), Term::numeral(n.value));
  return SStarFixedPoint{b, std::move(phi), std::move(n), std::move(axiom)};
}

inline System system_sstar(const SStarFixedPoint& fp) {
  System s;
  s.name = "S*";
  s.allows_constants = true;
  Formula axiom = fp.axiom;
  Nat n = fp.n.value;
  s.extra_axiom = [axiom](std::uint64_t i) -> std::optional<Formula> {
    if (i != 1) return std::nullopt;
    return axiom;
  };
  s.constant_binding = [n](std::uint64_t i) -> std::optional<Nat> {
    if (i != 1) return std::nullopt;
    return n;
  };
  return s;
}

// Code of the formula a1=0^(m) as a function of m, computed at the meta
// level; the object language gets no function symbol for it.
inline GoedelNumber eq_axiom_code(const Nat& m,
                                  std::uint64_t numeral_bound = kDefaultNumeralBound) {
  return gn_ext(Formula::equals(Term::constant(1), Term::numeral(m)), numeral_bound);
}

// ---------------------------------------------------------------------------
// The provable biconditional
// ---------------------------------------------------------------------------

// Proof, checkable in S* extended with fp.axiom, of the biconditional
// between phi and phi with the constant replaced by the numeral of its own
// code — rendered as the conjunction of the two implications, since the
// language has no primitive biconditional. Three lines: the axiom, a
// replacement-schema instance, modus ponens.
inline Proof selfref_biconditional(const SStarFixedPoint& fp) {
  Formula named = substitute_constant(fp.phi, 1, Term::numeral(fp.n.value));
  Formula bicond = Formula::conj(Formula::implies(fp.phi, named), Formula::implies(named, fp.phi));
  Proof proof;
  proof.lines.push_back({fp.axiom, ExtraAxiom{1}});
  proof.lines.push_back({Formula::implies(fp.axiom, bicond), BaseAxiom{"leibniz"}});
  proof.lines.push_back({bicond, ModusPonens{2, 1}});

  if (!check_proof(system_sstar(fp), proof).ok)
    throw ProofConstructionFailure("biconditional proof for " + print(fp.phi) +
                                   " failed its own check");
  return proof;
}

}  // namespace goedel
