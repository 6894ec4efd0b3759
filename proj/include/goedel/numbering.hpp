#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "goedel/errors.hpp"
#include "goedel/syntax.hpp"

// Prime-power Goedel numberings. The standard scheme codes a token sequence
// s1..sm as prod p_i^c(s_i) over consecutive primes starting at 3; since
// every symbol code is odd and so is every prime used, the result is always
// odd. The nonstandard scheme reserves the even numbers: the sentence
//   Ex1((x1=0^(2k)&A))  with k the standard code of the class sign A
// is coded as 2k itself, so the numeral inside denotes the sentence's own
// code. The extended scheme is the standard rule over the language enlarged
// with the constants a1, a2, ...

namespace goedel {

// A formula code. Values are >= 1; std/ext codes are odd, nonstandard
// special-form codes are even.
struct GoedelNumber {
  Nat value;

  GoedelNumber() = default;
  explicit GoedelNumber(Nat v) : value(std::move(v)) {}

  std::string str() const { return value.str(); }

  friend bool operator==(const GoedelNumber& a, const GoedelNumber& b) {
    return a.value == b.value;
  }
  friend bool operator!=(const GoedelNumber& a, const GoedelNumber& b) {
    return a.value != b.value;
  }
  friend bool operator<(const GoedelNumber& a, const GoedelNumber& b) {
    return a.value < b.value;
  }
};

enum class SchemeId { Std, Nonstd, Ext };

inline std::optional<SchemeId> scheme_from_string(std::string_view s) {
  if (s == "std") return SchemeId::Std;
  if (s == "nonstd") return SchemeId::Nonstd;
  if (s == "ext") return SchemeId::Ext;
  return std::nullopt;
}

inline std::string to_string(SchemeId s) {
  switch (s) {
    case SchemeId::Std: return "std";
    case SchemeId::Nonstd: return "nonstd";
    case SchemeId::Ext: return "ext";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Code table
// ---------------------------------------------------------------------------

// Fixed symbols get the odd codes 1..25 in declaration order; variables get
// 29, 33, 37, ... and constants 31, 35, 39, ... All codes are odd, so the
// parity of a coded formula never depends on the exponents.
inline std::uint64_t symbol_code(const Symbol& s) {
  switch (s.kind) {
    case SymbolKind::Zero: return 1;
    case SymbolKind::Succ: return 3;
    case SymbolKind::Plus: return 5;
    case SymbolKind::Times: return 7;
    case SymbolKind::Equals: return 9;
    case SymbolKind::Neg: return 11;
    case SymbolKind::And: return 13;
    case SymbolKind::Or: return 15;
    case SymbolKind::Implies: return 17;
    case SymbolKind::Exists: return 19;
    case SymbolKind::Forall: return 21;
    case SymbolKind::LParen: return 23;
    case SymbolKind::RParen: return 25;
    case SymbolKind::Variable: return 29 + 4 * (s.index - 1);
    case SymbolKind::Constant: return 31 + 4 * (s.index - 1);
  }
  return 0;
}

inline std::optional<Symbol> symbol_from_code(const Nat& code) {
  if (code < 1 || code % 2 == 0) return std::nullopt;
  if (code <= 25) {
    switch (code.convert_to<std::uint64_t>()) {
      case 1: return sym(SymbolKind::Zero);
      case 3: return sym(SymbolKind::Succ);
      case 5: return sym(SymbolKind::Plus);
      case 7: return sym(SymbolKind::Times);
      case 9: return sym(SymbolKind::Equals);
      case 11: return sym(SymbolKind::Neg);
      case 13: return sym(SymbolKind::And);
      case 15: return sym(SymbolKind::Or);
      case 17: return sym(SymbolKind::Implies);
      case 19: return sym(SymbolKind::Exists);
      case 21: return sym(SymbolKind::Forall);
      case 23: return sym(SymbolKind::LParen);
      case 25: return sym(SymbolKind::RParen);
      default: return std::nullopt;  // 27 is unassigned
    }
  }
  if (code == 27) return std::nullopt;
  if ((code - 29) % 4 == 0) {
    Nat idx = (code - 29) / 4 + 1;
    if (idx > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return var_symbol(idx.convert_to<std::uint64_t>());
  }
  if ((code - 31) % 4 == 0) {
    Nat idx = (code - 31) / 4 + 1;
    if (idx > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return const_symbol(idx.convert_to<std::uint64_t>());
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

namespace detail {

// Primes indexed from p1 = 3. The cache only ever grows and is guarded, so
// concurrent callers see the same deterministic sequence.
inline std::vector<std::uint64_t> primes_from_3(std::size_t count) {
  static std::vector<std::uint64_t> cache{3};
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  while (cache.size() < count) {
    std::uint64_t candidate = cache.back() + 2;  // odd candidates only
    while (true) {
      bool prime = true;
      for (std::uint64_t p : cache) {
        if (p * p > candidate) break;
        if (candidate % p == 0) {
          prime = false;
          break;
        }
      }
      if (prime) break;
      candidate += 2;
    }
    cache.push_back(candidate);
  }
  return std::vector<std::uint64_t>(cache.begin(), cache.begin() + count);
}

inline Nat pow_nat(std::uint64_t base, std::uint64_t exp) {
  Nat result = 1;
  Nat b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

inline GoedelNumber encode_tokens(const TokenSeq& seq) {
  auto primes = primes_from_3(seq.size());
  Nat result = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    result *= pow_nat(primes[i], symbol_code(seq[i]));
  return GoedelNumber(result);
}

// Exponent vector of g over the primes 3, 5, 7, ... The support must be an
// initial segment with nothing left over, otherwise g codes nothing.
inline std::vector<Nat> factor_exponents(const GoedelNumber& g) {
  if (g.value < 1) throw NotACode("codes are positive integers");
  Nat rest = g.value;
  std::vector<Nat> exponents;
  std::size_t idx = 0;
  while (rest != 1) {
    auto primes = primes_from_3(idx + 1);
    std::uint64_t p = primes[idx];
    Nat e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e == 0) break;
    exponents.push_back(std::move(e));
    ++idx;
  }
  if (rest != 1)
    throw NotACode("prime support of " + g.str() + " is not an initial segment of 3,5,7,...");
  return exponents;
}

inline TokenSeq decode_tokens(const GoedelNumber& g, bool allow_constants) {
  auto exponents = factor_exponents(g);
  if (exponents.empty()) throw NotACode("1 codes the empty sequence, which is not a formula");
  TokenSeq seq;
  seq.reserve(exponents.size());
  for (const Nat& e : exponents) {
    auto s = symbol_from_code(e);
    if (!s) throw NotACode("exponent " + e.str() + " is not a symbol code");
    if (!allow_constants && s->kind == SymbolKind::Constant)
      throw NotACode("constant symbol code " + e.str() + " outside the extended scheme");
    seq.push_back(*s);
  }
  return seq;
}

inline Formula parse_token_seq(const GoedelNumber& g, const TokenSeq& seq) {
  Formula f = [&] {
    try {
      return parse_formula(render(seq));
    } catch (const SyntaxError&) {
      throw NotACode("token sequence of " + g.str() + " does not form a formula");
    }
  }();
  // Canonicality guard: the decoded AST must tokenize back to the input.
  if (tokens(f, seq.size()) != seq)
    throw NotACode("token sequence of " + g.str() + " is not canonical");
  return f;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Standard and extended schemes
// ---------------------------------------------------------------------------

// Standard prime-power code of a constant-free formula. Odd by construction.
inline GoedelNumber gn_std(const Formula& f,
                           std::uint64_t numeral_bound = kDefaultNumeralBound) {
  if (mentions_constants(f))
    throw ConstantNotInL("formula " + print(f) + " mentions extension constants");
  return detail::encode_tokens(tokens(f, numeral_bound));
}

// Same rule with the constants a1, a2, ... admitted. Agrees with gn_std on
// constant-free formulas.
inline GoedelNumber gn_ext(const Formula& f,
                           std::uint64_t numeral_bound = kDefaultNumeralBound) {
  return detail::encode_tokens(tokens(f, numeral_bound));
}

inline Formula decode_std(const GoedelNumber& g) {
  if (g.value % 2 == 0) throw NotACode(g.str() + " is even; standard codes are odd");
  return detail::parse_token_seq(g, detail::decode_tokens(g, /*allow_constants=*/false));
}

inline Formula decode_ext(const GoedelNumber& g) {
  if (g.value % 2 == 0) throw NotACode(g.str() + " is even; extended codes are odd");
  return detail::parse_token_seq(g, detail::decode_tokens(g, /*allow_constants=*/true));
}

// ---------------------------------------------------------------------------
// Nonstandard scheme
// ---------------------------------------------------------------------------

namespace detail {

// Matches Ex1((x1=0^(m)&A)) where A is a class sign and m = 2*gn_std(A).
// Reads the numeral count directly; nothing is expanded.
inline std::optional<GoedelNumber> special_form_code(
    const Formula& f, std::uint64_t numeral_bound = kDefaultNumeralBound) {
  if (f.kind() != Formula::Kind::Exists || f.var() != 1) return std::nullopt;
  const Formula& body = f.body();
  if (body.kind() != Formula::Kind::And) return std::nullopt;
  const Formula& eq = body.lhs();
  if (eq.kind() != Formula::Kind::Equals) return std::nullopt;
  const Term& v = eq.lhs_term();
  const Term& num = eq.rhs_term();
  if (v.kind() != Term::Kind::Variable || v.index() != 1) return std::nullopt;
  if (num.kind() != Term::Kind::Numeral) return std::nullopt;
  const Formula& a = body.rhs();
  if (!is_class_sign(a)) return std::nullopt;
  if (num.count() % 2 != 0) return std::nullopt;
  try {
    if (num.count() != 2 * gn_std(a, numeral_bound).value) return std::nullopt;
  } catch (const NumeralTooLarge&) {
    return std::nullopt;  // the inner class sign has no standard code
  }
  return GoedelNumber(num.count());
}

}  // namespace detail

// Nonstandard code of a constant-free formula: the special form carries the
// even code written inside it, everything else keeps its standard code.
inline GoedelNumber gn_nonstd(const Formula& f,
                              std::uint64_t numeral_bound = kDefaultNumeralBound) {
  if (mentions_constants(f))
    throw ConstantNotInL("formula " + print(f) + " mentions extension constants");
  if (auto code = detail::special_form_code(f, numeral_bound)) return *code;
  return gn_std(f, numeral_bound);
}

inline Formula decode_nonstd(const GoedelNumber& g,
                             std::uint64_t numeral_bound = kDefaultNumeralBound) {
  if (g.value % 2 == 0) {
    Nat k = g.value / 2;
    if (k % 2 == 0)
      throw NotACode(g.str() + " halves to an even number, which codes no class sign");
    Formula a = [&] {
      try {
        return decode_std(GoedelNumber(k));
      } catch (const NotACode&) {
        throw NotACode("half of " + g.str() + " is not a standard formula code");
      }
    }();
    if (!is_class_sign(a))
      throw NotACode("half of " + g.str() + " codes a formula that is not a class sign");
    return Formula::exists(
        1, Formula::conj(Formula::equals(Term::variable(1), Term::numeral(g.value)), a));
  }
  Formula f = decode_std(g);
  // Special-form sentences carry only their even code.
  if (detail::special_form_code(f, numeral_bound))
    throw NotACode(g.str() + " is the dropped odd code of a special-form sentence");
  return f;
}

// ---------------------------------------------------------------------------
// Scheme dispatch
// ---------------------------------------------------------------------------

inline GoedelNumber encode(SchemeId scheme, const Formula& f,
                           std::uint64_t numeral_bound = kDefaultNumeralBound) {
  switch (scheme) {
    case SchemeId::Std: return gn_std(f, numeral_bound);
    case SchemeId::Nonstd: return gn_nonstd(f, numeral_bound);
    case SchemeId::Ext: return gn_ext(f, numeral_bound);
  }
  throw NotACode("unknown scheme");
}

inline Formula decode(SchemeId scheme, const GoedelNumber& g,
                      std::uint64_t numeral_bound = kDefaultNumeralBound) {
  switch (scheme) {
    case SchemeId::Std: return decode_std(g);
    case SchemeId::Nonstd: return decode_nonstd(g, numeral_bound);
    case SchemeId::Ext: return decode_ext(g);
  }
  throw NotACode("unknown scheme");
}

}  // namespace goedel
