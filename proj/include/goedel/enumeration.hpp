#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "goedel/errors.hpp"
#include "goedel/syntax.hpp"

// Enumeration of class signs in (token length, lexicographic on symbol
// codes) order. Within one token length the alphabet is infinite — the
// variable codes 29, 33, 37, ... never run out — so the stream is produced
// by a depth-first walk that tries candidate symbols in ascending code
// order. Two facts keep that walk finite per emitted formula:
//
//   * renaming one fresh variable index to another is a bijection on the
//     completions of a prefix, so subtrees under distinct fresh indices
//     (>= 2) are isomorphic: if the first fresh index yields nothing, none
//     of the later ones can, and if it yields something, each later one is
//     walked only after the previous one has already emitted;
//   * prefixes are pruned by a small nondeterministic stack machine for the
//     token grammar, so dead branches die within a few positions.
//
// x1 is exempt from the fresh-index rule since it alone may stay free in a
// class sign.

namespace goedel {

struct EnumerationOptions {
  // Upper bound on DFS node visits before giving up with ResourceLimit.
  std::uint64_t work_budget = 10'000'000;
};

namespace detail {

// Grammar items for the prefix-viability machine. A state is a stack of
// items still to be matched, topmost last.
enum class GItem : unsigned char {
  NtFormula,  // F
  NtTerm,     // T
  TZero, TSucc, TEquals, TNeg, TBinOp, TAddOp, TExists, TForall, TLParen, TRParen, TAnyVar,
};

inline unsigned min_tokens(GItem it) {
  return it == GItem::NtFormula ? 3u : 1u;
}

inline unsigned min_tokens(const std::vector<GItem>& stack) {
  unsigned total = 0;
  for (GItem it : stack) total += min_tokens(it);
  return total;
}

inline bool matches_terminal(GItem it, SymbolKind k) {
  switch (it) {
    case GItem::TZero: return k == SymbolKind::Zero;
    case GItem::TSucc: return k == SymbolKind::Succ;
    case GItem::TEquals: return k == SymbolKind::Equals;
    case GItem::TNeg: return k == SymbolKind::Neg;
    case GItem::TBinOp:
      return k == SymbolKind::And || k == SymbolKind::Or || k == SymbolKind::Implies;
    case GItem::TAddOp: return k == SymbolKind::Plus || k == SymbolKind::Times;
    case GItem::TExists: return k == SymbolKind::Exists;
    case GItem::TForall: return k == SymbolKind::Forall;
    case GItem::TLParen: return k == SymbolKind::LParen;
    case GItem::TRParen: return k == SymbolKind::RParen;
    case GItem::TAnyVar: return k == SymbolKind::Variable;
    default: return false;
  }
}

// Replaces the top nonterminal by each of its productions until the top is
// a terminal item, then matches the symbol kind. Yields the successor
// states (possibly several: the grammar branches on '(').
inline void derive(const std::vector<GItem>& state, SymbolKind k, unsigned remaining,
                   std::vector<std::vector<GItem>>& out) {
  if (state.empty()) return;
  GItem top = state.back();
  if (top == GItem::NtFormula || top == GItem::NtTerm) {
    // Productions stored reversed so the leftmost element ends up on top.
    static const std::vector<std::vector<GItem>> kFormulaProductions = {
        {GItem::NtTerm, GItem::TEquals, GItem::NtTerm},
        {GItem::TRParen, GItem::NtFormula, GItem::TLParen, GItem::TNeg},
        {GItem::TRParen, GItem::NtFormula, GItem::TBinOp, GItem::NtFormula, GItem::TLParen},
        {GItem::TRParen, GItem::NtFormula, GItem::TLParen, GItem::TAnyVar, GItem::TExists},
        {GItem::TRParen, GItem::NtFormula, GItem::TLParen, GItem::TAnyVar, GItem::TForall},
    };
    static const std::vector<std::vector<GItem>> kTermProductions = {
        {GItem::TZero},
        {GItem::NtTerm, GItem::TSucc},
        {GItem::TAnyVar},
        {GItem::TRParen, GItem::NtTerm, GItem::TAddOp, GItem::NtTerm, GItem::TLParen},
    };
    const auto& productions =
        top == GItem::NtFormula ? kFormulaProductions : kTermProductions;
    for (const auto& prod : productions) {
      std::vector<GItem> next(state.begin(), state.end() - 1);
      next.insert(next.end(), prod.begin(), prod.end());
      if (min_tokens(next) <= remaining) derive(next, k, remaining, out);
    }
    return;
  }
  if (matches_terminal(top, k)) {
    std::vector<GItem> next(state.begin(), state.end() - 1);
    if (min_tokens(next) <= remaining - 1) out.push_back(std::move(next));
  }
}

inline std::vector<std::vector<GItem>> step_states(const std::vector<std::vector<GItem>>& states,
                                                   SymbolKind k, unsigned remaining) {
  std::vector<std::vector<GItem>> out;
  for (const auto& st : states) derive(st, k, remaining, out);
  // Dedup; the state sets stay tiny.
  std::vector<std::vector<GItem>> uniq;
  for (auto& st : out) {
    bool seen = false;
    for (const auto& u : uniq)
      if (u == st) { seen = true; break; }
    if (!seen) uniq.push_back(std::move(st));
  }
  return uniq;
}

class ClassSignDfs {
 public:
  ClassSignDfs(std::size_t target, std::uint64_t budget, std::vector<Formula>& out)
      : target_(target), budget_(budget), out_(out) {}

  // Emits, in lex order, every class sign whose token sequence has length
  // exactly `length`, until the global target is reached. Returns true if
  // the target was reached (the per-length stream may be infinite).
  bool run_length(unsigned length) {
    length_ = length;
    prefix_.clear();
    std::vector<std::vector<GItem>> start{{GItem::NtFormula}};
    return walk(start, length);
  }

 private:
  // Fixed symbols in ascending code order. Constants are excluded: class
  // signs live in the base language.
  static const std::vector<SymbolKind>& fixed_symbols() {
    static const std::vector<SymbolKind> kOrder = {
        SymbolKind::Zero, SymbolKind::Succ, SymbolKind::Plus, SymbolKind::Times,
        SymbolKind::Equals, SymbolKind::Neg, SymbolKind::And, SymbolKind::Or,
        SymbolKind::Implies, SymbolKind::Exists, SymbolKind::Forall,
        SymbolKind::LParen, SymbolKind::RParen,
    };
    return kOrder;
  }

  void spend() {
    if (++visits_ > budget_)
      throw ResourceLimit("class-sign enumeration exceeded its work budget of " +
                          std::to_string(budget_) + " visits");
  }

  // Returns true when the global target has been reached.
  bool walk(const std::vector<std::vector<GItem>>& states, unsigned remaining) {
    spend();
    if (remaining == 0) {
      for (const auto& st : states)
        if (st.empty()) { accept_leaf(); break; }
      return out_.size() >= target_;
    }

    for (SymbolKind k : fixed_symbols()) {
      auto next = step_states(states, k, remaining);
      if (next.empty()) continue;
      prefix_.push_back(sym(k));
      bool done = walk(next, remaining - 1);
      prefix_.pop_back();
      if (done) return true;
    }

    // Variables, ascending by index. Indices already present in the prefix
    // are always tried; fresh indices >= 2 are isomorphic to one another,
    // so the block stops for good once one of them yields nothing.
    auto var_next = step_states(states, SymbolKind::Variable, remaining);
    if (var_next.empty()) return false;
    std::set<std::uint64_t> used;
    for (const Symbol& s : prefix_)
      if (s.kind == SymbolKind::Variable) used.insert(s.index);

    bool fresh_dead = false;
    std::uint64_t max_used = used.empty() ? 0 : *used.rbegin();
    for (std::uint64_t i = 1;; ++i) {
      bool is_used = used.count(i) > 0;
      if (i > max_used && i > 1 && fresh_dead) break;
      if (!is_used && i > 1 && fresh_dead) continue;
      std::size_t before = out_.size();
      prefix_.push_back(var_symbol(i));
      bool done = walk(var_next, remaining - 1);
      prefix_.pop_back();
      if (done) return true;
      if (!is_used && i > 1 && out_.size() == before) fresh_dead = true;
      if (i > max_used && i > 1 && fresh_dead) break;
    }
    return false;
  }

  void accept_leaf() {
    std::optional<Formula> f;
    try {
      f = parse_formula(render(prefix_));
    } catch (const SyntaxError&) {
      return;  // the viability machine overapproximates
    }
    // Exact retokenization guards against lexeme merges in the rendering.
    if (tokens(*f, prefix_.size()) != prefix_) return;
    if (!is_class_sign(*f)) return;
    out_.push_back(*f);
  }

  std::size_t target_;
  std::uint64_t budget_;
  std::vector<Formula>& out_;
  std::uint64_t visits_ = 0;
  unsigned length_ = 0;
  TokenSeq prefix_;
};

}  // namespace detail

// First `count` class signs in (token length, lex on symbol codes) order.
// Deterministic; enumerate_class_signs(k) is a prefix of
// enumerate_class_signs(k+1).
inline std::vector<Formula> enumerate_class_signs(std::size_t count,
                                                  EnumerationOptions options = {}) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  std::vector<Formula> out;
  out.reserve(count);
  detail::ClassSignDfs dfs(count, options.work_budget, out);
  for (unsigned length = 3;; ++length) {
    if (dfs.run_length(length)) return out;
  }
}

// The i-th class sign, 1-based.
inline Formula class_sign(std::uint64_t i, EnumerationOptions options = {}) {
  if (i < 1) throw std::invalid_argument("class-sign index must be >= 1");
  return enumerate_class_signs(static_cast<std::size_t>(i), options).back();
}

}  // namespace goedel
