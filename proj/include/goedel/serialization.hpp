#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "goedel/errors.hpp"
#include "goedel/numbering.hpp"
#include "goedel/proofs.hpp"
#include "goedel/selfref.hpp"
#include "goedel/syntax.hpp"

// JSON wire formats. Formulas travel as canonical text, Goedel numbers as
// decimal strings (they exceed machine words immediately), indices as
// integers. Key order is fixed, so identical inputs serialize to identical
// bytes.
//
// Proof files are a JSON array of lines:
//   [{"formula": "0=0", "just": {"rule": "base_axiom", "schema": "eq_refl"}}, ...]
// with the rules base_axiom {schema}, extra_axiom {index},
// modus_ponens {implication, antecedent}, generalization {line, var};
// line references are 1-based.

namespace goedel {

using Json = nlohmann::ordered_json;

inline Json to_json(const GoedelNumber& g) { return g.str(); }

inline Json to_json(const SmullyanSentence& s) {
  return Json{{"sentence", print(s.sentence)},
              {"class_sign", print(s.class_sign)},
              {"k", s.k.str()},
              {"code", s.code.str()}};
}

inline Json to_json(const SPrimeAxiom& a) {
  return Json{{"index", a.index},
              {"class_sign", print(a.class_sign)},
              {"instance", print(a.instance)},
              {"n", a.n.str()},
              {"axiom", print(a.axiom)}};
}

inline Json to_json(const SStarFixedPoint& fp) {
  return Json{{"property", print(fp.property)},
              {"phi", print(fp.phi)},
              {"n", fp.n.str()},
              {"axiom", print(fp.axiom)}};
}

inline Json to_json(const Justification& just) {
  if (const auto* ax = std::get_if<BaseAxiom>(&just))
    return Json{{"rule", "base_axiom"}, {"schema", ax->schema}};
  if (const auto* ex = std::get_if<ExtraAxiom>(&just))
    return Json{{"rule", "extra_axiom"}, {"index", ex->index}};
  if (const auto* mp = std::get_if<ModusPonens>(&just))
    return Json{{"rule", "modus_ponens"},
                {"implication", mp->implication},
                {"antecedent", mp->antecedent}};
  const auto& gen = std::get<Generalization>(just);
  return Json{{"rule", "generalization"}, {"line", gen.line}, {"var", gen.var}};
}

inline Json to_json(const Proof& p) {
  Json lines = Json::array();
  for (const ProofLine& line : p.lines)
    lines.push_back(Json{{"formula", print(line.formula)}, {"just", to_json(line.just)}});
  return lines;
}

inline Json to_json(const Verdict& v) {
  Json out;
  out["ok"] = v.ok;
  out["line"] = v.line ? Json(*v.line) : Json(nullptr);
  out["reason"] = v.reason ? Json(*v.reason) : Json(nullptr);
  return out;
}

namespace detail {

inline const Json& require_field(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw ProofFormatError(std::string(what) + " is missing the '" + key + "' field");
  return *it;
}

inline std::uint64_t uint_field(const Json& j, const char* key, const char* what) {
  const Json& v = require_field(j, key, what);
  if (!v.is_number_unsigned())
    throw ProofFormatError(std::string("'") + key + "' of " + what +
                           " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace detail

inline Justification justification_from_json(const Json& j) {
  if (!j.is_object()) throw ProofFormatError("justification must be an object");
  const Json& rule = detail::require_field(j, "rule", "justification");
  if (!rule.is_string()) throw ProofFormatError("justification rule must be a string");
  std::string r = rule.get<std::string>();
  if (r == "base_axiom") {
    const Json& schema = detail::require_field(j, "schema", "base_axiom justification");
    if (!schema.is_string()) throw ProofFormatError("schema id must be a string");
    return BaseAxiom{schema.get<std::string>()};
  }
  if (r == "extra_axiom")
    return ExtraAxiom{detail::uint_field(j, "index", "extra_axiom justification")};
  if (r == "modus_ponens")
    return ModusPonens{detail::uint_field(j, "implication", "modus_ponens justification"),
                       detail::uint_field(j, "antecedent", "modus_ponens justification")};
  if (r == "generalization")
    return Generalization{detail::uint_field(j, "line", "generalization justification"),
                          detail::uint_field(j, "var", "generalization justification")};
  throw ProofFormatError("unknown justification rule '" + r + "'");
}

inline Proof proof_from_json(const Json& j) {
  if (!j.is_array()) throw ProofFormatError("a proof file is a JSON array of lines");
  Proof p;
  p.lines.reserve(j.size());
  for (const Json& entry : j) {
    if (!entry.is_object()) throw ProofFormatError("each proof line must be an object");
    const Json& formula = detail::require_field(entry, "formula", "proof line");
    if (!formula.is_string()) throw ProofFormatError("proof line formulas are strings");
    const Json& just = detail::require_field(entry, "just", "proof line");
    p.lines.push_back({parse_formula(formula.get<std::string>()), justification_from_json(just)});
  }
  return p;
}

inline Proof parse_proof(const std::string& text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ProofFormatError("proof file is not valid JSON");
  return proof_from_json(j);
}

}  // namespace goedel
