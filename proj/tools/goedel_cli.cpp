// Command-line front end: encoding, decoding, the three self-reference
// constructions, proof checking and constant elimination. Every command
// prints one JSON envelope on stdout:
//
//   {"command": ..., "inputs": ..., "result": ..., "errors": [...]}
//
// Exit codes: 0 success (a rejected proof is still a successful check),
// 2 malformed input text or proof file, 3 domain errors (NotACode,
// NumeralTooLarge, ...), 4 resource limits.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <goedel/goedel.hpp>

namespace {

using goedel::Json;

std::string read_input(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return arg;
}

std::string read_file_or_stdin(const std::string& arg) {
  if (arg == "-") return read_input(arg);
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw goedel::ProofFormatError("cannot open proof file '" + arg + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

goedel::Nat parse_code(const std::string& text) {
  if (text.empty()) throw goedel::NotACode("empty code");
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw goedel::NotACode("codes are decimal numbers, got '" + text + "'");
  goedel::Nat value(text);
  if (value < 1) throw goedel::NotACode("codes are >= 1");
  return value;
}

int exit_code_for(const std::string& error_code) {
  if (error_code == "SyntaxError" || error_code == "ProofFormat" ||
      error_code == "InvalidArgument")
    return 2;
  if (error_code == "ResourceLimit") return 4;
  return 3;
}

struct Output {
  Json envelope;
  std::string text;
  int exit_code = 0;
};

void emit(const Output& out, bool text_mode) {
  if (text_mode)
    std::cout << out.text;
  else
    std::cout << out.envelope.dump() << "\n";
}

std::string verdict_text(const goedel::Verdict& v) {
  if (v.ok) return "ok";
  std::string s = "rejected";
  if (v.line) s += " at line " + std::to_string(*v.line);
  if (v.reason) s += ": " + *v.reason;
  return s;
}

goedel::System make_system(const std::string& name, const std::string& property,
                           std::uint64_t bound) {
  if (name == "s") return goedel::system_s();
  if (name == "sprime") return goedel::system_sprime(bound);
  if (name == "sstar") {
    if (property.empty())
      throw goedel::Error("InvalidArgument",
                          "--system sstar needs --property to fix the single axiom");
    auto fp = goedel::sstar_fixed_point(goedel::parse_formula(property), bound);
    return goedel::system_sstar(fp);
  }
  throw goedel::Error("InvalidArgument", "unknown system '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goedel numbering and direct self-reference toolkit"};
  app.require_subcommand(1);

  std::uint64_t bound = goedel::kDefaultNumeralBound;
  bool text_mode = false;
  bool json_mode = false;
  app.add_option("--bound", bound, "numeral expansion bound (default 1000)");
  app.add_flag("--text", text_mode, "plain-text output");
  app.add_flag("--json", json_mode, "JSON envelope output (default)");

  std::string scheme_name = "std";
  std::string formula_arg, code_arg, class_sign_arg, property_arg, proof_arg;
  std::uint64_t index_arg = 1;
  std::string system_name = "s";
  std::string system_property;

  auto* encode = app.add_subcommand("encode", "Goedel number of a formula");
  encode->add_option("--scheme", scheme_name, "std | nonstd | ext");
  encode->add_option("formula", formula_arg, "formula text, or - for stdin")->required();

  auto* decode = app.add_subcommand("decode", "formula of a Goedel number");
  decode->add_option("--scheme", scheme_name, "std | nonstd | ext");
  decode->add_option("code", code_arg, "decimal code, or - for stdin")->required();

  auto* smullyan = app.add_subcommand(
      "smullyan", "sentence containing the numeral of its own nonstandard code");
  smullyan->add_option("class_sign", class_sign_arg, "class sign text, or - for stdin")
      ->required();

  auto* sprime = app.add_subcommand("sprime", "i-th axiom a_i=0^(n_i) of S'");
  sprime->add_option("index", index_arg, "axiom index, 1-based")->required();

  auto* sstar = app.add_subcommand("sstar", "single-constant fixed point of a property");
  sstar->add_option("property", property_arg, "property over x1, or - for stdin")->required();

  auto* check = app.add_subcommand("check", "check a proof file against a system");
  check->add_option("--system", system_name, "s | sprime | sstar");
  check->add_option("--property", system_property, "fixed-point property for sstar");
  check->add_option("proof", proof_arg, "proof file, or - for stdin")->required();

  auto* translate =
      app.add_subcommand("translate", "eliminate constants from an extended-system proof");
  std::string tr_system = "sprime";
  translate->add_option("--system", tr_system, "sprime | sstar");
  translate->add_option("--property", system_property, "fixed-point property for sstar");
  translate->add_option("proof", proof_arg, "proof file, or - for stdin")->required();

  CLI11_PARSE(app, argc, argv);

  Output out;
  Json& env = out.envelope;
  env["command"] = app.get_subcommands().front()->get_name();
  env["inputs"] = Json::object();
  env["result"] = nullptr;
  env["errors"] = Json::array();

  try {
    if (encode->parsed()) {
      std::string text = read_input(formula_arg);
      env["inputs"] = Json{{"scheme", scheme_name}, {"formula", text}, {"bound", bound}};
      auto scheme = goedel::scheme_from_string(scheme_name);
      if (!scheme) throw goedel::Error("InvalidArgument", "unknown scheme '" + scheme_name + "'");
      goedel::GoedelNumber g = goedel::encode(*scheme, goedel::parse_formula(text), bound);
      env["result"] = Json{{"code", g.str()}};
      out.text = g.str() + "\n";
    } else if (decode->parsed()) {
      std::string text = read_input(code_arg);
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      env["inputs"] = Json{{"scheme", scheme_name}, {"code", text}, {"bound", bound}};
      auto scheme = goedel::scheme_from_string(scheme_name);
      if (!scheme) throw goedel::Error("InvalidArgument", "unknown scheme '" + scheme_name + "'");
      goedel::Formula f =
          goedel::decode(*scheme, goedel::GoedelNumber(parse_code(text)), bound);
      env["result"] = Json{{"formula", goedel::print(f)}};
      out.text = goedel::print(f) + "\n";
    } else if (smullyan->parsed()) {
      std::string text = read_input(class_sign_arg);
      env["inputs"] = Json{{"class_sign", text}, {"bound", bound}};
      auto s = goedel::smullyan_sentence(goedel::parse_formula(text), bound);
      bool selfcheck = goedel::gn_nonstd(s.sentence, bound) == s.code;
      Json result = goedel::to_json(s);
      result["selfcheck"] = selfcheck;
      env["result"] = result;
      out.text = "sentence: " + goedel::print(s.sentence) + "\ncode: " + s.code.str() +
                 "\nselfcheck: " + (selfcheck ? "true" : "false") + "\n";
    } else if (sprime->parsed()) {
      env["inputs"] = Json{{"index", index_arg}, {"bound", bound}};
      auto a = goedel::sprime_axiom(index_arg, bound);
      bool selfcheck = goedel::gn_ext(a.instance, bound) == a.n;
      Json result = goedel::to_json(a);
      result["selfcheck"] = selfcheck;
      env["result"] = result;
      out.text = "axiom: " + goedel::print(a.axiom) + "\nn: " + a.n.str() +
                 "\nselfcheck: " + (selfcheck ? "true" : "false") + "\n";
    } else if (sstar->parsed()) {
      std::string text = read_input(property_arg);
      env["inputs"] = Json{{"property", text}, {"bound", bound}};
      auto fp = goedel::sstar_fixed_point(goedel::parse_formula(text), bound);
      bool selfcheck = goedel::gn_ext(fp.phi, bound) == fp.n;
      Json result = goedel::to_json(fp);
      result["selfcheck"] = selfcheck;
      env["result"] = result;
      out.text = "phi: " + goedel::print(fp.phi) + "\nn: " + fp.n.str() + "\naxiom: " +
                 goedel::print(fp.axiom) + "\nselfcheck: " + (selfcheck ? "true" : "false") +
                 "\n";
    } else if (check->parsed()) {
      env["inputs"] = Json{{"system", system_name}, {"proof", proof_arg}, {"bound", bound}};
      if (!system_property.empty()) env["inputs"]["property"] = system_property;
      goedel::Proof proof = goedel::parse_proof(read_file_or_stdin(proof_arg));
      goedel::System sys = make_system(system_name, system_property, bound);
      goedel::Verdict v = goedel::check_proof(sys, proof);
      env["result"] = Json{{"verdict", goedel::to_json(v)}};
      out.text = verdict_text(v) + "\n";
    } else if (translate->parsed()) {
      env["inputs"] = Json{{"system", tr_system}, {"proof", proof_arg}, {"bound", bound}};
      if (!system_property.empty()) env["inputs"]["property"] = system_property;
      goedel::Proof proof = goedel::parse_proof(read_file_or_stdin(proof_arg));
      goedel::System sys = make_system(tr_system, system_property, bound);
      auto res = goedel::conservativity_check(sys, proof);
      env["result"] = Json{{"original", goedel::to_json(res.extended)},
                           {"translated", goedel::to_json(res.translated)},
                           {"conclusion_matches", res.conclusion_matches},
                           {"proof", goedel::to_json(res.translated_proof)}};
      out.text = "original: " + verdict_text(res.extended) +
                 "\ntranslated: " + verdict_text(res.translated) + "\n";
    }
  } catch (const goedel::Error& e) {
    env["result"] = nullptr;
    env["errors"].push_back(Json{{"code", e.code()}, {"message", e.what()}});
    out.text = std::string("error [") + e.code() + "]: " + e.what() + "\n";
    out.exit_code = exit_code_for(e.code());
  } catch (const std::invalid_argument& e) {
    // Library precondition violations (index 0 and friends): the input
    // parsed, the value is outside the domain.
    env["result"] = nullptr;
    env["errors"].push_back(Json{{"code", "DomainError"}, {"message", e.what()}});
    out.text = std::string("error [DomainError]: ") + e.what() + "\n";
    out.exit_code = 3;
  }

  emit(out, text_mode);
  return out.exit_code;
}
