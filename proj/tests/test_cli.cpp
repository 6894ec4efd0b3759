#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <goedel/serialization.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string cli_path() {
  const char* env = std::getenv("GOEDEL_CLI");
  return env ? env : "tools/goedel";
}

RunResult run(const std::string& args, const std::string& stdin_data = "") {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "goedel_cli_test";
  std::filesystem::create_directories(dir);
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  if (!stdin_data.empty()) {
    auto stdin_file = dir / "stdin.txt";
    std::ofstream(stdin_file) << stdin_data;
    cmd += " < " + stdin_file.string();
  }
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_proof(const std::string& name, const std::string& body) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "goedel_cli_test";
  std::filesystem::create_directories(dir);
  auto file = dir / name;
  std::ofstream(file) << body;
  return file.string();
}

}  // namespace

TEST_CASE("encode and decode round trip through the process") {
  auto enc = run("encode --scheme std \"0=0\"");
  REQUIRE(enc.exit_code == 0);
  REQUIRE(enc.output ==
          "{\"command\":\"encode\",\"inputs\":{\"scheme\":\"std\",\"formula\":\"0=0\","
          "\"bound\":1000},\"result\":{\"code\":\"41015625\"},\"errors\":[]}\n");

  auto dec = run("decode --scheme std 41015625");
  REQUIRE(dec.exit_code == 0);
  REQUIRE(dec.output ==
          "{\"command\":\"decode\",\"inputs\":{\"scheme\":\"std\",\"code\":\"41015625\","
          "\"bound\":1000},\"result\":{\"formula\":\"0=0\"},\"errors\":[]}\n");
}

TEST_CASE("text mode prints just the values") {
  REQUIRE(run("--text encode --scheme std \"0=0\"").output == "41015625\n");
  REQUIRE(run("--text decode --scheme nonstd 82031250").output ==
          "Ex1((x1=0^(82031250)&0=0))\n");
}

TEST_CASE("stdin bodies") {
  auto r = run("--text encode --scheme ext -", "a1=0");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output == "8444753464819587890625\n");
}

TEST_CASE("exit codes by error class") {
  REQUIRE(run("encode --scheme std \"0=\"").exit_code == 2);       // SyntaxError
  REQUIRE(run("encode --scheme std \"a1=0\"").exit_code == 3);     // ConstantNotInL
  REQUIRE(run("decode --scheme std 10").exit_code == 3);           // NotACode
  REQUIRE(run("encode --scheme std \"0=0^(5000)\"").exit_code == 3);  // NumeralTooLarge
  REQUIRE(run("smullyan \"x2=0\"").exit_code == 3);                // NotAClassSign
  REQUIRE(run("sstar \"x2=0\"").exit_code == 3);                   // BadProperty
  REQUIRE(run("sprime 0").exit_code == 3);                         // precondition
}

TEST_CASE("bound flag is honored") {
  REQUIRE(run("encode --scheme std \"0=0^(5000)\"").exit_code == 3);
  auto ok = run("--text --bound 6000 encode --scheme std \"0=0^(5000)\"");
  REQUIRE(ok.exit_code == 0);
}

TEST_CASE("construction commands include a selfcheck") {
  auto sm = run("smullyan \"0=0\"");
  REQUIRE(sm.exit_code == 0);
  auto env = goedel::Json::parse(sm.output);
  REQUIRE(env["result"]["code"] == "82031250");
  REQUIRE(env["result"]["selfcheck"] == true);

  auto sp = run("sprime 1");
  env = goedel::Json::parse(sp.output);
  REQUIRE(env["result"]["axiom"] == "a1=0^(41015625)");
  REQUIRE(env["result"]["selfcheck"] == true);

  auto ss = run("sstar \"x1=0\"");
  env = goedel::Json::parse(ss.output);
  REQUIRE(env["result"]["phi"] == "a1=0");
  REQUIRE(env["result"]["n"] == "8444753464819587890625");
  REQUIRE(env["result"]["selfcheck"] == true);
}

TEST_CASE("check and translate") {
  std::string refl = write_proof(
      "refl.json", "[{\"formula\":\"0=0\",\"just\":{\"rule\":\"base_axiom\",\"schema\":\"eq_refl\"}}]");
  auto chk = run("check --system s " + refl);
  REQUIRE(chk.exit_code == 0);
  auto env = goedel::Json::parse(chk.output);
  REQUIRE(env["result"]["verdict"]["ok"] == true);

  // a failed proof is still exit 0
  std::string bad = write_proof(
      "bad.json", "[{\"formula\":\"0=0^(1)\",\"just\":{\"rule\":\"base_axiom\",\"schema\":\"eq_refl\"}}]");
  auto chk2 = run("check --system s " + bad);
  REQUIRE(chk2.exit_code == 0);
  env = goedel::Json::parse(chk2.output);
  REQUIRE(env["result"]["verdict"]["ok"] == false);
  REQUIRE(env["result"]["verdict"]["line"] == 1);

  std::string ax = write_proof(
      "ax.json",
      "[{\"formula\":\"a1=0^(41015625)\",\"just\":{\"rule\":\"extra_axiom\",\"index\":1}}]");
  auto tr = run("translate --system sprime " + ax);
  REQUIRE(tr.exit_code == 0);
  env = goedel::Json::parse(tr.output);
  REQUIRE(env["result"]["original"]["ok"] == true);
  REQUIRE(env["result"]["translated"]["ok"] == true);
  REQUIRE(env["result"]["conclusion_matches"] == true);
  REQUIRE(env["result"]["proof"][0]["formula"] == "0^(41015625)=0^(41015625)");
  REQUIRE(env["result"]["proof"][0]["just"]["schema"] == "eq_refl");

  // malformed file
  std::string garbage = write_proof("garbage.json", "{nope");
  REQUIRE(run("check --system s " + garbage).exit_code == 2);

  // sstar checking needs the property
  REQUIRE(run("check --system sstar " + refl).exit_code == 2);
  auto star = run("check --system sstar --property \"x1=0\" " + refl);
  REQUIRE(star.exit_code == 0);
}

TEST_CASE("every envelope validates against the published schema") {
  // Mirrors docs/envelope.schema.json: exactly the four fields, command from
  // the fixed set, result object-or-null, errors an array of {code,message}.
  auto validate = [](const std::string& raw) {
    auto env = goedel::Json::parse(raw);
    REQUIRE(env.is_object());
    REQUIRE(env.size() == 4);
    static const std::set<std::string> commands = {
        "encode", "decode", "smullyan", "sprime", "sstar", "check", "translate"};
    REQUIRE(env.contains("command"));
    REQUIRE(env["command"].is_string());
    REQUIRE(commands.count(env["command"].get<std::string>()) == 1);
    REQUIRE(env.contains("inputs"));
    REQUIRE(env["inputs"].is_object());
    REQUIRE(env.contains("result"));
    REQUIRE((env["result"].is_object() || env["result"].is_null()));
    REQUIRE(env.contains("errors"));
    REQUIRE(env["errors"].is_array());
    for (const auto& e : env["errors"]) {
      REQUIRE(e.is_object());
      REQUIRE(e.size() == 2);
      REQUIRE(e["code"].is_string());
      REQUIRE(e["message"].is_string());
    }
    REQUIRE((env["result"].is_null()) == (!env["errors"].empty()));
  };
  std::string refl = write_proof(
      "refl2.json",
      "[{\"formula\":\"0=0\",\"just\":{\"rule\":\"base_axiom\",\"schema\":\"eq_refl\"}}]");
  for (const std::string& args : {
           std::string("encode --scheme std \"0=0\""),
           std::string("encode --scheme std \"a1=0\""),
           std::string("encode --scheme std \"0=\""),
           std::string("decode --scheme nonstd 82031250"),
           std::string("decode --scheme ext 7"),
           std::string("smullyan \"x1=x1\""),
           std::string("smullyan \"x2=0\""),
           std::string("sprime 2"),
           std::string("sstar \"~(x1=0)\""),
           std::string("check --system s " + refl),
           std::string("translate --system sprime " + refl),
       }) {
    INFO(args);
    validate(run(args).output);
  }
}

TEST_CASE("proof bodies from stdin and sstar translation") {
  std::string proof =
      "[{\"formula\":\"0=0\",\"just\":{\"rule\":\"base_axiom\",\"schema\":\"eq_refl\"}}]";
  auto chk = run("check --system s -", proof);
  REQUIRE(chk.exit_code == 0);
  REQUIRE(goedel::Json::parse(chk.output)["result"]["verdict"]["ok"] == true);

  // the three-line biconditional proof for x1=0, via the library, through
  // the sstar translation path
  using namespace goedel;
  auto fp = sstar_fixed_point(parse_formula("x1=0"));
  std::string body = to_json(selfref_biconditional(fp)).dump();
  auto tr = run("translate --system sstar --property \"x1=0\" -", body);
  REQUIRE(tr.exit_code == 0);
  auto env = goedel::Json::parse(tr.output);
  REQUIRE(env["result"]["original"]["ok"] == true);
  REQUIRE(env["result"]["translated"]["ok"] == true);
  REQUIRE(env["result"]["conclusion_matches"] == true);
}

TEST_CASE("library round trip matches the CLI text surface") {
  using namespace goedel;
  for (const char* text : {"0=0", "Ex1((x1=0^(4)&x2=0))", "~((0+x1)=0^(2))", "Ax3(x3=x3)"}) {
    Formula f = parse_formula(text);
    REQUIRE(print(decode(SchemeId::Std, encode(SchemeId::Std, f))) == text);
  }
  auto r = run("--text decode --scheme std " + encode(SchemeId::Std, parse_formula("Sx1=0")).str());
  REQUIRE(r.output == "Sx1=0\n");
}
