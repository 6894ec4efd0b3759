// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: acceptance [path-to-cli]   (the CLI path is needed for criterion 8;
// it defaults to $GOEDEL_CLI).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <goedel/goedel.hpp>

#include "oracle.hpp"
#include "proofgen.hpp"

using namespace goedel;

namespace {

std::string g_cli;
int g_failures = 0;

void criterion(int number, const std::string& name, double limit_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > limit_seconds) {
    ok = false;
    detail = "exceeded " + std::to_string(limit_seconds) + "s";
  }
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2fs", elapsed);
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << name << " ["
            << timing << "]";
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  if (!ok) ++g_failures;
}

std::vector<Formula> exhaustive_l_formulas() {
  oracle::Generator gen(oracle::Palette{{1, 2, 3}, {}});
  return gen.formulas_up_to(7);
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::filesystem::path& cwd) {
  std::string cmd = "cd " + cwd.string() + " && " + g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult r;
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    g_cli = argv[1];
  } else if (const char* env = std::getenv("GOEDEL_CLI")) {
    g_cli = env;
  }

  // 1. Parity: standard codes over the exhaustive enumeration are odd.
  criterion(1, "parity of gn_std over all L-formulas to token length 7", 30.0,
            [](std::string& detail) {
              auto formulas = exhaustive_l_formulas();
              if (formulas.size() < 500) {
                detail = "enumeration unexpectedly small";
                return false;
              }
              for (const Formula& f : formulas)
                if (gn_std(f).value % 2 != 1) {
                  detail = "even code for " + print(f);
                  return false;
                }
              return true;
            });

  // 2. Round trips for std, ext, nonstd, plus the first 20 constructed
  // sentences, with byte-exact text on the way back.
  criterion(2, "decode after encode is the identity for std, ext, nonstd", 60.0,
            [](std::string& detail) {
              for (const Formula& f : exhaustive_l_formulas()) {
                if (decode_std(gn_std(f)) != f || decode_nonstd(gn_nonstd(f)) != f ||
                    decode_ext(gn_ext(f)) != f) {
                  detail = "mismatch on " + print(f);
                  return false;
                }
                if (print(decode_std(gn_std(f))) != print(f)) {
                  detail = "text mismatch on " + print(f);
                  return false;
                }
              }
              oracle::Generator ext_gen(oracle::Palette{{1, 2}, {1, 2}});
              for (const Formula& f : ext_gen.formulas_up_to(6))
                if (decode_ext(gn_ext(f)) != f) {
                  detail = "ext mismatch on " + print(f);
                  return false;
                }
              for (const Formula& a : enumerate_class_signs(20)) {
                auto s = smullyan_sentence(a);
                if (decode_nonstd(s.code) != s.sentence) {
                  detail = "sentence mismatch for class sign " + print(a);
                  return false;
                }
              }
              return true;
            });

  // 3. The fixed point of the nonstandard numbering.
  criterion(3, "sentences carry the numeral of their own nonstandard code", 30.0,
            [](std::string& detail) {
              auto signs = enumerate_class_signs(20);
              for (const Formula& a : signs) {
                auto s = smullyan_sentence(a);
                Nat expected = 2 * gn_std(a).value;
                const Term& numeral = s.sentence.body().lhs().rhs_term();
                if (gn_nonstd(s.sentence).value != expected ||
                    numeral.count() != expected) {
                  detail = "fixed point broken for " + print(a);
                  return false;
                }
              }
              bool anchor = smullyan_sentence(parse_formula("0=0")).code.value ==
                            Nat("82031250");
              if (!anchor) detail = "anchor 82031250 = 2*41015625 failed";
              return anchor;
            });

  // 4. Injectivity of the nonstandard numbering.
  criterion(4, "gn_nonstd is injective over formulas and constructed sentences", 30.0,
            [](std::string& detail) {
              std::map<Nat, Formula> seen;
              auto formulas = exhaustive_l_formulas();
              for (const Formula& a : enumerate_class_signs(20))
                formulas.push_back(smullyan_sentence(a).sentence);
              for (const Formula& f : formulas) {
                Nat code = gn_nonstd(f).value;
                auto [it, fresh] = seen.emplace(code, f);
                if (!fresh && it->second != f) {
                  detail = "code collision between " + print(it->second) + " and " + print(f);
                  return false;
                }
              }
              return true;
            });

  // 5. The S' axioms store exactly the code of their instance.
  criterion(5, "sprime axioms recompute exactly for i in 1..10", 30.0,
            [](std::string& detail) {
              for (std::uint64_t i = 1; i <= 10; ++i) {
                auto a = sprime_axiom(i);
                if (gn_ext(substitute(a.class_sign, 1, Term::constant(i))) != a.n) {
                  detail = "n_" + std::to_string(i) + " does not recompute";
                  return false;
                }
                if (a.axiom != Formula::equals(Term::constant(i), Term::numeral(a.n.value))) {
                  detail = "axiom shape broken at i=" + std::to_string(i);
                  return false;
                }
              }
              return true;
            });

  // 6. Conservativity over a random proof corpus.
  criterion(6, "100+ random S'-proofs survive constant elimination", 60.0,
            [](std::string& detail) {
              System sprime = system_sprime();
              for (std::uint64_t seed = 1; seed <= 110; ++seed) {
                Proof p = proofgen::Generator(seed).proof(24);
                auto res = conservativity_check(sprime, p);
                if (!res.extended.ok || !res.translated.ok || !res.conclusion_matches) {
                  detail = "seed " + std::to_string(seed) + " failed";
                  if (res.translated.reason) detail += ": " + *res.translated.reason;
                  return false;
                }
              }
              return true;
            });

  // 7. The self-reference lemma, end to end.
  criterion(7, "fixed points prove their biconditional in S* and translate to S", 30.0,
            [](std::string& detail) {
              const char* properties[] = {
                  "x1=0",          "~(x1=0)",         "0=0",
                  "(x1=0&0=0)",    "(x1=0->0=0)",     "(x1=x1|0=0)",
                  "Ex2(x2=x1)",    "Ax2((x2=x1->x2=x1))", "~(Ex2(x2=Sx1))",
                  "0^(2)=x1",
              };
              for (const char* b : properties) {
                auto fp = sstar_fixed_point(parse_formula(b));
                if (gn_ext(fp.phi) != fp.n) {
                  detail = std::string("n does not recompute for ") + b;
                  return false;
                }
                Proof proof = selfref_biconditional(fp);
                System sstar = system_sstar(fp);
                if (!check_proof(sstar, proof).ok) {
                  detail = std::string("S* rejects the biconditional for ") + b;
                  return false;
                }
                auto res = conservativity_check(sstar, proof);
                if (!res.extended.ok || !res.translated.ok || !res.conclusion_matches) {
                  detail = std::string("translation fails for ") + b;
                  return false;
                }
              }
              return true;
            });

  // 8. The CLI contract, byte for byte.
  criterion(8, "CLI golden envelopes and exit codes", 60.0, [](std::string& detail) {
    if (g_cli.empty()) {
      detail = "no CLI path (argv[1] or $GOEDEL_CLI)";
      return false;
    }
    auto dir = std::filesystem::temp_directory_path() / "goedel_acceptance";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "proof.json")
        << "[{\"formula\":\"0=0\",\"just\":{\"rule\":\"base_axiom\",\"schema\":\"eq_refl\"}}]";
    std::ofstream(dir / "axproof.json")
        << "[{\"formula\":\"a1=0^(41015625)\",\"just\":{\"rule\":\"extra_axiom\",\"index\":1}}]";
    std::ofstream(dir / "garbage.json") << "{nope";

    struct Golden {
      std::string args;
      int exit_code;
      std::string envelope;
    };
    const std::string sigma = "Ex1((x1=0^(82031250)&0=0))";
    std::vector<Golden> goldens = {
        {"encode --scheme std \"0=0\"", 0,
         R"json({"command":"encode","inputs":{"scheme":"std","formula":"0=0","bound":1000},"result":{"code":"41015625"},"errors":[]})json"},
        {"encode --scheme nonstd \"" + sigma + "\"", 0,
         R"json({"command":"encode","inputs":{"scheme":"nonstd","formula":")json" + sigma +
             R"json(","bound":1000},"result":{"code":"82031250"},"errors":[]})json"},
        {"encode --scheme std \"a1=0\"", 3,
         R"json({"command":"encode","inputs":{"scheme":"std","formula":"a1=0","bound":1000},"result":null,"errors":[{"code":"ConstantNotInL","message":"formula a1=0 mentions extension constants"}]})json"},
        {"decode --scheme std 41015625", 0,
         R"json({"command":"decode","inputs":{"scheme":"std","code":"41015625","bound":1000},"result":{"formula":"0=0"},"errors":[]})json"},
        {"decode --scheme nonstd 82031250", 0,
         R"json({"command":"decode","inputs":{"scheme":"nonstd","code":"82031250","bound":1000},"result":{"formula":")json" +
             sigma + R"json("},"errors":[]})json"},
        {"decode --scheme std 10", 3,
         R"json({"command":"decode","inputs":{"scheme":"std","code":"10","bound":1000},"result":null,"errors":[{"code":"NotACode","message":"10 is even; standard codes are odd"}]})json"},
        {"sprime 1", 0,
         R"json({"command":"sprime","inputs":{"index":1,"bound":1000},"result":{"index":1,"class_sign":"0=0","instance":"0=0","n":"41015625","axiom":"a1=0^(41015625)","selfcheck":true},"errors":[]})json"},
        {"sstar \"x1=0\"", 0,
         R"json({"command":"sstar","inputs":{"property":"x1=0","bound":1000},"result":{"property":"x1=0","phi":"a1=0","n":"8444753464819587890625","axiom":"a1=0^(8444753464819587890625)","selfcheck":true},"errors":[]})json"},
        {"smullyan \"x2=0\"", 3,
         R"json({"command":"smullyan","inputs":{"class_sign":"x2=0","bound":1000},"result":null,"errors":[{"code":"NotAClassSign","message":"formula x2=0 is not a class sign"}]})json"},
        {"check --system s proof.json", 0,
         R"json({"command":"check","inputs":{"system":"s","proof":"proof.json","bound":1000},"result":{"verdict":{"ok":true,"line":null,"reason":null}},"errors":[]})json"},
        {"translate --system sprime axproof.json", 0,
         R"json({"command":"translate","inputs":{"system":"sprime","proof":"axproof.json","bound":1000},"result":{"original":{"ok":true,"line":null,"reason":null},"translated":{"ok":true,"line":null,"reason":null},"conclusion_matches":true,"proof":[{"formula":"0^(41015625)=0^(41015625)","just":{"rule":"base_axiom","schema":"eq_refl"}}]},"errors":[]})json"},
        {"check --system s garbage.json", 2,
         R"json({"command":"check","inputs":{"system":"s","proof":"garbage.json","bound":1000},"result":null,"errors":[{"code":"ProofFormat","message":"proof file is not valid JSON"}]})json"},
    };
    for (const Golden& g : goldens) {
      RunResult r = run_cli(g.args, dir);
      if (r.exit_code != g.exit_code) {
        detail = "exit " + std::to_string(r.exit_code) + " (wanted " +
                 std::to_string(g.exit_code) + ") for: " + g.args;
        return false;
      }
      if (r.output != g.envelope + "\n") {
        detail = "envelope mismatch for: " + g.args + "\n  got:    " + r.output +
                 "  wanted: " + g.envelope + "\n";
        return false;
      }
    }
    // decode(encode(f)) reproduces canonical text byte-exactly through the
    // process for a sample of the enumeration.
    auto formulas = exhaustive_l_formulas();
    for (std::size_t i = 0; i < formulas.size(); i += 97) {
      const Formula& f = formulas[i];
      std::string code = gn_std(f).str();
      RunResult r = run_cli("--text decode --scheme std " + code, dir);
      if (r.output != print(f) + "\n") {
        detail = "CLI round trip mismatch for " + print(f);
        return false;
      }
    }
    return true;
  });

  if (g_failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << g_failures << " criterion(s) failed\n";
  return 1;
}
