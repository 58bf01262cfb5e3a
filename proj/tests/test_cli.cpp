#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smullyan/arith/codec.hpp"
#include "smullyan/cli.hpp"

using namespace smullyan;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("smullyan_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("cli property check and fixed point") {
  auto r = cli({"check", "--model", "gallery:prop4_4", "--prop", "t-tarski-plus", "--pred-len", "4", "--str-len", "12"});
  CHECK(r.code == 0);
  CHECK(r.out.find("holds") != std::string::npos);

  auto refuted = cli({"check", "--model", "gallery:prop4_4", "--prop", "f-tarski", "--json"});
  CHECK(refuted.code == 1);
  auto j = nlohmann::json::parse(refuted.out);
  CHECK(j["holds"] == false);
  CHECK(j["property"] == "f-tarski");

  auto fp = cli({"fixpoint", "--model", "gallery:prop4_3", "--pred", "#"});
  CHECK(fp.code == 0);
  CHECK(fp.out.rfind("r#r#\n", 0) == 0);
  CHECK(fp.out.find("certificate ok") != std::string::npos);

  auto fpu = cli({"fixpoint", "--model", "gallery:prop4_3", "--pred", "♯", "--json"});
  CHECK(nlohmann::json::parse(fpu.out)["sentence"] == "r#r#");
}

TEST_CASE("cli eval, member and enumerate") {
  CHECK(cli({"eval", "--model", "gallery:prop4_4", "--str", "##"}).code == 0);
  CHECK(cli({"eval", "--model", "gallery:prop4_4", "--str", "###"}).code == 1);
  CHECK(cli({"member", "--model", "gallery:prop4_4", "--pred", "#", "--str", "#"}).code == 0);
  CHECK(cli({"member", "--model", "gallery:prop4_4", "--pred", "#", "--str", ""}).code == 1);
  auto e = cli({"enumerate", "--model", "gallery:prop4_4", "--pred", "#", "--str-len", "4"});
  CHECK(e.code == 0);
  CHECK(e.out == "#\n###\n");
  CHECK(cli({"eval", "--model", "gallery:prop4_4", "--str", "x"}).code == 2);
  CHECK(cli({"member", "--model", "gallery:prop4_4", "--pred", "##", "--str", "#"}).code == 2);
}

TEST_CASE("cli loads model files") {
  std::string path = temp_file("odd.json", R"({"alphabet": ["#"], "closure": "none", "simple": true,
    "base": [{"pred": "#", "phi": "'#'^{2i+1}"}]})");
  CHECK(cli({"eval", "--model", path, "--str", "##"}).code == 0);
  CHECK(cli({"eval", "--model", path, "--str", "###"}).code == 1);
  CHECK(cli({"eval", "--model", "/nonexistent/model.json", "--str", "#"}).code == 2);
}

TEST_CASE("cli gallery matrix and closed forms") {
  auto m = cli({"matrix", "--all-gallery"});
  CHECK(m.code == 0);
  CHECK(m.out.find("all expected verdicts reproduced") != std::string::npos);
  auto one = cli({"matrix", "--model", "gallery:prop4_7", "--prop", "fpt,t-tarski", "--json"});
  CHECK(one.code == 0);
  CHECK(nlohmann::json::parse(one.out)["rows"].size() == 1);
  auto v = cli({"gallery-verify", "--model", "gallery:prop4_6", "--pred-len", "3", "--str-len", "8"});
  CHECK(v.code == 0);
  CHECK(cli({"matrix", "--model", "gallery:missing"}).code == 2);
}

TEST_CASE("cli arithmetic codec") {
  CHECK(trim(cli({"arith-diag", "--code", "0"}).out) == "0");
  CHECK(trim(cli({"arith-diag", "--code", "272"}).out) == "272");
  CHECK(trim(cli({"arith-encode", "--formula", "(bot)"}).out) == "272");
  CHECK(trim(cli({"arith-encode", "--formula", "(num 300)"}).out) == "18973228");

  for (const char* text : {"(eq (d (num 7)) (num 0))", "(forall x1 v (leq x1 (add v (num 20))))",
                           "(exists x2 (num 4) (not (eq (mul x2 x2) (num 9))))"}) {
    auto enc = cli({"arith-encode", "--formula", text});
    REQUIRE(enc.code == 0);
    auto dec = cli({"arith-decode", "--code", trim(enc.out)});
    CHECK(dec.code == 0);
    CHECK(trim(dec.out) == text);
  }
  auto bad = cli({"arith-decode", "--code", "5"});
  CHECK(bad.code == 1);
  CHECK(trim(bad.out) == "undecodable");
  CHECK(cli({"arith-decode", "--code", "-5"}).code == 2);
  CHECK(cli({"arith-encode", "--formula", "(eq v"}).code == 2);
  auto j = nlohmann::json::parse(cli({"arith-encode", "--formula", "(eq v v)", "--json"}).out);
  CHECK(j["code"] == "1173062950912");
  CHECK(j["bytes"] == "1120002000");
  CHECK(j["v_formula"] == true);
}

TEST_CASE("cli arithmetic demonstrations") {
  auto fp = cli({"arith-fixpoint", "--json"});
  CHECK(fp.code == 0);
  auto j = nlohmann::json::parse(fp.out);
  CHECK(j["ok"] == true);
  CHECK(j["reports"].size() >= 20);

  auto t = cli({"arith-tarski", "--formula", "(eq v v)", "--json"});
  CHECK(t.code == 0);
  auto tj = nlohmann::json::parse(t.out);
  CHECK(tj["theta_value"] == false);
  CHECK(tj["instance_value"] == true);

  CHECK(cli({"arith-tarski", "--formula", "(eq x1 0)"}).code == 2);

  std::string theory = temp_file("theory.json", R"j(["(eq 0 0)", "(leq (d 5) 3)"])j");
  auto g = cli({"arith-g1", "--theory", theory, "--json"});
  CHECK(g.code == 0);
  CHECK(nlohmann::json::parse(g.out)["ok"] == true);
  std::string unsound = temp_file("unsound.json", R"j(["(eq 0 1)"])j");
  auto u = cli({"arith-g1", "--theory", unsound});
  CHECK(u.code == 2);
  CHECK(u.err.find("UnsoundTheory") != std::string::npos);

  auto w = cli({"arith-weakfp", "--oracle", "finite-theory", "--theory", theory});
  CHECK(w.code == 0);
  CHECK(cli({"arith-weakfp", "--oracle", "pa"}).code == 2);
}

TEST_CASE("cli arithmetic models") {
  std::string uni = temp_file("universe.json", R"j([{"name": "zero", "formula": "(eq v 0)"},
    {"name": "even", "formula": "(exists x1 v (eq (add x1 x1) v))"}])j");
  CHECK(cli({"member", "--model", "arith:n", "--universe", uni, "--pred", "a{zero}", "--str", "r"}).code == 0);
  CHECK(cli({"member", "--model", "arith:n", "--universe", uni, "--pred", "n a{zero}", "--str", "r"}).code == 1);
  CHECK(cli({"fixpoint", "--model", "arith:t", "--universe", uni, "--pred", "a{even}"}).code == 0);
  CHECK(cli({"check", "--model", "arith:n", "--universe", uni, "--prop", "fpt"}).code == 0);
  CHECK(cli({"member", "--model", "arith:n", "--universe", uni, "--pred", "a{missing}", "--str", "r"}).code == 2);
  CHECK(cli({"member", "--model", "arith:q", "--pred", "a{zero}", "--str", "r"}).code == 2);
}

TEST_CASE("cli usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"check", "--model", "gallery:prop4_4"}).code == 2);
  CHECK(cli({"check", "--model", "gallery:prop4_4", "--prop", "nonsense"}).code == 2);
  CHECK(cli({"check", "--model", "gallery:prop4_4", "--prop", "g1"}).code == 2);
  CHECK(cli({"check", "--model", "gallery:prop4_4", "--prop", "fpt", "--pred-len", "0"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}
