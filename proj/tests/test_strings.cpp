#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "smullyan/acceptor.hpp"
#include "smullyan/error.hpp"
#include "smullyan/setexpr.hpp"

using namespace smullyan;

namespace {

Alphabet sharp_only() { return Alphabet::of_tokens({"#"}); }
Alphabet n_sharp() { return Alphabet::of_tokens({"n", "#"}); }
Alphabet r_sharp() { return Alphabet::of_tokens({"r", "#"}); }

LangAcceptor acc(std::string_view text, const Alphabet& a) { return compile(parse_setexpr(text, a), a); }

std::vector<std::string> dsl(const std::vector<SmStr>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.to_dsl());
  return out;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::BadInput;
}

}  // namespace

TEST_CASE("symbols and strings") {
  auto a = Symbol::indexed(BigInt("123456789012345678901234567890"));
  CHECK(a.to_dsl() == "a{123456789012345678901234567890}");
  CHECK(a == Symbol::indexed(BigInt("123456789012345678901234567890")));
  CHECK(a != Symbol::plain("a"));
  CHECK(parse_smstr("r♯r♯") == parse_smstr("r#r#"));
  CHECK(parse_smstr(" n a{12} # ").size() == 3);
  CHECK(parse_smstr("").empty());
  SmStr x = parse_smstr("nr");
  CHECK(SmStr::repeat(x, 0).empty());
  CHECK(SmStr::repeat(x, 3) == SmStr::repeat(x, 2) + x);
  CHECK((x + SmStr{}) == x);
  CHECK(code_of([] { parse_smstr("nx#", n_sharp()); }) == Errc::UnknownSymbol);
  CHECK(code_of([] { parse_smstr("a{12"); }) == Errc::SyntaxError);
  CHECK(code_of([] { Alphabet::of_tokens({"n", "n"}); }) == Errc::BadInput);
}

TEST_CASE("descriptor parsing") {
  auto odd = parse_setexpr("'#' . ('#' '#')*", sharp_only());
  CHECK(equal_up_to(compile(odd, sharp_only()), compile(SetExpr::lin_pow(SetExpr::lit(parse_smstr("#")), 2, 1), sharp_only()), 20)
            .equal);
  CHECK(parse_setexpr("eps", sharp_only()).kind() == SetExpr::Kind::Eps);
  auto par = parse_setexpr("par(n,even)", n_sharp());
  REQUIRE(par.kind() == SetExpr::Kind::CountParity);
  CHECK(par.counted() == Symbol::neg());
  CHECK(par.parity() == Parity::Even);
  CHECK(parse_setexpr("0", sharp_only()).kind() == SetExpr::Kind::Empty);
  auto lp = parse_setexpr("'#'^{2i+1}", sharp_only());
  REQUIRE(lp.kind() == SetExpr::Kind::LinPow);
  CHECK(lp.step() == 2);
  CHECK(lp.offset() == 1);

  // precedence: star binds tighter than concat, concat tighter than union
  auto e = parse_setexpr("'n' + 'n' '#'*", n_sharp());
  REQUIRE(e.kind() == SetExpr::Kind::Union);
  CHECK(e.right().kind() == SetExpr::Kind::Concat);
  CHECK(e.right().right().kind() == SetExpr::Kind::Star);

  CHECK(code_of([] { parse_setexpr("'#' +", sharp_only()); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse_setexpr("''", sharp_only()); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse_setexpr("('#'", sharp_only()); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse_setexpr("'r'", sharp_only()); }) == Errc::UnknownSymbol);
  try {
    parse_setexpr("'#' ) ", sharp_only());
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("position 4") != std::string::npos);
  }
}

TEST_CASE("compile and accept") {
  auto a = sharp_only();
  CHECK(compile(SetExpr::star(SetExpr::lit(parse_smstr("##"))), a).accepts(SmStr{}));
  CHECK(acc("'#'* . 'r#r#'", r_sharp()).accepts(parse_smstr("r#r#")));
  CHECK(acc("'#'^{2i+0}", a).accepts(SmStr{}));
  CHECK_FALSE(acc("'#'^{2i+1}", a).accepts(SmStr{}));
  CHECK(acc("par(n,odd) . '#' . 'n'*", n_sharp()).accepts(parse_smstr("n#n")));
  CHECK(code_of([&] { acc("'#'", a).accepts(parse_smstr("r")); }) == Errc::UnknownSymbol);
  CHECK(code_of([] { compile(SetExpr::eps(), Alphabet({Symbol::sharp()}, true)); }) == Errc::InfiniteAlphabet);

  auto odd = compile(SetExpr::count_parity(Symbol::neg(), Parity::Odd), n_sharp());
  for (const auto& x : oracle::strings_upto(n_sharp(), 8)) CHECK(odd.accepts(x) == (x.count(Symbol::neg()) % 2 == 1));
}

TEST_CASE("enumerate") {
  CHECK(enumerate(compile(SetExpr::empty(), sharp_only()), 5).empty());
  CHECK(dsl(enumerate(acc("'#'^{2i+1}", sharp_only()), 4)) == std::vector<std::string>{"#", "###"});
  CHECK(dsl(enumerate(acc("'#'* + '#'* . 'r##'", r_sharp()), 3)) ==
        std::vector<std::string>{"", "#", "##", "r##", "###"});
}

TEST_CASE("equal_up_to") {
  auto a = sharp_only();
  auto odd = acc("'#'^{2i+1}", a);
  auto even = acc("'#'^{2i+0}", a);
  CHECK(equal_up_to(odd, odd, 12).equal);
  auto r = equal_up_to(odd, even, 2);
  REQUIRE_FALSE(r.equal);
  CHECK(r.witness->empty());
  auto r2 = equal_up_to(acc("'#'* + 'r#'", r_sharp()), acc("'#'* + 'r##'", r_sharp()), 5);
  REQUIRE_FALSE(r2.equal);
  CHECK(r2.witness->to_dsl() == "r#");
}

TEST_CASE("acceptor agrees with the structural denotation oracle") {
  std::mt19937_64 rng(0x5eed);
  std::vector<Alphabet> alphabets{sharp_only(), n_sharp(), Alphabet::of_tokens({"n", "r", "#"})};
  for (int round = 0; round < 150; ++round) {
    const auto& alpha = alphabets[static_cast<std::size_t>(round) % alphabets.size()];
    SetExpr e = oracle::random_setexpr(rng, alpha, 3);
    auto a = compile(e, alpha);
    std::size_t max_len = alpha.size() == 3 ? 6 : 8;
    for (const auto& x : oracle::strings_upto(alpha, max_len)) {
      INFO(e.to_dsl(), " on '", x.to_dsl(), "'");
      REQUIRE(a.accepts(x) == oracle::denotes(e, x));
    }
    // printed form reparses to the same language
    CHECK(equal_up_to(a, compile(parse_setexpr(e.to_dsl(), alpha), alpha), 8).equal);
  }
}

TEST_CASE("bounded regular-algebra laws") {
  std::mt19937_64 rng(42);
  auto alpha = n_sharp();
  for (int round = 0; round < 60; ++round) {
    SetExpr a = oracle::random_setexpr(rng, alpha, 2);
    SetExpr b = oracle::random_setexpr(rng, alpha, 2);
    CHECK(equal_up_to(compile(SetExpr::union_of(a, b), alpha), compile(SetExpr::union_of(b, a), alpha), 10).equal);
    CHECK(equal_up_to(compile(SetExpr::concat(a, SetExpr::eps()), alpha), compile(a, alpha), 10).equal);

    auto listed = enumerate(compile(a, alpha), 7);
    for (std::size_t i = 1; i < listed.size(); ++i) CHECK(length_lex_less(listed[i - 1], listed[i], alpha));
    std::size_t accepted = 0;
    auto ca = compile(a, alpha);
    for (const auto& x : oracle::strings_upto(alpha, 7)) accepted += ca.accepts(x);
    CHECK(accepted == listed.size());
  }
}
