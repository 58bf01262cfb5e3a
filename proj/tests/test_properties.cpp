#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "smullyan/error.hpp"
#include "smullyan/properties.hpp"
#include "unary_oracle.hpp"

using namespace smullyan;

namespace {

Model make(std::initializer_list<std::string_view> alpha, Closure c,
           std::vector<std::pair<std::string, std::string>> base) {
  ModelSpec spec;
  spec.name = "test";
  spec.alphabet = Alphabet::of_tokens(alpha);
  spec.closure = c;
  for (auto& [p, phi] : base) spec.base.push_back({parse_smstr(p, spec.alphabet), parse_setexpr(phi, spec.alphabet)});
  return Model::build(std::move(spec));
}

EvPeriodicSet eps_of(std::initializer_list<int> prefix, std::initializer_list<int> cycle) {
  std::vector<bool> a, b;
  for (int x : prefix) a.push_back(x != 0);
  for (int x : cycle) b.push_back(x != 0);
  return EvPeriodicSet(a, b);
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

const EvPeriodicSet kOdd = eps_of({}, {0, 1});
const EvPeriodicSet kEven = eps_of({}, {1, 0});

}  // namespace

TEST_CASE("property ids") {
  for (auto p : all_properties()) {
    CHECK(parse_property(property_name(p)) == p);
    CHECK(parse_property(property_label(p)) == p);
  }
  CHECK(code_of([] { parse_property("bogus"); }) == Errc::BadInput);
}

TEST_CASE("eventually periodic sets are canonical") {
  auto e = eps_of({1, 0}, {1, 0, 1, 0});
  CHECK(e.threshold() == 0);
  CHECK(e.period() == 2);
  CHECK(e == kEven);
  CHECK(code_of([] { eps_of({1}, {}); }) == Errc::BadInput);

  auto from_acceptor = to_ev_periodic(compile(parse_setexpr("'#'^{2i+1}", Alphabet{Symbol::sharp()}), Alphabet{Symbol::sharp()}));
  CHECK(from_acceptor == kOdd);
  CHECK(code_of([] {
          auto a = Alphabet::of_tokens({"n", "#"});
          to_ev_periodic(compile(SetExpr::eps(), a));
        }) == Errc::NotUnary);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto s1 = oracle::random_unary(rng);
    auto s2 = oracle::random_unary(rng);
    EvPeriodicSet a(s1.prefix, s1.cycle), b(s2.prefix, s2.cycle);
    bool same = true;
    std::size_t horizon = 5 + 2 * 60 + 2;
    for (std::size_t k = 0; k < horizon; ++k) same = same && oracle::unary_member(s1, k) == oracle::unary_member(s2, k);
    CHECK((a == b) == same);
    for (std::size_t k = 0; k < 40; ++k) CHECK(a.contains(k) == oracle::unary_member(s1, k));
    // no smaller threshold or period describes the same set
    if (a.threshold() > 0) CHECK(a.prefix().back() != a.cycle().back());
    // the descriptor form denotes the same exponents
    auto acc = compile(a.to_setexpr(), Alphabet{Symbol::sharp()});
    CHECK(to_ev_periodic(acc) == a);
  }
}

TEST_CASE("decide_unary on the two exponent-parity models") {
  auto v = decide_unary(kOdd, PropertyId::TTarskiPlus);
  CHECK(v.grade == Grade::Certified);
  CHECK(v.holds);
  auto f = decide_unary(kOdd, PropertyId::FTarski);
  CHECK(f.grade == Grade::Refuted);
  CHECK_FALSE(f.holds);
  REQUIRE(f.witness);
  CHECK(f.witness->to_dsl() == "#");

  CHECK(decide_unary(kEven, PropertyId::TTarskiPlus).holds);
  CHECK(decide_unary(kEven, PropertyId::FTarski).holds);
  CHECK(decide_unary(kEven, PropertyId::FTarskiPlus).grade == Grade::Refuted);

  auto all = decide_unary(eps_of({}, {1}), PropertyId::FPT);
  CHECK(all.grade == Grade::Certified);
  CHECK(all.detail["fixed_point"] == "##");
  CHECK(code_of([] { decide_unary(kOdd, PropertyId::G1); }) == Errc::NotNFree);
}

TEST_CASE("decide_unary agrees with the windowed brute force") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    auto s = oracle::random_unary(rng);
    EvPeriodicSet phi(s.prefix, s.cycle);
    for (auto p : all_properties()) {
      if (needs_n(p)) continue;
      INFO("property ", property_name(p), " phi ", phi.to_json().dump());
      CHECK(decide_unary(phi, p).holds == oracle::unary_brute_force(s, p));
    }
  }
}

TEST_CASE("check dispatches to the exact decider on unary models") {
  auto m = make({"#"}, Closure::None, {{"#", "'#'^{2i+1}"}});
  auto v = check(m, PropertyId::TTarskiPlus, {4, 12});
  CHECK(v.grade == Grade::Certified);
  CHECK(v.detail["route"] == "unary-exact");
}

TEST_CASE("check errors") {
  auto m = make({"r", "#"}, Closure::R, {{"#", "0"}});
  CHECK(code_of([&] { check(m, PropertyId::FPT, {0, 4}); }) == Errc::BudgetZero);
  CHECK(code_of([&] { check(m, PropertyId::FPT, {4, 0}); }) == Errc::BudgetZero);
  CHECK(code_of([&] { check(m, PropertyId::G1, {4, 4}); }) == Errc::PropertyNotApplicable);
}

TEST_CASE("bounded and certified routes") {
  auto empty_r = make({"r", "#"}, Closure::R, {{"#", "0"}});
  auto tt = check(empty_r, PropertyId::TTarski, {4, 10});
  CHECK(tt.grade == Grade::Evidence);
  CHECK_FALSE(tt.holds);
  REQUIRE(tt.witness);
  CHECK(tt.witness->to_dsl() == "#");
  auto fpt = check(empty_r, PropertyId::FPT, {4, 10});
  CHECK(fpt.grade == Grade::Certified);
  CHECK(fpt.holds);

  auto parity = make({"n", "#"}, Closure::N, {{"#", "par(n,even)"}});
  auto pt = check(parity, PropertyId::TTarski, {5, 9});
  CHECK(pt.holds);
  CHECK(pt.grade == Grade::Evidence);
  // each predicate n^{2i}# names a set containing the non-sentence eps
  for (const auto& row : pt.detail["predicates"]) {
    auto pred = parse_smstr(row["pred"].get<std::string>());
    if (pred.count(Symbol::neg()) % 2 == 0) CHECK(row["separator"] == "");
  }

  auto nr = make({"n", "r", "#"}, Closure::NR, {{"#", "'#'* + 'r'"}});
  for (auto p : {PropertyId::TTarski, PropertyId::TTarskiPlus, PropertyId::MG1, PropertyId::G1Plus}) {
    auto v = check(nr, p, {4, 6});
    CHECK(v.grade == Grade::Certified);
    CHECK(v.holds);
  }
}

TEST_CASE("enlarging the budget keeps certified verdicts") {
  std::mt19937_64 rng(5);
  auto nr = Alphabet::of_tokens({"n", "r", "#"});
  for (int round = 0; round < 4; ++round) {
    ModelSpec spec;
    spec.name = "random";
    spec.alphabet = nr;
    spec.closure = round % 2 ? Closure::NR : Closure::R;
    spec.base.push_back({SmStr{Symbol::sharp()}, oracle::random_setexpr(rng, nr, 2)});
    auto m = Model::build(spec);
    for (auto p : {PropertyId::FPT, PropertyId::TTarski, PropertyId::FTarskiPlus}) {
      auto small = check(m, p, {2, 4});
      auto large = check(m, p, {4, 6});
      if (small.exact()) {
        CHECK(large.exact());
        CHECK(large.holds == small.holds);
      }
      if (small.witness && small.grade == Grade::Evidence && !large.holds) CHECK(large.witness);
    }
  }
}

TEST_CASE("equivalence suite on random unary models") {
  std::mt19937_64 rng(99);
  std::vector<EquivalenceSubject> subjects;
  for (int i = 0; i < 500; ++i) {
    auto s = oracle::random_unary(rng);
    subjects.emplace_back(std::pair<std::string, EvPeriodicSet>("u" + std::to_string(i), EvPeriodicSet(s.prefix, s.cycle)));
  }
  auto report = equivalence_suite(subjects, {4, 12});
  CHECK(report.rows.size() == 1500);
  CHECK(report.count(EquivalenceRow::Status::Agree) == 1500);
  auto parity = make({"n", "#"}, Closure::N, {{"#", "par(n,even)"}});
  auto r2 = equivalence_suite({&parity}, {4, 10});
  CHECK(r2.ok());
  bool saw_g1 = false;
  for (const auto& row : r2.rows)
    if (row.left == PropertyId::MG1 && row.right == PropertyId::G1) {
      saw_g1 = true;
      CHECK(row.status == EquivalenceRow::Status::Agree);
    }
  CHECK(saw_g1);
}

TEST_CASE("implication matrix") {
  auto verdict = [](PropertyId p, bool holds, Grade g) {
    Verdict v;
    v.property = p;
    v.holds = holds;
    v.grade = g;
    return v;
  };
  std::map<PropertyId, Verdict> odd{{PropertyId::TTarskiPlus, verdict(PropertyId::TTarskiPlus, true, Grade::Certified)},
                                    {PropertyId::FTarski, verdict(PropertyId::FTarski, false, Grade::Refuted)}};
  CHECK(implication_matrix(odd, false).ok());

  std::map<PropertyId, Verdict> six{{PropertyId::FTarskiPlus, verdict(PropertyId::FTarskiPlus, true, Grade::Certified)},
                                    {PropertyId::TTarski, verdict(PropertyId::TTarski, true, Grade::Evidence)},
                                    {PropertyId::TTarskiPlus, verdict(PropertyId::TTarskiPlus, false, Grade::Evidence)}};
  auto r6 = implication_matrix(six, false);
  CHECK(r6.ok());
  CHECK(r6.tuple == "TT=T TT+=F FT+=T");

  std::map<PropertyId, Verdict> holds_all;
  for (auto p : all_properties()) holds_all.emplace(p, verdict(p, true, Grade::Certified));
  CHECK(implication_matrix(holds_all, true).ok());

  std::map<PropertyId, Verdict> broken{{PropertyId::TTarskiPlus, verdict(PropertyId::TTarskiPlus, true, Grade::Certified)},
                                       {PropertyId::TTarski, verdict(PropertyId::TTarski, false, Grade::Refuted)}};
  CHECK_FALSE(implication_matrix(broken, false).ok());
  broken[PropertyId::TTarski].grade = Grade::Evidence;
  CHECK(implication_matrix(broken, false).ok());
}
