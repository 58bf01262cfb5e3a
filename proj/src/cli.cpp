#include "smullyan/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "smullyan/arith/codec.hpp"
#include "smullyan/arith/eval.hpp"
#include "smullyan/arith/models.hpp"
#include "smullyan/error.hpp"
#include "smullyan/gallery.hpp"
#include "smullyan/properties.hpp"

namespace smullyan {

using nlohmann::json;
using namespace arith;

namespace {

struct Options {
  std::string model;
  std::string prop;
  std::string pred;
  std::string str;
  std::optional<std::size_t> pred_len;
  std::optional<std::size_t> str_len;
  bool json = false;
  bool all_gallery = false;
  std::string oracle = "true-in-n";
  std::string theory;
  std::string universe;
  std::string code;
  std::string formula;
};

struct Loaded {
  std::unique_ptr<SmullyanModel> model;
  std::optional<IndexUniverse> universe;
};

Error usage(const std::string& message) { return Error(Errc::BadInput, message); }

IndexUniverse load_universe(const Options& o) {
  return o.universe.empty() ? IndexUniverse::builtin() : IndexUniverse::load(o.universe);
}

std::vector<Formula> load_theory_opt(const Options& o) {
  return o.theory.empty() ? std::vector<Formula>{} : load_theory(o.theory);
}

bool is_arith_uri(const std::string& uri) { return uri.rfind("arith:", 0) == 0; }

Loaded load_model_uri(const Options& o) {
  if (o.model.empty()) throw usage("--model is required");
  Loaded l;
  if (o.model.rfind("gallery:", 0) == 0) {
    l.model = std::make_unique<Model>(load(o.model.substr(8)));
  } else if (o.model == "arith:n") {
    l.universe = load_universe(o);
    l.model = std::make_unique<ArithModel>(ArithModel::model_n(*l.universe));
  } else if (o.model == "arith:t") {
    l.universe = load_universe(o);
    l.model = std::make_unique<ArithModel>(ArithModel::model_t(make_oracle(o.oracle, load_theory_opt(o)), *l.universe));
  } else if (is_arith_uri(o.model)) {
    throw usage("unknown arithmetic model '" + o.model + "' (expected arith:n or arith:t)");
  } else {
    l.model = std::make_unique<Model>(load_model_file(o.model));
  }
  return l;
}

// a{name} refers to a universe entry by name.
std::string resolve_names(const std::string& text, const std::optional<IndexUniverse>& u) {
  if (!u) return text;
  static const std::regex named(R"(a\{([A-Za-z_][A-Za-z0-9_-]*)\})");
  std::string out;
  auto begin = std::sregex_iterator(text.begin(), text.end(), named);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    out += text.substr(last, it->position() - last);
    out += "a{" + u->by_name((*it)[1].str()).index.str() + "}";
    last = it->position() + it->length();
  }
  return out + text.substr(last);
}

SmStr parse_arg(const std::string& text, const Loaded& l) {
  return parse_smstr(resolve_names(text, l.universe), l.model->alphabet());
}

Budget budget_of(const Options& o, const Loaded* l = nullptr) {
  // arithmetic alphabets are wide, so their default window is small
  bool arith = l && l->universe.has_value();
  Budget b;
  b.pred_len = o.pred_len.value_or(arith ? 2 : 4);
  b.str_len = o.str_len.value_or(arith ? 2 : 12);
  return b;
}

std::vector<SmStr> strings_upto(const SmullyanModel& m, std::size_t max_len) {
  auto syms = m.enumeration_symbols();
  std::vector<SmStr> out{SmStr{}}, layer{SmStr{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<SmStr> next;
    for (const auto& x : layer)
      for (const auto& s : syms) next.push_back(x + SmStr{s});
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string hex(const Bytes& bytes) {
  std::ostringstream os;
  for (auto b : bytes) os << std::hex << std::setw(2) << std::setfill('0') << int(b);
  return os.str();
}

BigInt parse_code(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw usage("--code expects a decimal natural, got '" + text + "'");
  return BigInt(text);
}

// The indices a diagonal command runs on: --code, --formula, or the universe.
std::vector<std::pair<std::string, BigInt>> target_indices(const Options& o) {
  if (!o.code.empty()) {
    BigInt i = parse_code(o.code);
    if (!is_v_formula(i)) throw usage(o.code + " is not the code of a v-formula");
    return {{o.code, i}};
  }
  if (!o.formula.empty()) {
    Formula f = parse_formula(o.formula);
    BigInt i = encode(f);
    if (!is_v_formula(i)) throw usage("'" + o.formula + "' has free variables other than v");
    return {{o.formula, i}};
  }
  std::vector<std::pair<std::string, BigInt>> out;
  IndexUniverse u = load_universe(o);
  for (const auto& e : u.entries()) out.emplace_back(e.name, e.index);
  return out;
}

std::string verdict_text(const Verdict& v) {
  std::string s = v.model + " " + property_name(v.property) + ": " + (v.holds ? "holds" : "fails") + " (" +
                  grade_name(v.grade);
  if (v.bounds) s += ", pred-len " + std::to_string(v.bounds->pred_len) + ", str-len " + std::to_string(v.bounds->str_len);
  s += ")";
  if (v.witness) s += "\n  witness: " + v.witness->display();
  return s;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int eval_cmd() {
    auto l = load_model_uri(o_);
    SmStr s = parse_arg(o_.str, l);
    bool h = holds(*l.model, s);
    if (o_.json)
      emit({{"model", l.model->name()}, {"sentence", s.to_dsl()}, {"class", sentence_class_name(sentence_class(*l.model, s))},
            {"holds", h}});
    else
      out_ << (h ? "true" : "false") << "\n";
    return h ? 0 : 1;
  }

  int member_cmd() {
    auto l = load_model_uri(o_);
    SmStr h = parse_arg(o_.pred, l), x = parse_arg(o_.str, l);
    bool in = l.model->phi_contains(h, x);
    if (o_.json)
      emit({{"model", l.model->name()}, {"pred", h.to_dsl()}, {"string", x.to_dsl()}, {"member", in}});
    else
      out_ << (in ? "true" : "false") << "\n";
    return in ? 0 : 1;
  }

  int fixpoint_cmd() {
    auto l = load_model_uri(o_);
    SmStr h = parse_arg(o_.pred, l);
    auto cert = fixed_point(*l.model, h);
    bool ok = cert.holds_sentence == cert.holds_prefixed;
    if (o_.json) {
      emit({{"model", l.model->name()}, {"pred", h.to_dsl()}, {"sentence", cert.sentence.to_dsl()},
            {"holds_sentence", cert.holds_sentence}, {"holds_prefixed", cert.holds_prefixed}, {"ok", ok}});
    } else {
      out_ << cert.sentence.to_dsl() << "\n";
      out_ << "  M |= S   " << yes_no(cert.holds_sentence) << "\n";
      out_ << "  M |= HS  " << yes_no(cert.holds_prefixed) << "\n";
      out_ << "  certificate " << (ok ? "ok" : "FAILED") << "\n";
    }
    return ok ? 0 : 1;
  }

  int check_cmd() {
    auto l = load_model_uri(o_);
    if (o_.prop.empty()) throw usage("--prop is required");
    Verdict v = check(*l.model, parse_property(o_.prop), budget_of(o_, &l));
    if (o_.json)
      emit(verdict_to_json(v));
    else
      out_ << verdict_text(v) << "\n";
    return v.holds ? 0 : 1;
  }

  int matrix_cmd() {
    std::vector<std::string> entries;
    if (!o_.all_gallery && !o_.model.empty()) {
      if (o_.model.rfind("gallery:", 0) != 0) throw usage("matrix works on gallery entries (gallery:NAME)");
      entries.push_back(o_.model.substr(8));
      gallery_entry(entries.back());
    }
    std::vector<PropertyId> props;
    std::stringstream ss(o_.prop);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) props.push_back(parse_property(item));
    auto m = verdict_matrix(budget_of(o_), props, entries);
    if (o_.json)
      emit(m.to_json());
    else
      out_ << m.to_text();
    return m.ok() ? 0 : 1;
  }

  int gallery_verify_cmd() {
    std::vector<std::string> names;
    if (o_.model.empty() || o_.all_gallery) {
      names = gallery_names();
    } else {
      if (o_.model.rfind("gallery:", 0) != 0) throw usage("gallery-verify works on gallery entries (gallery:NAME)");
      names.push_back(o_.model.substr(8));
    }
    Budget b = budget_of(o_);
    json reports = json::array();
    bool all = true;
    for (const auto& n : names) {
      auto r = verify_closed_forms(gallery_entry(n), b.pred_len, b.str_len);
      all = all && r.ok();
      if (o_.json) {
        reports.push_back(r.to_json());
        continue;
      }
      out_ << std::left << std::setw(14) << n << (r.ok() ? "ok" : "MISMATCH") << "  " << r.comparisons
           << " comparisons over " << r.predicates << " predicates\n";
      for (const auto& mm : r.mismatches)
        out_ << "  " << mm.what << " pred=" << mm.pred.display() << " string=" << mm.string.display()
             << " recursive=" << yes_no(mm.recursive) << " closed=" << yes_no(mm.closed) << "\n";
    }
    if (o_.json) emit({{"ok", all}, {"entries", reports}});
    return all ? 0 : 1;
  }

  int enumerate_cmd() {
    auto l = load_model_uri(o_);
    SmStr h = parse_arg(o_.pred, l);
    std::size_t len = o_.str_len.value_or(6);
    std::vector<SmStr> members;
    for (const auto& x : strings_upto(*l.model, len))
      if (l.model->phi_contains(h, x)) members.push_back(x);
    if (o_.json) {
      json list = json::array();
      for (const auto& x : members) list.push_back(x.to_dsl());
      emit({{"model", l.model->name()}, {"pred", h.to_dsl()}, {"max_len", len}, {"members", list}});
    } else {
      for (const auto& x : members) out_ << x.display() << "\n";
    }
    return 0;
  }

  int encode_cmd() {
    if (o_.formula.empty()) throw usage("--formula is required");
    Expr e = parse_expr(o_.formula);
    BigInt c = encode(e);
    std::string bytes = std::visit([](const auto& x) { return hex(serialize(x)); }, e);
    if (o_.json)
      emit({{"sexpr", to_sexpr(e)}, {"code", c.str()}, {"digits", c.str().size()}, {"bytes", bytes},
            {"v_formula", is_v_formula(c)}});
    else
      out_ << c.str() << "\n";
    return 0;
  }

  int decode_cmd() {
    if (o_.code.empty()) throw usage("--code is required");
    BigInt c = parse_code(o_.code);
    auto e = decode(c);
    if (o_.json) {
      json j = {{"code", c.str()}};
      if (e) {
        j["kind"] = std::holds_alternative<Formula>(*e) ? "formula" : "term";
        j["sexpr"] = to_sexpr(*e);
        j["v_formula"] = is_v_formula(c);
      } else {
        j["kind"] = nullptr;
      }
      emit(j);
    } else {
      out_ << (e ? to_sexpr(*e) : "undecodable") << "\n";
    }
    return e ? 0 : 1;
  }

  int diag_cmd() {
    BigInt i;
    if (!o_.code.empty()) i = parse_code(o_.code);
    else if (!o_.formula.empty()) i = encode(parse_formula(o_.formula));
    else throw usage("--code or --formula is required");
    BigInt d = diag(i);
    if (o_.json) {
      json j = {{"index", i.str()}, {"in_gamma", is_v_formula(i)}, {"diag", d.str()}};
      if (auto f = decode_formula(d); f && d != 0) j["sexpr"] = to_sexpr(*f);
      emit(j);
    } else {
      out_ << d.str() << "\n";
    }
    return 0;
  }

  int diagonal_cmd(const std::function<DiagonalReport(const BigInt&)>& build) {
    auto targets = target_indices(o_);
    json reports = json::array();
    bool all = true;
    for (const auto& [label, index] : targets) {
      DiagonalReport r = build(index);
      all = all && r.ok;
      if (o_.json) {
        json j = r.to_json();
        j["label"] = label;
        reports.push_back(j);
      } else if (targets.size() == 1) {
        out_ << "construction  " << r.construction << "\n";
        out_ << "sentence      " << r.sentence.to_dsl() << "\n";
        out_ << "theta         " << to_sexpr(r.theta) << "\n";
        out_ << "code          " << r.code.str() << "\n";
        out_ << "theta         " << yes_no(r.theta_value) << "\n";
        out_ << "instance      " << yes_no(r.instance_value) << "\n";
        out_ << (r.ok ? "ok" : "FAILED") << "\n";
      } else {
        out_ << std::left << std::setw(22) << label << " theta=" << std::setw(6) << yes_no(r.theta_value)
             << "instance=" << std::setw(6) << yes_no(r.instance_value) << "digits=" << std::setw(5)
             << r.code.str().size() << (r.ok ? "ok" : "FAILED") << "\n";
      }
    }
    if (o_.json) emit(targets.size() == 1 ? reports[0] : json{{"ok", all}, {"reports", reports}});
    return all ? 0 : 1;
  }

  int g1_cmd() {
    auto r = g1_demo(load_theory_opt(o_));
    if (o_.json) {
      emit(r.to_json());
    } else {
      out_ << "provability   " << to_sexpr(r.provability) << "\n";
      out_ << "sentence      " << r.sentence.to_dsl() << "\n";
      out_ << "theta         " << to_sexpr(r.theta) << "\n";
      out_ << "true          " << yes_no(r.theta_true) << "\n";
      out_ << "provable      " << yes_no(r.theta_provable) << "\n";
      out_ << "refutable     " << yes_no(r.negation_provable) << "\n";
      out_ << (r.ok() ? "ok" : "FAILED") << "\n";
    }
    return r.ok() ? 0 : 1;
  }

  int weakfp_cmd() {
    auto oracle = make_oracle(o_.oracle, load_theory_opt(o_));
    return diagonal_cmd([&](const BigInt& i) { return weak_fixed_point(*oracle, i); });
  }

 private:
  static Expr parse_expr(const std::string& text) {
    try {
      return parse_formula(text);
    } catch (const Error& formula_error) {
      if (formula_error.code() != Errc::SyntaxError) throw;
      try {
        return parse_term(text);
      } catch (const Error&) {
        throw formula_error;
      }
    }
  }

  void emit(const json& j) { out_ << j.dump(2) << "\n"; }

  const Options& o_;
  std::ostream& out_;
};

struct Flags {
  bool model = false, prop = false, pred = false, str = false, budget = false, oracle = false, theory = false,
       universe = false, code = false, formula = false, all_gallery = false;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Options& o, Flags f) {
  CLI::App* c = app.add_subcommand(name, help);
  c->add_flag("--json", o.json, "machine-readable output");
  if (f.model) c->add_option("--model", o.model, "gallery:NAME, arith:n, arith:t or a model JSON file");
  if (f.prop) c->add_option("--prop", o.prop, "property id, e.g. t-tarski-plus");
  if (f.pred) c->add_option("--pred", o.pred, "predicate string");
  if (f.str) c->add_option("--str", o.str, "sentence or string");
  if (f.budget) {
    c->add_option("--pred-len", o.pred_len, "predicate length bound")->check(CLI::PositiveNumber);
    c->add_option("--str-len", o.str_len, "string length bound")->check(CLI::NonNegativeNumber);
  }
  if (f.oracle) c->add_option("--oracle", o.oracle, "true-in-n or finite-theory");
  if (f.theory) c->add_option("--theory", o.theory, "JSON list of closed formulas");
  if (f.universe) c->add_option("--universe", o.universe, "JSON list of v-formulas");
  if (f.code) c->add_option("--code", o.code, "decimal Goedel code");
  if (f.formula) c->add_option("--formula", o.formula, "s-expression");
  if (f.all_gallery) c->add_flag("--all-gallery", o.all_gallery, "every gallery entry");
  return c;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Smullyan models, their properties, and the arithmetic diagonal constructions", "smullyan"};
  app.require_subcommand(1);

  const Flags model_flags{.model = true, .oracle = true, .theory = true, .universe = true};
  Flags eval_f = model_flags;
  eval_f.str = true;
  Flags member_f = model_flags;
  member_f.pred = member_f.str = true;
  Flags fix_f = model_flags;
  fix_f.pred = true;
  Flags check_f = model_flags;
  check_f.prop = check_f.budget = true;
  Flags enum_f = model_flags;
  enum_f.pred = enum_f.budget = true;
  const Flags matrix_f{.model = true, .prop = true, .budget = true, .all_gallery = true};
  const Flags verify_f{.model = true, .budget = true, .all_gallery = true};
  const Flags formula_f{.formula = true};
  const Flags code_f{.code = true};
  const Flags diag_f{.code = true, .formula = true};
  const Flags demo_f{.universe = true, .code = true, .formula = true};
  const Flags g1_f{.theory = true};
  const Flags weak_f{.oracle = true, .theory = true, .universe = true, .code = true, .formula = true};

  Runner run(o, out);
  std::vector<std::pair<CLI::App*, std::function<int()>>> commands = {
      {add_command(app, "eval", "decide M |= S for --str", o, eval_f), [&] { return run.eval_cmd(); }},
      {add_command(app, "member", "decide whether --str is in Phi(--pred)", o, member_f), [&] { return run.member_cmd(); }},
      {add_command(app, "fixpoint", "build and certify the fixed point r H r H", o, fix_f), [&] { return run.fixpoint_cmd(); }},
      {add_command(app, "check", "check one property", o, check_f), [&] { return run.check_cmd(); }},
      {add_command(app, "matrix", "gallery verdict matrix against the expected verdicts", o, matrix_f),
       [&] { return run.matrix_cmd(); }},
      {add_command(app, "gallery-verify", "compare gallery closed forms with the recursive semantics", o, verify_f),
       [&] { return run.gallery_verify_cmd(); }},
      {add_command(app, "enumerate", "list Phi(--pred) up to --str-len (default 6)", o, enum_f),
       [&] { return run.enumerate_cmd(); }},
      {add_command(app, "arith-encode", "Goedel code of a formula or term", o, formula_f), [&] { return run.encode_cmd(); }},
      {add_command(app, "arith-decode", "formula or term with a given code", o, code_f), [&] { return run.decode_cmd(); }},
      {add_command(app, "arith-diag", "the diagonal function d", o, diag_f), [&] { return run.diag_cmd(); }},
      {add_command(app, "arith-fixpoint", "arithmetic fixed point J(r a r a)", o, demo_f),
       [&] { return run.diagonal_cmd(arith_fixed_point); }},
      {add_command(app, "arith-tarski", "truth-definition refuter J(r n a r n a)", o, demo_f),
       [&] { return run.diagonal_cmd(tarski_refuter); }},
      {add_command(app, "arith-g1", "undecided true sentence of a finite sound theory", o, g1_f),
       [&] { return run.g1_cmd(); }},
      {add_command(app, "arith-weakfp", "fixed point up to oracle judgement", o, weak_f), [&] { return run.weakfp_cmd(); }},
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    for (auto& [cmd, fn] : commands)
      if (cmd->parsed()) return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace smullyan
