#include "smullyan/gallery.hpp"

#include <algorithm>
#include <sstream>

#include "smullyan/error.hpp"

namespace smullyan {

namespace detail {
struct EmbeddedFile {
  const char* name;
  const char* text;
};
extern const EmbeddedFile kGalleryFiles[];
extern const std::size_t kGalleryFileCount;
}  // namespace detail

using nlohmann::json;

namespace {

const char* find_embedded(const std::string& file) {
  for (std::size_t i = 0; i < detail::kGalleryFileCount; ++i)
    if (file == detail::kGalleryFiles[i].name) return detail::kGalleryFiles[i].text;
  return nullptr;
}

Symbol single_symbol(const std::string& text) {
  std::size_t pos = 0;
  Symbol s = scan_symbol(text, pos);
  if (pos != text.size()) throw Error(Errc::SyntaxError, "not a single symbol: " + text);
  return s;
}

PrefixFamily family_from_json(const json& j) {
  PrefixFamily f;
  f.symbol = single_symbol(j.at("symbol").get<std::string>());
  f.min = j.value("min", std::size_t{0});
  if (j.contains("max") && !j.at("max").is_null()) f.max = j.at("max").get<std::size_t>();
  if (j.contains("parity")) {
    auto p = j.at("parity").get<std::string>();
    if (p != "even" && p != "odd") throw Error(Errc::BadInput, "parity must be even or odd: " + p);
    f.even = p == "even";
  }
  return f;
}

std::map<std::string, GalleryEntry> load_all() {
  std::map<std::string, GalleryEntry> out;
  for (const auto& name : gallery_names()) {
    const char* model = find_embedded(name + ".json");
    const char* expected = find_embedded(name + ".expected.json");
    if (!model || !expected) throw Error(Errc::UnknownEntry, "gallery data missing for " + name);
    out.emplace(name, parse_gallery_entry(json::parse(model), json::parse(expected)));
  }
  return out;
}

const std::map<std::string, GalleryEntry>& registry() {
  static const auto entries = load_all();
  return entries;
}

std::string cell_text(const MatrixCell& c) {
  std::string s = c.verdict.holds ? "T" : "F";
  switch (c.verdict.grade) {
    case Grade::Certified: s += "/cert"; break;
    case Grade::Refuted: s += "/ref"; break;
    case Grade::Evidence: s += "/ev"; break;
  }
  if (!c.matches || !c.witness_matches) s += " *";
  return s;
}

struct SeparationSpec {
  const char* entry;
  std::vector<PropertyId> holding;
  PropertyId failing;
};

const std::vector<SeparationSpec>& separation_specs() {
  using P = PropertyId;
  static const std::vector<SeparationSpec> specs{
      {"prop4_3", {P::FTarskiPlus}, P::TTarski},
      {"prop4_4", {P::TTarskiPlus}, P::FTarski},
      {"prop4_5", {P::FTarski, P::TTarski}, P::FTarskiPlus},
      {"prop4_5", {P::FTarski, P::TTarski}, P::TTarskiPlus},
      {"prop4_6", {P::FTarskiPlus, P::TTarski}, P::TTarskiPlus},
      {"prop4_7", {P::TTarskiPlus, P::FTarski}, P::FTarskiPlus},
      {"prop4_9", {P::FTarski}, P::TTarski},
      {"prop4_10", {P::TTarski}, P::FTarski},
  };
  return specs;
}

}  // namespace

bool PrefixFamily::matches(const SmStr& pred, const SmStr& base) const {
  if (pred.size() < base.size()) return false;
  std::size_t k = pred.size() - base.size();
  if (pred.substr(k) != base) return false;
  if (!symbol) return k == 0;
  for (std::size_t i = 0; i < k; ++i)
    if (pred[i] != *symbol) return false;
  if (k < min || (max && k > *max)) return false;
  if (even && (k % 2 == 0) != *even) return false;
  return true;
}

std::string PrefixFamily::describe(const SmStr& base) const {
  if (!symbol) return base.to_dsl();
  std::string s = symbol->to_dsl() + "^k " + base.to_dsl() + " with k>=" + std::to_string(min);
  if (max) s += ", k<=" + std::to_string(*max);
  if (even) s += *even ? ", k even" : ", k odd";
  return s;
}

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names{"prop4_3", "prop4_3_alt", "prop4_4", "prop4_5",
                                              "prop4_6", "prop4_7",     "prop4_9", "prop4_10"};
  return names;
}

const GalleryEntry& gallery_entry(const std::string& name) {
  const auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw Error(Errc::UnknownEntry, "no gallery entry named '" + name + "'");
  return it->second;
}

Model load(const std::string& name) { return Model::build(gallery_entry(name).spec); }

GalleryEntry parse_gallery_entry(const json& model, const json& expected) {
  try {
    GalleryEntry e;
    e.spec = spec_from_json(model);
    e.name = e.spec.name;
    e.description = model.value("description", std::string());
    const auto& alpha = e.spec.alphabet;
    for (const auto& cf : model.at("closed_forms")) {
      ClosedForm c{parse_smstr(cf.at("base").get<std::string>(), alpha), {}, parse_setexpr(cf.at("phi").get<std::string>(), alpha)};
      if (cf.contains("prefix")) c.family = family_from_json(cf.at("prefix"));
      e.closed_forms.push_back(std::move(c));
    }
    if (model.contains("true_form")) e.true_form = parse_setexpr(model.at("true_form").get<std::string>(), alpha);
    if (model.contains("false_form")) e.false_form = parse_setexpr(model.at("false_form").get<std::string>(), alpha);
    for (const auto& [k, v] : expected.at("expected").items()) e.expected[parse_property(k)] = v.get<bool>();
    if (expected.contains("witnesses"))
      for (const auto& [k, v] : expected.at("witnesses").items())
        e.expected_witnesses[parse_property(k)] = parse_smstr(v.get<std::string>(), alpha);
    return e;
  } catch (const json::exception& ex) {
    throw Error(Errc::BadInput, std::string("malformed gallery entry: ") + ex.what());
  }
}

json ClosedFormReport::to_json() const {
  json j{{"entry", entry}, {"predicates", predicates}, {"comparisons", comparisons}, {"ok", ok()}};
  j["mismatches"] = json::array();
  for (const auto& m : mismatches)
    j["mismatches"].push_back({{"kind", m.what},
                               {"pred", m.pred.to_dsl()},
                               {"string", m.string.to_dsl()},
                               {"recursive", m.recursive},
                               {"closed", m.closed}});
  return j;
}

ClosedFormReport verify_closed_forms(const GalleryEntry& entry, std::size_t pred_len, std::size_t str_len) {
  ClosedFormReport report;
  report.entry = entry.name;
  auto m = Model::build(entry.spec);
  const auto& alpha = entry.spec.alphabet;
  std::vector<LangAcceptor> forms;
  for (const auto& cf : entry.closed_forms) forms.push_back(compile(cf.phi, alpha));
  auto strings = all_strings(alpha, str_len);

  for (const auto& h : all_strings(alpha, pred_len)) {
    if (!m.is_predicate(h)) continue;
    ++report.predicates;
    std::optional<std::size_t> form;
    for (std::size_t i = 0; i < entry.closed_forms.size() && !form; ++i)
      if (entry.closed_forms[i].family.matches(h, entry.closed_forms[i].base)) form = i;
    if (!form) {
      report.mismatches.push_back({"coverage", h, {}, true, false});
      continue;
    }
    for (const auto& x : strings) {
      ++report.comparisons;
      bool rec = m.phi_contains(h, x);
      bool closed = forms[*form].accepts(x);
      if (rec != closed) report.mismatches.push_back({"phi", h, x, rec, closed});
    }
  }

  auto compare_truth = [&](const std::optional<SetExpr>& form, bool want_true, const char* kind) {
    if (!form) return;
    auto acc = compile(*form, alpha);
    for (const auto& x : strings) {
      ++report.comparisons;
      bool rec = sentence_class(m, x) != SentenceClass::NotSentence && holds(m, x) == want_true;
      bool closed = acc.accepts(x);
      if (rec != closed) report.mismatches.push_back({kind, {}, x, rec, closed});
    }
  };
  compare_truth(entry.true_form, true, "true");
  compare_truth(entry.false_form, false, "false");
  return report;
}

bool MatrixRow::ok() const {
  for (const auto& [p, c] : cells)
    if (!c.matches || c.certified_contradiction || !c.witness_matches) return false;
  return implications.ok();
}

std::string Separation::label() const {
  std::string s;
  for (std::size_t i = 0; i < holding.size(); ++i) s += (i ? " & " : "") + property_label(holding[i]);
  return s + " =/=> " + property_label(failing);
}

bool VerdictMatrix::ok() const {
  for (const auto& r : rows)
    if (!r.ok()) return false;
  for (const auto& s : separations)
    if (!s.witnessed) return false;
  return true;
}

json VerdictMatrix::to_json() const {
  json j{{"budget", {{"pred_len", budget.pred_len}, {"str_len", budget.str_len}}}, {"ok", ok()}};
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json row{{"entry", r.entry}, {"ok", r.ok()}, {"implications", r.implications.to_json()}};
    row["cells"] = json::object();
    for (const auto& [p, c] : r.cells) {
      json cell = verdict_to_json(c.verdict);
      cell["expected"] = c.expected ? json(*c.expected) : json(nullptr);
      cell["matches"] = c.matches;
      cell["certified_contradiction"] = c.certified_contradiction;
      cell["witness_matches"] = c.witness_matches;
      row["cells"][property_name(p)] = std::move(cell);
    }
    j["rows"].push_back(std::move(row));
  }
  j["separations"] = json::array();
  for (const auto& s : separations)
    j["separations"].push_back({{"entry", s.entry}, {"separation", s.label()}, {"witnessed", s.witnessed}});
  return j;
}

std::string VerdictMatrix::to_text() const {
  std::vector<PropertyId> cols;
  for (auto p : all_properties())
    for (const auto& r : rows)
      if (r.cells.count(p)) {
        cols.push_back(p);
        break;
      }
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"entry"};
  for (auto p : cols) header.push_back(property_label(p));
  header.push_back("ok");
  table.push_back(header);
  for (const auto& r : rows) {
    std::vector<std::string> line{r.entry};
    for (auto p : cols) {
      auto it = r.cells.find(p);
      line.push_back(it == r.cells.end() ? "-" : cell_text(it->second));
    }
    line.push_back(r.ok() ? "yes" : "NO");
    table.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::ostringstream out;
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << line[i];
      if (i + 1 < line.size()) out << std::string(width[i] - line[i].size() + 2, ' ');
    }
    out << '\n';
  }
  out << "\nbudget: pred-len " << budget.pred_len << ", str-len " << budget.str_len << "\n";
  out << "separations:\n";
  for (const auto& s : separations)
    out << "  " << (s.witnessed ? "ok   " : "MISS ") << s.entry << ": " << s.label() << '\n';
  for (const auto& r : rows)
    for (const auto& [p, c] : r.cells)
      if (!c.matches || !c.witness_matches)
        out << "mismatch: " << r.entry << ' ' << property_label(p) << " expected "
            << (c.expected ? (*c.expected ? "T" : "F") : "?") << (c.certified_contradiction ? " (certified contradiction)" : "")
            << (c.witness_matches ? "" : " (witness differs)") << '\n';
  out << (ok() ? "all expected verdicts reproduced\n" : "expected verdicts NOT reproduced\n");
  return out.str();
}

VerdictMatrix verdict_matrix(Budget budget, const std::vector<PropertyId>& only, const std::vector<std::string>& entries) {
  VerdictMatrix matrix;
  matrix.budget = budget;
  const auto& names = entries.empty() ? gallery_names() : entries;
  for (const auto& name : names) {
    const auto& entry = gallery_entry(name);
    auto m = Model::build(entry.spec);
    MatrixRow row;
    row.entry = name;
    std::map<PropertyId, Verdict> verdicts;
    for (auto p : all_properties()) {
      auto exp = entry.expected.find(p);
      if (exp == entry.expected.end()) continue;
      if (!only.empty() && std::find(only.begin(), only.end(), p) == only.end()) continue;
      MatrixCell cell;
      cell.verdict = check(m, p, budget);
      cell.expected = exp->second;
      cell.matches = cell.verdict.holds == exp->second;
      cell.certified_contradiction = !cell.matches && cell.verdict.exact();
      auto w = entry.expected_witnesses.find(p);
      if (w != entry.expected_witnesses.end() && !cell.verdict.holds)
        cell.witness_matches = cell.verdict.witness && *cell.verdict.witness == w->second;
      verdicts.emplace(p, cell.verdict);
      row.cells.emplace(p, std::move(cell));
    }
    row.implications = implication_matrix(verdicts, has_n(entry.spec.closure));
    matrix.rows.push_back(std::move(row));
  }
  for (const auto& spec : separation_specs()) {
    Separation s{spec.entry, spec.holding, spec.failing, false};
    auto r = std::find_if(matrix.rows.begin(), matrix.rows.end(), [&](const MatrixRow& row) { return row.entry == spec.entry; });
    if (r == matrix.rows.end()) continue;
    bool computed = r->cells.count(spec.failing) > 0;
    for (auto p : spec.holding) computed = computed && r->cells.count(p) > 0;
    if (!computed) continue;
    auto verdict_is = [&](PropertyId p, bool want) {
      auto c = r->cells.find(p);
      return c != r->cells.end() && c->second.verdict.holds == want;
    };
    s.witnessed = verdict_is(spec.failing, false);
    for (auto p : spec.holding) s.witnessed = s.witnessed && verdict_is(p, true);
    matrix.separations.push_back(std::move(s));
  }
  return matrix;
}

}  // namespace smullyan
