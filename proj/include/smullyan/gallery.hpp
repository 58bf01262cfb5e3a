#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "smullyan/model.hpp"
#include "smullyan/properties.hpp"

namespace smullyan {

// Predicates sym^k ++ base with min <= k <= max and, if set, k of the given
// parity. Without a family symbol only the base itself matches.
struct PrefixFamily {
  std::optional<Symbol> symbol;
  std::size_t min = 0;
  std::optional<std::size_t> max;
  std::optional<bool> even;

  bool matches(const SmStr& pred, const SmStr& base) const;
  std::string describe(const SmStr& base) const;
};

struct ClosedForm {
  SmStr base;
  PrefixFamily family;
  SetExpr phi;
};

struct GalleryEntry {
  std::string name;
  std::string description;
  ModelSpec spec;
  std::vector<ClosedForm> closed_forms;
  std::optional<SetExpr> true_form;
  std::optional<SetExpr> false_form;
  std::map<PropertyId, bool> expected;
  std::map<PropertyId, SmStr> expected_witnesses;
};

const std::vector<std::string>& gallery_names();
// Throws UnknownEntry.
const GalleryEntry& gallery_entry(const std::string& name);
Model load(const std::string& name);

GalleryEntry parse_gallery_entry(const nlohmann::json& model, const nlohmann::json& expected);

struct ClosedFormMismatch {
  std::string what;  // "phi", "true", "false" or "coverage"
  SmStr pred;
  SmStr string;
  bool recursive = false;
  bool closed = false;
};

struct ClosedFormReport {
  std::string entry;
  std::size_t predicates = 0;
  std::size_t comparisons = 0;
  std::vector<ClosedFormMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
  nlohmann::json to_json() const;
};

ClosedFormReport verify_closed_forms(const GalleryEntry& entry, std::size_t pred_len, std::size_t str_len);

struct MatrixCell {
  Verdict verdict;
  std::optional<bool> expected;
  bool matches = true;
  bool certified_contradiction = false;
  bool witness_matches = true;
};

struct MatrixRow {
  std::string entry;
  std::map<PropertyId, MatrixCell> cells;
  ImplicationReport implications;
  bool ok() const;
};

struct Separation {
  std::string entry;
  std::vector<PropertyId> holding;
  PropertyId failing;
  bool witnessed = false;
  std::string label() const;
};

struct VerdictMatrix {
  Budget budget;
  std::vector<MatrixRow> rows;
  std::vector<Separation> separations;
  bool ok() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Every expected property of every entry, or only those in `only` when it is
// non-empty.
VerdictMatrix verdict_matrix(Budget budget, const std::vector<PropertyId>& only = {},
                             const std::vector<std::string>& entries = {});

}  // namespace smullyan
