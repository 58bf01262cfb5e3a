#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "smullyan/model.hpp"

namespace smullyan {

enum class PropertyId { FPT, TTarski, FTarski, TTarskiPlus, FTarskiPlus, MG1, MG1Plus, G1, G1Plus };

// "fpt", "t-tarski", "f-tarski", "t-tarski-plus", "f-tarski-plus", "mg1",
// "mg1-plus", "g1", "g1-plus"
std::string property_name(PropertyId p);
// Short column label used in tables: FPT, TT, FT, TT+, FT+, mG1, mG1+, G1, G1+.
std::string property_label(PropertyId p);
PropertyId parse_property(std::string_view text);
const std::vector<PropertyId>& all_properties();
bool needs_n(PropertyId p);

// Certified: proven to hold. Refuted: proven to fail, witness attached.
// Evidence: checked up to the recorded bounds only; `holds` gives the
// direction the evidence points.
enum class Grade { Certified, Refuted, Evidence };
std::string grade_name(Grade g);

struct Budget {
  std::size_t pred_len = 4;
  std::size_t str_len = 12;
};

struct Verdict {
  std::string model;
  PropertyId property = PropertyId::FPT;
  Grade grade = Grade::Evidence;
  bool holds = false;
  std::optional<SmStr> witness;  // the offending predicate when the property fails
  std::optional<Budget> bounds;
  nlohmann::json detail = nlohmann::json::object();

  bool exact() const { return grade != Grade::Evidence; }
};

nlohmann::json verdict_to_json(const Verdict& v);

// Throws BudgetZero, PropertyNotApplicable (G1 variants without n), and
// CertFailure if a theorem-backed certificate does not verify.
Verdict check(const SmullyanModel& m, PropertyId p, Budget budget);

// A set of naturals that is periodic from some threshold on.
class EvPeriodicSet {
 public:
  // Canonicalises to minimal threshold, then minimal period. Throws BadInput
  // on an empty cycle.
  EvPeriodicSet(std::vector<bool> prefix, std::vector<bool> cycle);

  std::size_t threshold() const noexcept { return prefix_.size(); }
  std::size_t period() const noexcept { return cycle_.size(); }
  const std::vector<bool>& prefix() const noexcept { return prefix_; }
  const std::vector<bool>& cycle() const noexcept { return cycle_; }
  bool contains(std::size_t k) const;

  bool operator==(const EvPeriodicSet&) const = default;

  // Descriptor over {#} denoting { #^k : k in the set }.
  SetExpr to_setexpr() const;
  nlohmann::json to_json() const;

 private:
  std::vector<bool> prefix_;
  std::vector<bool> cycle_;
};

// Exponent set of a one-symbol acceptor. Throws NotUnary otherwise.
EvPeriodicSet to_ev_periodic(const LangAcceptor& a);

// The exponent set of Phi(#) when m is the one-predicate model over {#}
// without closure; nullopt for every other shape.
std::optional<EvPeriodicSet> unary_phi(const SmullyanModel& m);

// Exact decision for the one-predicate model over {#} whose Phi(#) has the
// given exponent set. Throws NotNFree for the G1 variants.
Verdict decide_unary(const EvPeriodicSet& phi, PropertyId p, std::string model_name = "unary");

struct EquivalenceRow {
  std::string model;
  PropertyId left;
  PropertyId right;
  Verdict left_verdict;
  Verdict right_verdict;
  enum class Status { Agree, Inconclusive, Fail } status = Status::Agree;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  std::size_t count(EquivalenceRow::Status s) const;
  bool ok() const { return count(EquivalenceRow::Status::Fail) == 0; }
  nlohmann::json to_json() const;
};

using EquivalenceSubject = std::variant<const SmullyanModel*, std::pair<std::string, EvPeriodicSet>>;

// Checks every equivalent pair that applies to each subject's closure mode.
EquivalenceReport equivalence_suite(const std::vector<EquivalenceSubject>& subjects, Budget budget);

struct ImplicationRow {
  PropertyId from;
  PropertyId to;
  bool n_only = false;
  enum class Status { Consistent, Inconclusive, Violated } status = Status::Consistent;
};

struct ImplicationReport {
  std::vector<ImplicationRow> rows;
  std::string tuple;  // e.g. "FPT=T TT=F FT=T TT+=F FT+=T"
  bool ok() const;
  nlohmann::json to_json() const;
};

// The arrows between the nine properties, including both directions of each
// equivalence. Arrows marked n_only apply to n-closed models.
const std::vector<ImplicationRow>& implication_arrows();

ImplicationReport implication_matrix(const std::map<PropertyId, Verdict>& verdicts, bool n_closed);

}  // namespace smullyan
