#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gtp/extreal.hpp"

namespace gtp {

/// Ordered, non-empty list of distinct outcome labels.
class OutcomeSet {
 public:
  explicit OutcomeSet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Index of a label; throws std::invalid_argument when absent.
  std::size_t index_of(std::string_view label) const;
  std::optional<std::size_t> find(std::string_view label) const;
  /// True when every label is a single character, so situations print without separators.
  bool compact() const { return compact_; }

  friend bool operator==(const OutcomeSet&, const OutcomeSet&) = default;

 private:
  std::vector<std::string> labels_;
  bool compact_ = true;
};

/// A total map from outcomes (by index) to extended reals.
using Gamble = std::vector<ExtReal>;

enum class AxiomLevel { none, outer_content, superexpectation };

std::string to_string(AxiomLevel level);

/// Probability map over outcome indices; entries non-negative, summing to exactly 1.
using ProbabilityMap = std::vector<Rational>;

/**
 * An evaluatable functional on gambles over a fixed finite outcome set.
 *
 * Built-in kinds are a probability measure (linear expectation), the sup
 * functional, and the upper envelope of finitely many measures; all three are
 * superexpectations. Custom kinds carry a declared level that is a claim only;
 * check_axioms() audits it.
 */
class OuterContent {
 public:
  struct Measure {
    ProbabilityMap probs;
  };
  struct Sup {};
  struct Envelope {
    std::vector<ProbabilityMap> measures;
  };
  struct Table {
    std::map<Gamble, ExtReal> entries;
  };
  struct Function {
    std::string name;
    std::function<ExtReal(std::span<const ExtReal>)> fn;
  };
  using Kind = std::variant<Measure, Sup, Envelope, Table, Function>;

  static OuterContent measure(std::size_t outcomes, ProbabilityMap probs);
  static OuterContent sup(std::size_t outcomes);
  static OuterContent envelope(std::size_t outcomes, std::vector<ProbabilityMap> measures);
  static OuterContent table(std::size_t outcomes, std::map<Gamble, ExtReal> entries, AxiomLevel declared);
  static OuterContent custom(std::size_t outcomes, std::string name,
                             std::function<ExtReal(std::span<const ExtReal>)> fn, AxiomLevel declared);

  /// Throws std::invalid_argument on an outcome-set mismatch, std::out_of_range for a
  /// gamble missing from a table content.
  ExtReal eval(std::span<const ExtReal> f) const;

  std::size_t outcomes() const { return outcomes_; }
  AxiomLevel declared_level() const { return declared_; }
  const Kind& kind() const { return kind_; }
  std::string kind_name() const;
  bool is_builtin() const;

  /// Structural equality for built-in kinds; identity of the callable/table otherwise.
  friend bool operator==(const OuterContent& a, const OuterContent& b);

 private:
  OuterContent(std::size_t outcomes, Kind kind, AxiomLevel declared);

  std::size_t outcomes_ = 0;
  Kind kind_;
  AxiomLevel declared_ = AxiomLevel::superexpectation;
  std::shared_ptr<const void> identity_;  // distinguishes custom instances
};

using ContentPtr = std::shared_ptr<const OuterContent>;

ExtReal eval(const OuterContent& content, std::span<const ExtReal> f);

// ---------------------------------------------------------------------------
// Axiom harness

struct AxiomWitness {
  std::vector<Gamble> gambles;
  std::optional<Rational> scalar;
  ExtReal lhs;
  ExtReal rhs;
  std::string relation;  // the inequality or equality that failed, e.g. "<=", "="
};

struct AxiomResult {
  int axiom = 0;  // 1..5
  std::string name;
  bool passed = true;
  bool finite_surrogate = false;  // Axiom 5 is checked through finite sums only
  std::size_t cases = 0;
  std::size_t skipped = 0;  // cases a table content could not evaluate
  std::optional<AxiomWitness> witness;
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;  // always five entries, axiom 1..5
  AxiomLevel declared = AxiomLevel::none;
  AxiomLevel effective = AxiomLevel::none;

  bool all_passed() const;
  const AxiomResult& axiom(int index) const { return axioms.at(static_cast<std::size_t>(index - 1)); }
};

/// Test material for check_axioms(). Empty vectors are replaced by the default grid.
struct AxiomSuite {
  std::vector<std::pair<Gamble, Gamble>> pairs;  // axioms 1 (when f <= g) and 3
  std::vector<Gamble> gambles;                   // axiom 2 and the Axiom 5 surrogate
  std::vector<Rational> scalars;                 // axiom 2 (c > 0) and axiom 4 (any c)
};

/// Values of the default exhaustive grid: {-inf, -1, 0, 1/2, 1, 2, inf}.
std::vector<ExtReal> default_grid_values();

/// All gambles over `outcomes` with values in the default grid (exhaustive for |X| <= 3,
/// a deterministic sample of 512 gambles otherwise).
std::vector<Gamble> default_grid(std::size_t outcomes);

AxiomReport check_axioms(const OuterContent& content, const AxiomSuite& suite = {});

/**
 * Extends a functional that is only meaningful on bounded-below gambles to all
 * gambles via lim_{a -> -inf} F(max(f, a)).
 *
 * On a finite outcome set the clamp only acts on -inf coordinates. The limit is
 * certified to be -inf when no coordinate is +inf and F(-1_S) < 0 for the set
 * S of those coordinates. Otherwise the clamp level is doubled until two
 * successive values agree.
 */
OuterContent extend_bounded_below(const OuterContent& partial);

}  // namespace gtp
