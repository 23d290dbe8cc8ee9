#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gtp/expectation.hpp"
#include "gtp/gametree.hpp"
#include "gtp/payoff.hpp"

namespace gtp {

/**
 * Protocol 2: at depth n Forecaster picks p from P_n, Skeptic bets against E_p,
 * Reality picks x. Prediction symbols are interned in order of first appearance.
 */
class Protocol2Spec {
 public:
  Protocol2Spec(OutcomeSet outcomes, std::vector<std::vector<std::string>> predictions,
                std::map<std::string, ContentPtr> contents);

  const OutcomeSet& outcomes() const { return outcomes_; }
  std::size_t horizon() const { return allowed_.size(); }
  /// All prediction symbols, in order of first appearance.
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t symbol_index(const std::string& symbol) const;
  /// Indices of P_n, n = 1..N.
  const std::vector<std::size_t>& allowed(std::size_t n) const { return allowed_.at(n - 1); }
  const OuterContent& content(std::size_t symbol) const { return *contents_.at(symbol); }
  const ContentPtr& content_ptr(std::size_t symbol) const { return contents_.at(symbol); }

  /// Outcome index in the embedded game for the pair (p, x).
  std::size_t pair_index(std::size_t symbol, std::size_t x) const { return symbol * outcomes_.size() + x; }

 private:
  OutcomeSet outcomes_;
  std::vector<std::string> symbols_;
  std::vector<ContentPtr> contents_;
  std::vector<std::vector<std::size_t>> allowed_;
};

/// Protocol 1 over X' = P × X with E_n(f) = max_{p in P_n} E_p(f(p, .)). Labels are "p|x".
GameSpec embed(const Protocol2Spec& spec);

/// Lifts a payoff on outcome paths to the embedded game: ξ(x) on Ω, 0 for predictions outside P_n.
Payoff lift(const Protocol2Spec& spec, const Payoff& xi);

/// Two-phase backward induction in Protocol 2 itself: V(s) = max_{p in P_n} E_p(V(s .)).
std::vector<ExtReal> native_conditionals(const Protocol2Spec& spec, const Payoff& xi, const Situation& path);
ExtReal native_upper_expectation(const Protocol2Spec& spec, const Payoff& xi, const Situation& s = {});

/// Forecasting system Φ: outcome history -> prediction symbol.
struct ForecastingSystem {
  std::string kind;
  std::function<std::string(const Situation&)> rule;

  static ForecastingSystem constant(std::string symbol);
  static ForecastingSystem table(std::map<Situation, std::string> rules, std::string fallback);
  /// Predicts by_outcome[last outcome], or `initial` at the root.
  static ForecastingSystem last_outcome(std::vector<std::string> by_outcome, std::string initial);

  /// Symbol index of Φ(χ^{n}); throws std::invalid_argument if it is not in P_{n+1}.
  std::size_t predict(const Protocol2Spec& spec, const Situation& history) const;
};

/// Φ(□) χ_1 Φ(χ^1) χ_2 ... as a path in the embedded game.
Situation chi_phi(const Protocol2Spec& spec, const ForecastingSystem& phi, const Situation& chi);

/// Indicator of E_Φ in the embedded game: predictions follow Φ and the outcomes lie in E.
Payoff lifted_event(const Protocol2Spec& spec, const ForecastingSystem& phi, const EventWindow& e);

ExtReal upper_prob_phi(const Protocol2Spec& spec, const ForecastingSystem& phi, const EventWindow& e,
                       const Situation& chi = {});
/// 1 - P̄_Φ(E^c | χ).
ExtReal lower_prob_phi(const Protocol2Spec& spec, const ForecastingSystem& phi, const EventWindow& e,
                       const Situation& chi = {});
/// Backward induction that follows Φ directly: U(χ) = E_{Φ(χ)}(U(χ .)); cross-check for upper_prob_phi.
ExtReal following_upper_prob(const Protocol2Spec& spec, const ForecastingSystem& phi, const EventWindow& e,
                             const Situation& chi = {});

struct MixingRow {
  std::size_t n = 0;
  std::size_t event = 0;
  Situation chi;
  ExtReal conditional;
  ExtReal unconditional;
  ExtReal margin;                  // conditional - unconditional
  bool violated = false;           // margin > δ
  bool trivially_bounded = false;  // 1 - unconditional <= δ, so no χ can violate
};

struct MixingReport {
  std::vector<MixingRow> rows;
  std::optional<ExtReal> worst_margin;
  std::optional<std::size_t> worst_row;
  bool violated = false;
  std::vector<bool> dichotomy;  // per event: P̄_Φ(E) = 0 or P̄_Φ(E) >= 1 - δ
  std::size_t skipped = 0;      // χ-prefixes in the null-exception list
};

/**
 * Checks P̄_Φ(E|χ^n) - P̄_Φ(E) <= δ for each n in `ns`, each event and each
 * χ in X^n outside `exceptions`. Each event's window must start at or after
 * n + gap(n); throws std::invalid_argument otherwise.
 */
MixingReport delta_mixing_check(const Protocol2Spec& spec, const ForecastingSystem& phi, const Rational& delta,
                                const std::map<std::size_t, std::size_t>& gap, const std::vector<EventWindow>& events,
                                const std::vector<std::size_t>& ns, const std::vector<Situation>& exceptions = {});

}  // namespace gtp
