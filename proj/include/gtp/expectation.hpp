#pragma once

#include <vector>

#include "gtp/gametree.hpp"
#include "gtp/payoff.hpp"

namespace gtp {

/**
 * Conditional upper expectations Ē(ξ|s) for every situation, by backward induction.
 *
 * For a payoff depending on the first N coordinates, the infimum over superhedging
 * supermartingales is attained by a table that is constant after depth N: its
 * value at a depth-N node is forced to ξ there (the liminf along constant
 * continuations is the node value itself), and above that the cheapest admissible
 * value at s is E_{|s|+1} of the children's values. The resulting table is
 * itself a martingale.
 *
 * The payoff is evaluated on its decision diagram, so cost grows with the number
 * of distinct subtrees rather than with |X|^N.
 */
class UpperExpectation {
 public:
  /// The payoff depth must not exceed the horizon; it is extended to the horizon.
  UpperExpectation(const GameSpec& game, const Payoff& xi);

  const GameSpec& game() const { return game_; }
  const Payoff& payoff() const { return xi_; }
  /// Ē(ξ|s); throws std::out_of_range for |s| > horizon.
  const ExtReal& at(const Situation& s) const;
  const ExtReal& node_value(std::size_t level, Payoff::NodeId id) const { return values_[level][id]; }
  /// Ē(ξ|ω^n) for n = 0..|path|.
  std::vector<ExtReal> along(const Situation& path) const;

 private:
  GameSpec game_;
  Payoff xi_;
  std::vector<std::vector<ExtReal>> values_;
};

ExtReal upper_expectation(const GameSpec& game, const Payoff& xi, const Situation& s = {});
/// -Ē(-ξ|s).
ExtReal lower_expectation(const GameSpec& game, const Payoff& xi, const Situation& s = {});
ExtReal upper_probability(const GameSpec& game, const EventWindow& e, const Situation& s = {});
/// Computed as -Ē(-1_E|s); throws std::logic_error if that differs from 1 - P̄(E^c|s).
ExtReal lower_probability(const GameSpec& game, const EventWindow& e, const Situation& s = {});

/// Dense table of Ē(ξ|s) for |s| <= depth (subject to Limits).
Supermartingale conditional_table(const GameSpec& game, const Payoff& xi, std::size_t depth);

/**
 * inf { S(□) : S >= 0 a supermartingale with sup_n S(ω^n) >= ξ(ω) for all ω }.
 *
 * Solved by a DP over (node, covered level): the running maximum of the capital
 * only matters through which values of ξ it already covers. At each node the
 * least admissible capital is found by scanning the breakpoints {0} ∪ {ξ > 0} in
 * ascending order. Throws std::invalid_argument if ξ takes an infinite value.
 */
ExtReal sup_variant_upper_expectation(const GameSpec& game, const Payoff& xi);

struct DeterminacyGap {
  Situation situation;
  ExtReal upper;
  ExtReal lower;
};

/// Situations of length <= depth where Ē(ξ|s) != E̲(ξ|s); empty means determinate there.
std::vector<DeterminacyGap> determinacy_check(const GameSpec& game, const Payoff& xi, std::size_t depth);

}  // namespace gtp
