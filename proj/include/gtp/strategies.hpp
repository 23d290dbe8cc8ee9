#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gtp/expectation.hpp"
#include "gtp/gametree.hpp"
#include "gtp/payoff.hpp"

namespace gtp {

/**
 * Enumeration of all intervals (a, b) with 0 <= a < b rational.
 *
 * A rational p/q in lowest terms has size p + q; an interval has size
 * size(a) + size(b). Intervals are listed by ascending size, ties broken by a
 * and then b. Indices start at 1: (0,1), (0,1/2), (0,2), (0,1/3), (0,3), (1/2,1), ...
 */
class RationalIntervalEnum {
 public:
  std::pair<Rational, Rational> at(std::size_t index);
  /// Position of (a, b) in the enumeration.
  std::size_t index_of(const Rational& a, const Rational& b);

 private:
  void grow();

  std::size_t size_ = 2;  // largest interval size generated so far
  std::vector<std::pair<Rational, Rational>> list_;
};

/// σ_k and τ_k cuts, k = 1, 2, ... (sigma[0] is σ_1).
struct CutTrace {
  std::vector<Cut> sigma;
  std::vector<Cut> tau;
};

struct DoobPhase {
  bool in_subtree = false;
  std::size_t k = 0;      // number of σ cuts passed, this node included
  bool frozen = false;    // in [σ_k, τ_k)
  bool sigma = false;     // node belongs to σ_k
  bool tau = false;       // node belongs to τ_k
};

struct DoobResult {
  Supermartingale table;
  Supermartingale normalized_base;  // S' with S'(s0) = 1
  CutTrace trace;
  Rational a;
  Rational b;
  Situation origin;

  /// Phase of s (the prefix of length depth when s is deeper).
  const DoobPhase& phase(const Situation& s) const;

  std::map<Situation, DoobPhase> phases;
};

/**
 * Upcrossing supermartingale for the interval (a, b) started at s0.
 *
 * The base is normalized to S' with S'(s0) = 1 (divided by S(s0) when it is
 * non-negative, otherwise shifted by C = min - 1 first). From s0 the result
 * copies the increments of S' while active, freezes at the first node where
 * S' > b, resumes at the first later node where S' < a, and so on. Off the
 * s0-subtree the value is +inf.
 */
DoobResult doob_upcrossing(const GameSpec& game, const Supermartingale& base, const Rational& a, const Rational& b,
                           const Situation& origin = {});

enum class Slack { none, dyadic };

/// Shift C used for ξ' = ξ - C: 0 when ξ >= 0, else (min ξ) - 1.
Rational levy_shift(const Payoff& xi);

struct LevyNode {
  ExtReal capital;
  ExtReal conditional;     // Ē(ξ'|s)
  bool riding = false;     // after the node's transitions
  bool entered = false;
  bool exited = false;
  std::size_t exits = 0;   // exits so far, this node included
  Rational bound = 1;      // product lower bound guaranteed at exits
};

struct LevyResult {
  Supermartingale table;
  Rational shift;
  std::map<Situation, LevyNode> nodes;
};

/**
 * Multiplicative strategy: wait until Ē(ξ'|s) < a, then ride the witness
 * martingale S_t = Ē(ξ'|.) (plus a/2 if it is 0 at entry; plus 2^-(|t|+1) in
 * dyadic mode) scaled by capital/S_t(t) until S_t > b, then wait again. At the
 * k-th exit the capital is at least (b/a)^k, or the product of
 * b/(a + 2^-|t_j|) over the entry nodes t_j in dyadic mode.
 */
LevyResult levy_strategy(const GameSpec& game, const Payoff& xi, const Rational& a, const Rational& b,
                         Slack slack = Slack::none);

/// The same strategy evaluated along one path only; works at any horizon.
std::vector<LevyNode> levy_capital_along(const GameSpec& game, const Payoff& xi, const Rational& a,
                                         const Rational& b, Slack slack, const Situation& path);

struct MixtureResult {
  Supermartingale table;
  std::size_t terms = 0;
  ExtReal truncation_bound;  // 2^-terms times the bound on omitted start values
};

/// T = sum_{i <= terms} 2^-i S^i. All parts must share arity and depth.
MixtureResult mixture(const std::vector<Supermartingale>& parts, std::size_t max_terms,
                      const ExtReal& omitted_start_bound = ExtReal(1));

struct DoobMixture {
  MixtureResult direct;
  Supermartingale incremental;  // T(sx) = T(s) + W(s) (S'(sx) - S'(s)), W the active weight
  bool agree = false;
  std::vector<DoobResult> parts;
};

/// Mixture of the upcrossing supermartingales for the first `terms` enumerated intervals.
DoobMixture doob_mixture(const GameSpec& game, const Supermartingale& base, std::size_t terms,
                         const Situation& origin = {});

}  // namespace gtp
