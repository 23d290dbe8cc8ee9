#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtp/expectation.hpp"
#include "gtp/gametree.hpp"
#include "gtp/payoff.hpp"

namespace gtp {

// Every law below is checked through a finite-horizon surrogate: conditional
// values at a fixed truncation depth and the explicit strategy constructions
// from the proofs. None of these reports certify a limit statement.

struct LevyPathReport {
  Situation path;
  std::vector<ExtReal> conditionals;  // Ē(ξ|ω^n), n = 0..N
  ExtReal payoff;                     // ξ(ω)
  bool terminal_matches = false;      // Ē(ξ|ω^N) == ξ(ω)
  bool martingale_steps = false;      // E_{n+1}(Ē(ξ|ω^n .)) == Ē(ξ|ω^n) along the path
  bool in_event = false;              // indicator payoffs only
  bool reaches_one = false;           // indicator payoffs: some conditional equals 1
};

struct LevyExperimentReport {
  bool indicator = false;
  std::vector<LevyPathReport> paths;
  bool all_terminal_match() const;
};

/// Paths must have the payoff's depth.
LevyExperimentReport levy_experiment(const GameSpec& game, const Payoff& xi, const std::vector<Situation>& paths);

struct KolmogorovReport {
  std::size_t start = 0;
  std::vector<std::pair<Situation, ExtReal>> values;  // Ē(E|s) for every s of length start - 1
  bool invariant = false;
  // Translation of the conditional table from `from` to `to`.
  Situation from;
  Situation to;
  bool witness_verified = false;
};

/// Needs a game horizon >= E.end() and a dense-table-sized tree for the witness.
KolmogorovReport kolmogorov_invariance(const GameSpec& game, const EventWindow& e);

struct ErgodicReport {
  bool precondition = false;
  std::optional<Situation> counterexample;  // continuation w with s.w in E but w not in E
  ExtReal conditional;                      // Ē(E|s)
  ExtReal unconditional;                    // Ē(E)
  bool holds = false;                       // conditional <= unconditional
  bool witness_verified = false;            // shifted conditional table verifies and starts at Ē(E)
};

/// Requires depth-independent contents; continuations range over X^{E.end()}.
ErgodicReport ergodic_bound(const GameSpec& game, const EventWindow& e, const Situation& s);

struct ScriptedGame {
  GameSpec game;
  EventWindow event;
  Situation path;
};

/**
 * Binary game with one measure per depth whose conditional upper probability of
 * the returned event along `path` is targets[0], ..., targets[N-1], 1.
 *
 * Step n puts probability q on path[n+1]. A rising target sends the off-path
 * subtree outside the event (q = M_n / M_{n+1}); a falling target puts it inside
 * (q = (1 - M_n) / (1 - M_{n+1})). Equal targets in the final run use q = 1/2 and
 * an off-path subtree whose membership is ω_N = path_N; other equal steps use q = 1.
 * Throws std::invalid_argument when a target is outside (0, 1).
 */
ScriptedGame scripted_conditional_game(const std::vector<Rational>& targets, const Situation& path);

enum class ZeroOneClass { almost_certain, almost_impossible, fully_unprobabilized, undetermined };
std::string to_string(ZeroOneClass c);

struct ZeroOneRow {
  std::size_t horizon = 0;
  ExtReal lower;
  ExtReal upper;
  ZeroOneClass cls = ZeroOneClass::undetermined;
};

struct ZeroOneReport {
  std::vector<ZeroOneRow> rows;
  ZeroOneClass overall = ZeroOneClass::undetermined;  // the last horizon's class
};

ZeroOneReport zero_one_classify(const GameSpec& game, const EventWindow& e, const std::vector<std::size_t>& horizons);

}  // namespace gtp
