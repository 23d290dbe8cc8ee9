#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtp/extreal.hpp"
#include "gtp/functionals.hpp"

namespace gtp {

/// A finite sequence of outcome indices; the empty sequence is the root.
using Situation = std::vector<std::size_t>;

/// Renders a situation with the outcome labels: concatenated when every label is
/// one character, '.'-joined otherwise. The root renders as "".
std::string format_situation(const OutcomeSet& outcomes, const Situation& s);
std::string display_situation(const OutcomeSet& outcomes, const Situation& s);  // root as "□"
Situation parse_situation(const OutcomeSet& outcomes, std::string_view text);
/// Comma-separated labels, e.g. "1,0,1,1".
Situation parse_path(const OutcomeSet& outcomes, std::string_view text);

enum class Relation { equal, strict_prefix, strict_extension, incomparable };

/// How s relates to t: strict_prefix means s is a proper prefix of t.
Relation relation(const Situation& s, const Situation& t);
bool is_prefix(const Situation& s, const Situation& t);     // s ⊆ t, equality allowed
bool is_extension(const Situation& s, const Situation& t);  // t ⊆ s
std::string to_string(Relation r);

/// A set of situations, meant to be pairwise incomparable.
struct Cut {
  std::vector<Situation> members;
  bool valid() const;
  bool contains(const Situation& s) const;
};

/// Size limits for dense tables. The depth limit can be overridden with GTP_MAX_DEPTH.
struct Limits {
  std::size_t max_depth = 14;
  std::size_t max_outcomes = 4;
  std::size_t max_table_nodes = std::size_t{1} << 21;

  static Limits current();
  /// Throws std::length_error when a dense tree of this shape is over the limits.
  void check_dense(std::size_t outcomes, std::size_t depth) const;
};

/// Protocol 1 with a finite horizon: outcome set, one content per depth 1..N.
class GameSpec {
 public:
  GameSpec(OutcomeSet outcomes, ContentPtr shared, std::size_t horizon);
  GameSpec(OutcomeSet outcomes, std::vector<ContentPtr> per_depth);

  const OutcomeSet& outcomes() const { return outcomes_; }
  std::size_t arity() const { return outcomes_.size(); }
  std::size_t horizon() const { return contents_.size(); }
  /// Content used for the move at depth n (1-based); depth n decides ω_n.
  const OuterContent& content(std::size_t n) const;
  const ContentPtr& content_ptr(std::size_t n) const;
  bool depth_independent() const;
  /// The same contents with horizon changed; only valid for depth-independent games.
  GameSpec with_horizon(std::size_t horizon) const;
  /// The first h depths of the game, or a longer depth-independent game.
  GameSpec truncated(std::size_t horizon) const;
  /// The game seen from depth d: contents d+1..N.
  GameSpec suffix(std::size_t depth) const;

 private:
  OutcomeSet outcomes_;
  std::vector<ContentPtr> contents_;
};

GameSpec make_game(OutcomeSet outcomes, const OuterContent& content, std::size_t horizon);

/**
 * Dense table on all situations of length <= depth. Queries past the depth read
 * the value of the length-depth prefix (constant continuation).
 */
class Supermartingale {
 public:
  Supermartingale(std::size_t arity, std::size_t depth, ExtReal fill = ExtReal(0));

  static Supermartingale from_function(std::size_t arity, std::size_t depth,
                                       const std::function<ExtReal(const Situation&)>& fn);

  std::size_t arity() const { return arity_; }
  std::size_t depth() const { return depth_; }
  std::size_t node_count() const { return values_.size(); }

  const ExtReal& at(const Situation& s) const;
  void set(const Situation& s, ExtReal v);

  /// Visits every situation of length <= depth in order of depth, then lexicographically.
  void for_each(const std::function<void(const Situation&, const ExtReal&)>& fn) const;

  friend bool operator==(const Supermartingale&, const Supermartingale&) = default;

 private:
  std::size_t index(const Situation& s) const;

  std::size_t arity_;
  std::size_t depth_;
  std::vector<std::size_t> offsets_;
  std::vector<ExtReal> values_;
};

Supermartingale operator+(const Supermartingale& a, const Supermartingale& b);
Supermartingale scale(const Rational& c, const Supermartingale& s);

/// Capital process with the given multiplier per outcome, starting at `initial`.
Supermartingale multiplier_table(std::size_t arity, std::size_t depth, const std::vector<Rational>& multipliers,
                                 const Rational& initial = 1);

/**
 * Skeptic's strategy: initial capital and a move rule. The rule receives the
 * situation and the current capital and returns the gamble chosen there.
 */
struct Strategy {
  ExtReal initial = ExtReal(1);
  std::function<Gamble(const Situation&, const ExtReal&)> move;
};

/// The strategy whose capital process is the given table.
Strategy strategy_from_table(const Supermartingale& s);

struct BudgetViolation : std::runtime_error {
  BudgetViolation(Situation where, ExtReal required, ExtReal available, const std::string& what)
      : std::runtime_error(what), situation(std::move(where)), required(std::move(required)),
        available(std::move(available)) {}
  Situation situation;
  ExtReal required;   // E_n of the chosen gamble
  ExtReal available;  // capital before the move
};

/// K_0..K_n along the path. Throws BudgetViolation.
std::vector<ExtReal> capital_process(const GameSpec& game, const Strategy& strat, const Situation& path);

/// Tabulates the capital process of a strategy on the whole tree. Throws BudgetViolation.
Supermartingale capital_table(const GameSpec& game, const Strategy& strat);

struct SupermartingaleWitness {
  Situation situation;
  ExtReal lhs;  // E_n(S(s.))
  ExtReal rhs;  // S(s)
};

struct VerifyResult {
  bool ok = true;
  bool martingale = true;
  std::optional<SupermartingaleWitness> witness;  // first violation in depth-then-lexicographic order
};

/// Checks E_{|s|+1}(S(s.)) <= S(s) at every situation of length < horizon.
VerifyResult verify_supermartingale(const GameSpec& game, const Supermartingale& s);

/// S'(tv) = S(sv), +inf off the t-subtree. Requires |s| = |t|.
Supermartingale translate_strategy(const Supermartingale& s, const Situation& from, const Situation& to);

/// S'(st) = S(t), +inf off the s-subtree. Requires depth-independent contents.
Supermartingale shift_strategy(const GameSpec& game, const Supermartingale& s, const Situation& prefix);

/// Follows S until the first situation where S > level, then stays constant below it.
Supermartingale stop_when_covered(const Supermartingale& s, const ExtReal& level);

/// All situations of exactly the given length, lexicographic.
std::vector<Situation> situations_of_length(std::size_t arity, std::size_t length);

}  // namespace gtp
