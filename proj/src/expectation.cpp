#include "gtp/expectation.hpp"

#include <algorithm>
#include <optional>

namespace gtp {

namespace {

Payoff fit_to_game(const GameSpec& game, const Payoff& xi) {
  if (xi.arity() != game.arity()) throw std::invalid_argument("payoff and game have different outcome sets");
  if (xi.depth() > game.horizon()) {
    throw std::invalid_argument("payoff depth " + std::to_string(xi.depth()) + " exceeds the horizon " +
                                std::to_string(game.horizon()));
  }
  return xi.extended(game.horizon());
}

}  // namespace

UpperExpectation::UpperExpectation(const GameSpec& game, const Payoff& xi)
    : game_(game), xi_(fit_to_game(game, xi)), values_(game.horizon() + 1) {
  const std::size_t n = game_.horizon();
  const std::size_t k = game_.arity();
  values_[n].reserve(xi_.level_size(n));
  for (std::size_t id = 0; id < xi_.level_size(n); ++id) values_[n].push_back(xi_.leaf(static_cast<Payoff::NodeId>(id)));
  Gamble children(k);
  for (std::size_t level = n; level-- > 0;) {
    const OuterContent& content = game_.content(level + 1);
    auto& here = values_[level];
    here.reserve(xi_.level_size(level));
    for (std::size_t id = 0; id < xi_.level_size(level); ++id) {
      for (std::size_t x = 0; x < k; ++x) {
        children[x] = values_[level + 1][xi_.child(level, static_cast<Payoff::NodeId>(id), x)];
      }
      here.push_back(content.eval(children));
    }
  }
}

const ExtReal& UpperExpectation::at(const Situation& s) const {
  if (s.size() > game_.horizon()) throw std::out_of_range("situation outside the game tree");
  return values_[s.size()][xi_.node_at(s)];
}

std::vector<ExtReal> UpperExpectation::along(const Situation& path) const {
  if (path.size() > game_.horizon()) throw std::out_of_range("path longer than the horizon");
  std::vector<ExtReal> out{values_[0][0]};
  Payoff::NodeId id = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= game_.arity()) throw std::out_of_range("outcome index out of range");
    id = xi_.child(i, id, path[i]);
    out.push_back(values_[i + 1][id]);
  }
  return out;
}

ExtReal upper_expectation(const GameSpec& game, const Payoff& xi, const Situation& s) {
  return UpperExpectation(game, xi).at(s);
}

ExtReal lower_expectation(const GameSpec& game, const Payoff& xi, const Situation& s) {
  return -upper_expectation(game, xi.negated(), s);
}

ExtReal upper_probability(const GameSpec& game, const EventWindow& e, const Situation& s) {
  return upper_expectation(game, e.indicator(), s);
}

ExtReal lower_probability(const GameSpec& game, const EventWindow& e, const Situation& s) {
  ExtReal direct = lower_expectation(game, e.indicator(), s);
  ExtReal via_complement = ExtReal(1) - upper_probability(game, e.complement(), s);
  if (direct != via_complement) {
    throw std::logic_error("lower probability " + direct.str() + " differs from 1 - upper probability of the complement " +
                           via_complement.str());
  }
  return direct;
}

Supermartingale conditional_table(const GameSpec& game, const Payoff& xi, std::size_t depth) {
  UpperExpectation solver(game, xi);
  if (depth > game.horizon()) throw std::invalid_argument("table depth exceeds the horizon");
  return Supermartingale::from_function(game.arity(), depth, [&](const Situation& s) { return solver.at(s); });
}

// ---------------------------------------------------------------------------

namespace {

class SupVariant {
 public:
  SupVariant(const GameSpec& game, const Payoff& xi) : game_(game), xi_(xi) {
    for (const auto& v : xi_.distinct_values()) {
      if (v > ExtReal(0)) values_.push_back(v);
    }
    memo_.resize(xi_.depth() + 1);
    for (std::size_t l = 0; l <= xi_.depth(); ++l) memo_[l].resize(xi_.level_size(l) * (values_.size() + 1));
  }

  // covered = how many of the positive values of ξ the running maximum already reaches.
  ExtReal value(std::size_t level, Payoff::NodeId id, std::size_t covered) {
    auto& slot = memo_[level][id * (values_.size() + 1) + covered];
    if (slot) return *slot;
    ExtReal result;
    if (level == xi_.depth()) {
      const ExtReal& v = xi_.leaf(id);
      bool met = v <= ExtReal(0) || (covered > 0 && values_[covered - 1] >= v);
      result = met ? ExtReal(0) : v;
    } else {
      result = scan(level, id, covered);
    }
    slot = result;
    return result;
  }

 private:
  ExtReal scan(std::size_t level, Payoff::NodeId id, std::size_t covered) {
    const OuterContent& content = game_.content(level + 1);
    const std::size_t k = xi_.arity();
    Gamble children(k);
    // Breakpoint i is 0 for i = 0 and values_[i-1] otherwise; capital in
    // [B_i, B_{i+1}) covers the first i values.
    for (std::size_t i = 0; i <= values_.size(); ++i) {
      const std::size_t now = std::max(covered, i);
      for (std::size_t x = 0; x < k; ++x) children[x] = value(level + 1, xi_.child(level, id, x), now);
      ExtReal need = content.eval(children);
      ExtReal lower = i == 0 ? ExtReal(0) : values_[i - 1];
      ExtReal candidate = std::max(lower, need);
      if (i == values_.size() || candidate < values_[i]) return candidate;
    }
    return ExtReal::infinity();  // not reached
  }

  const GameSpec& game_;
  const Payoff& xi_;
  std::vector<ExtReal> values_;
  std::vector<std::vector<std::optional<ExtReal>>> memo_;
};

}  // namespace

ExtReal sup_variant_upper_expectation(const GameSpec& game, const Payoff& xi) {
  Payoff fitted = fit_to_game(game, xi);
  if (!fitted.finite()) throw std::invalid_argument("the sup variant needs a finite-valued payoff");
  SupVariant dp(game, fitted);
  return dp.value(0, 0, 0);
}

std::vector<DeterminacyGap> determinacy_check(const GameSpec& game, const Payoff& xi, std::size_t depth) {
  if (depth > game.horizon()) throw std::invalid_argument("depth exceeds the horizon");
  Limits::current().check_dense(game.arity(), depth);
  UpperExpectation upper(game, xi);
  UpperExpectation negated(game, xi.negated());
  std::vector<DeterminacyGap> gaps;
  for (std::size_t d = 0; d <= depth; ++d) {
    for (const auto& s : situations_of_length(game.arity(), d)) {
      ExtReal hi = upper.at(s), lo = -negated.at(s);
      if (hi != lo) gaps.push_back({s, hi, lo});
    }
  }
  return gaps;
}

}  // namespace gtp
