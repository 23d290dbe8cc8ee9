#include "gtp/strategies.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace gtp {

namespace {

std::size_t rational_size(const Rational& q) {
  return q.get_num().get_ui() + q.get_den().get_ui();
}

Rational power_of_half(std::size_t n) {
  Rational r(1);
  mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), n);
  return r;
}

// Product of two non-negative extended reals with 0 * inf = 0.
ExtReal mul_nonneg(const ExtReal& x, const ExtReal& y) {
  if (x == ExtReal(0) || y == ExtReal(0)) return ExtReal(0);
  if (!x.is_finite()) return x;
  return scale(x.rational(), y);
}

}  // namespace

void RationalIntervalEnum::grow() {
  ++size_;
  const std::size_t total = size_;
  std::vector<Rational> small;
  for (std::size_t m = 1; m < total; ++m) {
    for (std::size_t q = 1; q <= m; ++q) {
      std::size_t p = m - q;
      if (std::gcd(p, q) != 1) continue;
      small.emplace_back(static_cast<unsigned long>(p), static_cast<unsigned long>(q));
    }
  }
  std::vector<std::pair<Rational, Rational>> fresh;
  for (const auto& a : small) {
    for (const auto& b : small) {
      if (a < b && rational_size(a) + rational_size(b) == total) fresh.emplace_back(a, b);
    }
  }
  std::sort(fresh.begin(), fresh.end());
  list_.insert(list_.end(), fresh.begin(), fresh.end());
}

std::pair<Rational, Rational> RationalIntervalEnum::at(std::size_t index) {
  if (index == 0) throw std::out_of_range("interval indices start at 1");
  while (list_.size() < index) grow();
  return list_[index - 1];
}

std::size_t RationalIntervalEnum::index_of(const Rational& a, const Rational& b) {
  if (sgn(a) < 0 || a >= b) throw std::invalid_argument("interval needs 0 <= a < b");
  const std::size_t target = rational_size(a) + rational_size(b);
  while (size_ < target) grow();
  auto it = std::find(list_.begin(), list_.end(), std::make_pair(a, b));
  return static_cast<std::size_t>(it - list_.begin()) + 1;
}

// ---------------------------------------------------------------------------

const DoobPhase& DoobResult::phase(const Situation& s) const {
  Situation key = s;
  if (key.size() > table.depth()) key.resize(table.depth());
  return phases.at(key);
}

namespace {

void check_interval(const Rational& a, const Rational& b) {
  if (sgn(a) < 0 || a >= b) throw std::invalid_argument("interval needs 0 <= a < b");
}

Supermartingale normalize_base(const Supermartingale& base, const Situation& origin) {
  const ExtReal& start = base.at(origin);
  if (!start.is_finite()) throw std::invalid_argument("base must be finite at the starting situation");
  bool non_negative = true;
  std::optional<Rational> lowest;
  base.for_each([&](const Situation& s, const ExtReal& v) {
    if (!is_prefix(origin, s)) return;
    if (v.is_neg_inf()) throw std::invalid_argument("base must be bounded below");
    if (v < ExtReal(0)) non_negative = false;
    if (v.is_finite() && (!lowest || v.rational() < *lowest)) lowest = v.rational();
  });
  Rational shift = 0;
  if (!non_negative || sgn(start.rational()) == 0) shift = *lowest - 1;
  const Rational denom = start.rational() - shift;
  return Supermartingale::from_function(base.arity(), base.depth(), [&](const Situation& s) {
    if (!is_prefix(origin, s)) return ExtReal::infinity();
    return scale(Rational(1 / denom), base.at(s) + ExtReal(Rational(-shift)));
  });
}

}  // namespace

DoobResult doob_upcrossing(const GameSpec& game, const Supermartingale& base, const Rational& a, const Rational& b,
                           const Situation& origin) {
  check_interval(a, b);
  if (base.arity() != game.arity()) throw std::invalid_argument("base and game have different outcome sets");
  if (origin.size() > base.depth()) throw std::invalid_argument("starting situation deeper than the base table");
  if (!verify_supermartingale(game, base).ok) throw std::invalid_argument("base is not a supermartingale");

  Supermartingale normalized = normalize_base(base, origin);
  DoobResult out{Supermartingale(base.arity(), base.depth(), ExtReal::infinity()), normalized, {}, a, b, origin, {}};
  const ExtReal lo(a), hi(b);

  base.for_each([&](const Situation& s, const ExtReal&) {
    if (!is_prefix(origin, s)) out.phases.emplace(s, DoobPhase{});
  });

  std::function<void(Situation&, ExtReal, std::size_t, bool)> walk = [&](Situation& u, ExtReal value, std::size_t k,
                                                                         bool frozen) {
    const ExtReal& here = normalized.at(u);
    DoobPhase ph;
    ph.in_subtree = true;
    if (!frozen && here > hi) {
      frozen = true;
      ++k;
      ph.sigma = true;
      if (out.trace.sigma.size() < k) out.trace.sigma.resize(k);
      out.trace.sigma[k - 1].members.push_back(u);
    } else if (frozen && here < lo) {
      frozen = false;
      ph.tau = true;
      if (out.trace.tau.size() < k) out.trace.tau.resize(k);
      out.trace.tau[k - 1].members.push_back(u);
    }
    ph.k = k;
    ph.frozen = frozen;
    out.table.set(u, value);
    out.phases[u] = ph;
    if (u.size() == base.depth()) return;
    for (std::size_t x = 0; x < base.arity(); ++x) {
      u.push_back(x);
      ExtReal next = frozen ? value : value + (normalized.at(u) - here);
      walk(u, next, k, frozen);
      u.pop_back();
    }
  };
  Situation start = origin;
  walk(start, ExtReal(1), 0, false);
  return out;
}

// ---------------------------------------------------------------------------

Rational levy_shift(const Payoff& xi) {
  ExtReal lowest = xi.min_value();
  if (lowest.is_neg_inf()) throw std::invalid_argument("payoff must be bounded below");
  if (lowest >= ExtReal(0)) return Rational(0);
  return lowest.rational() - 1;
}

namespace {

struct LevyState {
  LevyNode node;
  ExtReal entry_capital;
  Rational entry_witness;
  Rational offset;
  Rational entry_factor;
};

class LevyStepper {
 public:
  LevyStepper(Rational a, Rational b, Slack slack) : a_(std::move(a)), b_(std::move(b)), slack_(slack) {
    check_interval(a_, b_);
  }

  LevyState root(const ExtReal& conditional) const {
    LevyState st;
    st.node.capital = ExtReal(1);
    transitions(st, conditional, 0);
    return st;
  }

  LevyState child(const LevyState& parent, const ExtReal& conditional, std::size_t depth) const {
    LevyState st = parent;
    st.node.entered = st.node.exited = false;
    if (parent.node.riding) {
      ExtReal witness = conditional + ExtReal(parent.offset);
      st.node.capital = mul_nonneg(parent.entry_capital, scale(Rational(1 / parent.entry_witness), witness));
    }
    transitions(st, conditional, depth);
    return st;
  }

 private:
  void exit(LevyState& st) const {
    st.node.riding = false;
    st.node.exited = true;
    ++st.node.exits;
    st.node.bound *= st.entry_factor;
  }

  void transitions(LevyState& st, const ExtReal& conditional, std::size_t depth) const {
    st.node.conditional = conditional;
    if (st.node.riding && conditional + ExtReal(st.offset) > ExtReal(b_)) exit(st);
    if (!st.node.riding && sgn(a_) > 0 && conditional < ExtReal(a_)) {
      if (slack_ == Slack::dyadic) {
        st.offset = power_of_half(depth + 1);
        st.entry_factor = b_ / (a_ + power_of_half(depth));
      } else {
        st.offset = conditional == ExtReal(0) ? Rational(a_ / 2) : Rational(0);
        st.entry_factor = b_ / a_;
      }
      st.entry_witness = conditional.rational() + st.offset;
      st.entry_capital = st.node.capital;
      st.node.riding = true;
      st.node.entered = true;
      if (!st.node.exited && ExtReal(st.entry_witness) > ExtReal(b_)) exit(st);
    }
  }

  Rational a_;
  Rational b_;
  Slack slack_;
};

Payoff shifted_payoff(const Payoff& xi, const Rational& shift) {
  if (sgn(shift) == 0) return xi;
  return xi.map([&](const ExtReal& v) { return v + ExtReal(Rational(-shift)); });
}

}  // namespace

LevyResult levy_strategy(const GameSpec& game, const Payoff& xi, const Rational& a, const Rational& b, Slack slack) {
  LevyStepper stepper(a, b, slack);
  LevyResult out{Supermartingale(game.arity(), game.horizon()), levy_shift(xi), {}};
  UpperExpectation cond(game, shifted_payoff(xi, out.shift));

  std::function<void(Situation&, const LevyState&)> walk = [&](Situation& u, const LevyState& st) {
    out.table.set(u, st.node.capital);
    out.nodes.emplace(u, st.node);
    if (u.size() == game.horizon()) return;
    for (std::size_t x = 0; x < game.arity(); ++x) {
      u.push_back(x);
      walk(u, stepper.child(st, cond.at(u), u.size()));
      u.pop_back();
    }
  };
  Situation root;
  walk(root, stepper.root(cond.at(root)));
  return out;
}

std::vector<LevyNode> levy_capital_along(const GameSpec& game, const Payoff& xi, const Rational& a, const Rational& b,
                                         Slack slack, const Situation& path) {
  LevyStepper stepper(a, b, slack);
  UpperExpectation cond(game, shifted_payoff(xi, levy_shift(xi)));
  std::vector<ExtReal> values = cond.along(path);
  std::vector<LevyNode> out;
  LevyState st = stepper.root(values[0]);
  out.push_back(st.node);
  for (std::size_t n = 1; n < values.size(); ++n) {
    st = stepper.child(st, values[n], n);
    out.push_back(st.node);
  }
  return out;
}

// ---------------------------------------------------------------------------

MixtureResult mixture(const std::vector<Supermartingale>& parts, std::size_t max_terms,
                      const ExtReal& omitted_start_bound) {
  if (parts.empty()) throw std::invalid_argument("mixture needs at least one part");
  for (const auto& p : parts) {
    if (p.arity() != parts.front().arity() || p.depth() != parts.front().depth()) {
      throw std::invalid_argument("mixture parts come from different games");
    }
  }
  const std::size_t terms = std::min(max_terms, parts.size());
  MixtureResult out{Supermartingale::from_function(parts.front().arity(), parts.front().depth(),
                                                   [&](const Situation& s) {
                                                     ExtReal total(0);
                                                     for (std::size_t i = 0; i < terms; ++i) {
                                                       total += scale(power_of_half(i + 1), parts[i].at(s));
                                                     }
                                                     return total;
                                                   }),
                    terms, scale(power_of_half(terms), omitted_start_bound)};
  return out;
}

DoobMixture doob_mixture(const GameSpec& game, const Supermartingale& base, std::size_t terms,
                         const Situation& origin) {
  DoobMixture out{{Supermartingale(base.arity(), 0), 0, ExtReal(0)},
                  Supermartingale(base.arity(), base.depth(), ExtReal::infinity()),
                  false,
                  {}};
  RationalIntervalEnum intervals;
  std::vector<Supermartingale> tables;
  for (std::size_t i = 1; i <= terms; ++i) {
    auto [a, b] = intervals.at(i);
    out.parts.push_back(doob_upcrossing(game, base, a, b, origin));
    tables.push_back(out.parts.back().table);
  }
  out.direct = mixture(tables, terms);

  const Supermartingale& moves = out.parts.front().normalized_base;
  std::function<void(Situation&, const ExtReal&)> walk = [&](Situation& u, const ExtReal& value) {
    out.incremental.set(u, value);
    if (u.size() == base.depth()) return;
    Rational weight = 0;
    for (std::size_t i = 0; i < terms; ++i) {
      if (!out.parts[i].phase(u).frozen) weight += power_of_half(i + 1);
    }
    const ExtReal here = moves.at(u);
    for (std::size_t x = 0; x < base.arity(); ++x) {
      u.push_back(x);
      walk(u, value + scale(weight, moves.at(u) - here));
      u.pop_back();
    }
  };
  Situation start = origin;
  walk(start, ExtReal(Rational(1 - power_of_half(terms))));
  out.agree = out.incremental == out.direct.table;
  return out;
}

}  // namespace gtp
