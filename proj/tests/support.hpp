#pragma once

// Generators and independent oracles shared by the unit and acceptance tests.
// Oracles here never call the expectation module.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "gtp/expectation.hpp"
#include "gtp/functionals.hpp"
#include "gtp/gametree.hpp"
#include "gtp/payoff.hpp"

namespace gtp::test {

using Rng = std::mt19937_64;

inline OutcomeSet labels(std::size_t k) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < k; ++i) l.push_back(std::to_string(i));
  return OutcomeSet(l);
}

inline ContentPtr share(OuterContent c) { return std::make_shared<const OuterContent>(std::move(c)); }

inline ContentPtr coin() { return share(OuterContent::measure(2, {Rational(1, 2), Rational(1, 2)})); }

inline GameSpec coin_game(std::size_t horizon) { return GameSpec(labels(2), coin(), horizon); }

inline GameSpec sup_game(std::size_t arity, std::size_t horizon) {
  return GameSpec(labels(arity), share(OuterContent::sup(arity)), horizon);
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Rational random_rational(Rng& rng, long range = 10, long max_den = 6) {
  long num = std::uniform_int_distribution<long>(-range, range)(rng);
  long den = std::uniform_int_distribution<long>(1, max_den)(rng);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Random probability vector with small denominators; zero entries allowed.
inline ProbabilityMap random_probs(Rng& rng, std::size_t k, bool allow_zero = true) {
  std::vector<long> w(k);
  long total = 0;
  do {
    total = 0;
    for (auto& x : w) {
      x = static_cast<long>(uniform(rng, allow_zero ? 0 : 1, 5));
      total += x;
    }
  } while (total == 0);
  ProbabilityMap p;
  for (auto x : w) {
    Rational q(x, total);
    q.canonicalize();
    p.push_back(q);
  }
  return p;
}

/// All situations of exactly this length, lexicographic (independent of the library helper).
inline std::vector<Situation> all_paths(std::size_t arity, std::size_t length) {
  std::vector<Situation> out{{}};
  for (std::size_t d = 0; d < length; ++d) {
    std::vector<Situation> next;
    for (const auto& s : out) {
      for (std::size_t x = 0; x < arity; ++x) {
        next.push_back(s);
        next.back().push_back(x);
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Every situation of length <= depth, shortest first.
inline std::vector<Situation> all_situations(std::size_t arity, std::size_t depth) {
  std::vector<Situation> out;
  for (std::size_t d = 0; d <= depth; ++d) {
    auto level = all_paths(arity, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

/// Classical expectation of a finite payoff under per-depth product measures, by summing over leaves.
inline Rational leaf_expectation(const std::vector<ProbabilityMap>& per_depth, std::size_t arity,
                                 const std::function<Rational(const Situation&)>& leaf,
                                 const Situation& from = {}) {
  const std::size_t depth = per_depth.size();
  Rational total = 0;
  Situation s = from;
  std::function<void(const Rational&)> walk = [&](const Rational& weight) {
    if (s.size() == depth) {
      total += weight * leaf(s);
      return;
    }
    const auto& p = per_depth[s.size()];
    for (std::size_t x = 0; x < arity; ++x) {
      if (sgn(p[x]) == 0) continue;
      s.push_back(x);
      walk(weight * p[x]);
      s.pop_back();
    }
  };
  walk(Rational(1));
  return total;
}

/// Exact rational simplex: maximize c.x subject to A x = b, x >= 0 (b >= 0). Bland's rule.
inline Rational lp_maximize(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                            const std::vector<Rational>& c) {
  const std::size_t m = a.size(), n = c.size();
  // Tableau columns: n originals, m artificials, rhs.
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(n + m + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(b[i]) < 0) {
      for (auto& v : a[i]) v = -v;
      b[i] = -b[i];
    }
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = b[i];
    basis[i] = n + i;
  }
  auto pivot = [&](std::size_t r, std::size_t col) {
    Rational p = t[r][col];
    for (auto& v : t[r]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || sgn(t[i][col]) == 0) continue;
      Rational f = t[i][col];
      for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = col;
  };
  auto run = [&](const std::vector<Rational>& cost, std::size_t columns) {
    while (true) {
      // Reduced costs for maximization: cost_j - sum cost_B * t_ij.
      std::size_t enter = columns;
      for (std::size_t j = 0; j < columns && enter == columns; ++j) {
        Rational rc = cost[j];
        for (std::size_t i = 0; i < m; ++i) rc -= cost[basis[i]] * t[i][j];
        if (sgn(rc) > 0) enter = j;
      }
      if (enter == columns) return;
      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        Rational ratio = t[i][n + m] / t[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) throw std::runtime_error("unbounded LP");
      pivot(leave, enter);
    }
  };
  std::vector<Rational> phase1(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  run(phase1, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n && sgn(t[i][n + m]) != 0) throw std::runtime_error("infeasible LP");
  }
  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(t[i][j]) != 0) {
        pivot(i, j);
        break;
      }
    }
  }
  std::vector<Rational> cost(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  // Artificials stay at zero: forbid them from entering by scanning only the first n columns.
  run(cost, n);
  Rational value = 0;
  for (std::size_t i = 0; i < m; ++i) value += cost[basis[i]] * t[i][n + m];
  return value;
}

/**
 * Upper expectation under an i.i.d. envelope as a linear program over mixed
 * per-node selections: z(s, m) is the probability mass that reaches s and picks
 * measure m there. Its optimum is attained by a deterministic selection.
 */
inline Rational envelope_lp(const std::vector<ProbabilityMap>& measures, std::size_t arity, std::size_t depth,
                            const std::function<Rational(const Situation&)>& leaf) {
  const auto internal = all_situations(arity, depth - 1);
  std::map<Situation, std::size_t> index;
  for (std::size_t i = 0; i < internal.size(); ++i) index[internal[i]] = i;
  const std::size_t k = measures.size();
  const std::size_t n = internal.size() * k;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (const auto& s : internal) {
    std::vector<Rational> row(n, Rational(0));
    for (std::size_t m = 0; m < k; ++m) row[index[s] * k + m] = 1;
    if (s.empty()) {
      b.push_back(1);
    } else {
      Situation parent(s.begin(), s.end() - 1);
      for (std::size_t m = 0; m < k; ++m) row[index[parent] * k + m] -= measures[m][s.back()];
      b.push_back(0);
    }
    a.push_back(row);
  }
  std::vector<Rational> c(n, Rational(0));
  for (const auto& s : internal) {
    if (s.size() != depth - 1) continue;
    for (std::size_t m = 0; m < k; ++m) {
      Rational v = 0;
      Situation t = s;
      for (std::size_t x = 0; x < arity; ++x) {
        t.push_back(x);
        v += measures[m][x] * leaf(t);
        t.pop_back();
      }
      c[index[s] * k + m] = v;
    }
  }
  return lp_maximize(a, b, c);
}

/// Maximum over every deterministic per-node selection of measures (exhaustive; small trees only).
inline Rational envelope_policy_max(const std::vector<ProbabilityMap>& measures, std::size_t arity, std::size_t depth,
                                    const std::function<Rational(const Situation&)>& leaf) {
  const auto internal = all_situations(arity, depth - 1);
  std::map<Situation, std::size_t> index;
  for (std::size_t i = 0; i < internal.size(); ++i) index[internal[i]] = i;
  std::vector<std::size_t> choice(internal.size(), 0);
  std::optional<Rational> best;
  while (true) {
    Rational total = 0;
    Situation s;
    std::function<void(const Rational&)> walk = [&](const Rational& w) {
      if (s.size() == depth) {
        total += w * leaf(s);
        return;
      }
      const auto& p = measures[choice[index[s]]];
      for (std::size_t x = 0; x < arity; ++x) {
        if (sgn(p[x]) == 0) continue;
        s.push_back(x);
        walk(w * p[x]);
        s.pop_back();
      }
    };
    walk(Rational(1));
    if (!best || total > *best) best = total;
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == measures.size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return *best;
}

/// Random finite payoff with leaf values from a small random pool (so the diagram shares nodes).
inline Payoff random_payoff(Rng& rng, std::size_t arity, std::size_t depth, std::size_t pool = 5) {
  std::vector<ExtReal> values;
  for (std::size_t i = 0; i < pool; ++i) values.emplace_back(random_rational(rng));
  return Payoff::from_function(arity, depth, [&](const Situation&) { return values[uniform(rng, 0, pool - 1)]; });
}

/// Random subset of X^width, as an event on the window start..start+width-1.
inline EventWindow random_window(Rng& rng, std::size_t arity, std::size_t start, std::size_t width) {
  std::set<Situation> accepted;
  for (const auto& w : all_paths(arity, width)) {
    if (uniform(rng, 0, 1)) accepted.insert(w);
  }
  return EventWindow::from_accepted(arity, start, start + width - 1, accepted);
}

}  // namespace gtp::test
