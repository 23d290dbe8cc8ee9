// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Expected values come from the oracles in support.hpp or from direct sums below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "gtp/forecaster.hpp"
#include "gtp/laws.hpp"
#include "gtp/strategies.hpp"
#include "support.hpp"

using namespace gtp;
using namespace gtp::test;

namespace {

// Counts checks and keeps the first failure message.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what();
  }
  std::string summary(const std::string& extra = "") const {
    std::ostringstream s;
    s << checks << " checks";
    if (!extra.empty()) s << ", " << extra;
    if (failures) s << ", " << failures << " failures; first: " << first;
    return s.str();
  }
};

std::string show(const Situation& s) {
  std::string out;
  for (auto x : s) out += std::to_string(x);
  return out.empty() ? "□" : out;
}

std::size_t lex_index(const Situation& s, std::size_t arity) {
  std::size_t i = 0;
  for (auto x : s) i = i * arity + x;
  return i;
}

/// Payoff with independent random leaves, plus the leaf vector for the oracles.
std::pair<Payoff, std::vector<Rational>> random_leaves(Rng& rng, std::size_t arity, std::size_t depth) {
  std::vector<Rational> leaves;
  std::vector<ExtReal> ext;
  std::size_t n = 1;
  for (std::size_t d = 0; d < depth; ++d) n *= arity;
  for (std::size_t i = 0; i < n; ++i) {
    leaves.push_back(random_rational(rng, 20, 12));
    ext.emplace_back(leaves.back());
  }
  return {Payoff::from_values(arity, depth, ext), leaves};
}

Situation random_situation(Rng& rng, std::size_t arity, std::size_t max_len) {
  Situation s(uniform(rng, 0, max_len));
  for (auto& x : s) x = uniform(rng, 0, arity - 1);
  return s;
}

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Interior-node martingale identity, checked with the content directly.
void martingale_identity(const GameSpec& game, const UpperExpectation& u, Tally& t, const std::string& label) {
  const std::size_t arity = game.arity();
  for (std::size_t d = 0; d < game.horizon(); ++d) {
    for (const auto& s : all_paths(arity, d)) {
      Gamble kids(arity);
      Situation c = s;
      c.push_back(0);
      for (std::size_t x = 0; x < arity; ++x) {
        c.back() = x;
        kids[x] = u.at(c);
      }
      const ExtReal lhs = game.content(d + 1).eval(kids);
      t.expect(lhs == u.at(s), [&] {
        return label + " at " + show(s) + ": E(children) = " + lhs.str() + " but value " + u.at(s).str();
      });
    }
  }
}

// ---------------------------------------------------------------------------

std::string criterion1(bool& ok) {
  Rng rng(1001);
  Tally t;
  for (std::size_t i = 0; i < 200; ++i) {
    const std::size_t arity = 1 + i % 3, depth = 1 + (i / 3) % 10;
    std::vector<ProbabilityMap> probs;
    std::vector<ContentPtr> contents;
    for (std::size_t d = 0; d < depth; ++d) {
      probs.push_back(random_probs(rng, arity));
      contents.push_back(share(OuterContent::measure(arity, probs.back())));
    }
    GameSpec game(labels(arity), contents);
    auto [xi, leaves] = random_leaves(rng, arity, depth);
    auto leaf = [&, arity = arity](const Situation& s) { return leaves[lex_index(s, arity)]; };
    UpperExpectation u(game, xi);
    std::vector<Situation> where{{}};
    for (int r = 0; r < 3; ++r) where.push_back(random_situation(rng, arity, depth));
    for (const auto& s : where) {
      const Rational expected = leaf_expectation(probs, arity, leaf, s);
      t.expect(u.at(s) == ExtReal(expected), [&] {
        return "payoff " + std::to_string(i) + " at " + show(s) + ": " + u.at(s).str() + " vs " + format_rational(expected);
      });
    }
  }
  ok = t.failures == 0;
  return t.summary("200 payoffs, |X| <= 3, N <= 10");
}

std::string criterion2(bool& ok) {
  Rng rng(1002);
  Tally t;
  std::size_t by_enum = 0, by_lp = 0, cross = 0;
  for (std::size_t depth = 1; depth <= 5; ++depth) {
    for (std::size_t k = 1; k <= 3; ++k) {
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<ProbabilityMap> ms;
        for (std::size_t m = 0; m < k; ++m) ms.push_back(random_probs(rng, 2));
        GameSpec game(labels(2), share(OuterContent::envelope(2, ms)), depth);
        auto [xi, leaves] = random_leaves(rng, 2, depth);
        UpperExpectation u(game, xi);
        for (const auto& s : all_situations(2, 1)) {
          if (s.size() > depth - 1 && !s.empty()) continue;
          const std::size_t rest = depth - s.size();
          auto leaf = [&](const Situation& w) {
            Situation full = s;
            full.insert(full.end(), w.begin(), w.end());
            return leaves[lex_index(full, 2)];
          };
          const std::size_t policies = checked_power(k, (std::size_t{1} << rest) - 1, 40000);
          Rational expected;
          if (policies <= 40000) {
            expected = envelope_policy_max(ms, 2, rest, leaf);
            ++by_enum;
            if (policies <= 2000) {
              const Rational lp = envelope_lp(ms, 2, rest, leaf);
              ++cross;
              t.expect(lp == expected, [&] { return "oracle disagreement: LP " + format_rational(lp) + " vs enumeration " + format_rational(expected); });
            }
          } else {
            expected = envelope_lp(ms, 2, rest, leaf);
            ++by_lp;
          }
          t.expect(u.at(s) == ExtReal(expected), [&] {
            return "N=" + std::to_string(depth) + " k=" + std::to_string(k) + " at " + show(s) + ": " + u.at(s).str() +
                   " vs " + format_rational(expected);
          });
        }
      }
    }
  }
  ok = t.failures == 0;
  return t.summary(std::to_string(by_enum) + " by policy enumeration, " + std::to_string(by_lp) + " by exact LP, " +
                   std::to_string(cross) + " oracle cross-checks");
}

std::string criterion3(bool& ok) {
  Rng rng(1003);
  Tally t;
  std::size_t games = 0;
  auto run = [&](const GameSpec& game, const Payoff& xi, const std::string& label) {
    UpperExpectation u(game, xi);
    martingale_identity(game, u, t, label);
    ++games;
  };
  for (std::size_t i = 0; i < 30; ++i) {
    const std::size_t arity = 1 + i % 3, depth = 1 + (i * 7) % 10;
    std::vector<ContentPtr> contents;
    for (std::size_t d = 0; d < depth; ++d) contents.push_back(share(OuterContent::measure(arity, random_probs(rng, arity))));
    run(GameSpec(labels(arity), contents), random_leaves(rng, arity, depth).first, "measure game " + std::to_string(i));
  }
  for (std::size_t i = 0; i < 20; ++i) {
    const std::size_t depth = 1 + i % 5, arity = 2 + i % 2;
    std::vector<ProbabilityMap> ms;
    for (std::size_t m = 0; m < 1 + i % 3; ++m) ms.push_back(random_probs(rng, arity));
    run(GameSpec(labels(arity), share(OuterContent::envelope(arity, ms)), depth), random_leaves(rng, arity, depth).first,
        "envelope game " + std::to_string(i));
    run(sup_game(arity, depth), random_leaves(rng, arity, depth).first, "sup game " + std::to_string(i));
  }
  for (std::size_t i = 0; i < 10; ++i) {
    std::map<std::string, ContentPtr> contents{{"a", share(OuterContent::measure(2, random_probs(rng, 2)))},
                                               {"b", share(OuterContent::measure(2, random_probs(rng, 2)))}};
    const std::size_t depth = 1 + i % 4;
    Protocol2Spec spec(labels(2), std::vector<std::vector<std::string>>(depth, {"a", "b"}), contents);
    run(embed(spec), lift(spec, random_leaves(rng, 2, depth).first), "embedded game " + std::to_string(i));
  }
  ok = t.failures == 0;
  return t.summary(std::to_string(games) + " game/payoff pairs, every interior node");
}

std::string criterion4(bool& ok) {
  Tally t;
  for (long k = 1; k <= 10; ++k) {
    const Rational cap(1L << k);
    auto xi = Payoff::leading_ones_capped(2, 1, cap);
    auto game = coin_game(static_cast<std::size_t>(k));
    // Direct sum over the number n of leading ones: P(n) = 2^-(n+1) for n < k, 2^-k for n = k.
    Rational direct = 0;
    for (long n = 0; n < k; ++n) direct += Rational(1L << n) / Rational(1L << (n + 1));
    direct += Rational(1L << k) / Rational(1L << k);
    const Rational closed = Rational(k) / 2 + 1;
    t.expect(direct == closed, [&] { return "oracle sum " + format_rational(direct) + " != k/2+1 at k=" + std::to_string(k); });
    const ExtReal got = upper_expectation(game, xi);
    t.expect(got == ExtReal(closed), [&] { return "k=" + std::to_string(k) + ": " + got.str() + " vs " + format_rational(closed); });
    const ExtReal sup = sup_variant_upper_expectation(game, xi);
    t.expect(sup == ExtReal(1), [&] { return "sup variant at k=" + std::to_string(k) + ": " + sup.str(); });
  }
  ok = t.failures == 0;
  return t.summary("k = 1..10");
}

struct DoobFixture {
  std::string name;
  GameSpec game;
  Supermartingale base;
};

Supermartingale random_coin_martingale(Rng& rng, std::size_t depth) {
  Supermartingale s(2, depth);
  s.set({}, ExtReal(1));
  for (std::size_t d = 0; d < depth; ++d) {
    for (const auto& u : all_paths(2, d)) {
      const Rational c = s.at(u).rational();
      const Rational delta = c * Rational(static_cast<long>(uniform(rng, 0, 6))) / 7;
      auto l = u, r = u;
      l.push_back(0);
      r.push_back(1);
      s.set(l, ExtReal(c - delta));
      s.set(r, ExtReal(c + delta));
    }
  }
  return s;
}

std::string criterion5(bool& ok) {
  Rng rng(1005);
  Tally t;
  auto tri = share(OuterContent::measure(3, {Rational(1, 6), Rational(1, 3), Rational(1, 2)}));
  std::vector<DoobFixture> fixtures{
      {"coin x3/2 x1/2", coin_game(10), multiplier_table(2, 10, {Rational(1, 2), Rational(3, 2)})},
      {"three outcomes", GameSpec(labels(3), tri, 7), multiplier_table(3, 7, {Rational(3, 2), Rational(3, 2), Rational(1, 2)})},
      {"random coin martingale", coin_game(10), random_coin_martingale(rng, 10)}};
  const std::size_t paths_total = 1000;
  RationalIntervalEnum intervals;
  std::size_t frozen_nodes = 0, active_nodes = 0;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const auto& fx = fixtures[f];
    const std::size_t arity = fx.game.arity(), depth = fx.game.horizon();
    std::vector<Situation> paths;
    const std::size_t count = paths_total / fixtures.size() + (f < paths_total % fixtures.size() ? 1 : 0);
    for (std::size_t p = 0; p < count; ++p) {
      Situation w(depth);
      for (auto& x : w) x = uniform(rng, 0, arity - 1);
      paths.push_back(w);
    }
    t.expect(verify_supermartingale(fx.game, fx.base).ok, [&] { return fx.name + ": base does not verify"; });
    const ExtReal start = fx.base.at({});
    for (std::size_t i = 1; i <= 6; ++i) {
      auto [a, b] = intervals.at(i);
      auto r = doob_upcrossing(fx.game, fx.base, a, b);
      const std::string tag = fx.name + " (" + format_rational(a) + ", " + format_rational(b) + ")";
      t.expect(verify_supermartingale(fx.game, r.table).ok, [&] { return tag + ": table does not verify"; });
      for (const auto& w : paths) {
        // Independent replay: S' = S / S(□), capital copies increments of S' while active.
        Rational value = 1;
        std::size_t k = 0;
        bool frozen = false;
        for (std::size_t n = 0; n <= depth; ++n) {
          const Situation s(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
          const Rational sp = fx.base.at(s).rational() / start.rational();
          if (n > 0 && !frozen) {
            const Situation parent(s.begin(), s.end() - 1);
            value += sp - fx.base.at(parent).rational() / start.rational();
          }
          bool at_tau = false;
          if (!frozen && sp > b) {
            frozen = true;
            ++k;
          } else if (frozen && sp < a) {
            frozen = false;
            at_tau = true;
          }
          const ExtReal got = r.table.at(s);
          const auto& ph = r.phase(s);
          t.expect(got == ExtReal(value) && ph.k == k && ph.frozen == frozen, [&] {
            return tag + " at " + show(s) + ": table " + got.str() + " k=" + std::to_string(ph.k) + ", replay " +
                   format_rational(value) + " k=" + std::to_string(k);
          });
          t.expect(got >= ExtReal(0), [&] { return tag + " at " + show(s) + ": negative capital " + got.str(); });
          const Rational kk(static_cast<long>(k));
          if (frozen || at_tau) {
            ++frozen_nodes;
            const Rational bound = b + (kk - 1) * (b - a);
            t.expect(got >= ExtReal(bound), [&] {
              return tag + " at " + show(s) + ": frozen capital " + got.str() + " < " + format_rational(bound);
            });
          }
          if (!frozen) {
            ++active_nodes;
            // Before the first upcrossing the capital tracks S' itself.
            const Rational bound = k == 0 ? sp : b + (kk - 1) * (b - a) + sp - a;
            const Rational weak = kk * (b - a);
            t.expect(got >= ExtReal(bound) && bound >= weak, [&] {
              return tag + " at " + show(s) + ": active capital " + got.str() + " vs bound " + format_rational(bound);
            });
          }
        }
      }
    }
  }
  ok = t.failures == 0;
  return t.summary(std::to_string(paths_total) + " paths, 3 bases, intervals 1..6, " + std::to_string(frozen_nodes) +
                   " frozen and " + std::to_string(active_nodes) + " active node visits");
}

std::string criterion6(bool& ok) {
  Rng rng(1006);
  Tally t;
  const Rational a(3, 5), b(9, 10);
  std::size_t dense = 0;
  for (std::size_t k = 1; k <= 20; ++k) {
    std::vector<Rational> targets;
    Situation path;
    for (std::size_t c = 0; c < k; ++c) {
      targets.push_back(Rational(1, 2));
      targets.push_back(Rational(19, 20));
    }
    for (std::size_t n = 0; n < 2 * k; ++n) path.push_back(uniform(rng, 0, 1));
    auto g = scripted_conditional_game(targets, path);
    const auto along = UpperExpectation(g.game, g.event.indicator()).along(path);
    for (std::size_t n = 0; n < targets.size(); ++n) {
      t.expect(along[n] == ExtReal(targets[n]), [&] { return "fixture conditional off target at k=" + std::to_string(k); });
    }
    for (auto slack : {Slack::none, Slack::dyadic}) {
      const auto nodes = levy_capital_along(g.game, g.event.indicator(), a, b, slack, path);
      std::size_t exits = 0;
      Rational product = 1, power = 1;
      std::optional<std::size_t> entry;
      for (std::size_t n = 0; n < nodes.size(); ++n) {
        if (nodes[n].entered) entry = n;
        if (!nodes[n].exited) continue;
        ++exits;
        power *= b / a;
        Rational slack_term(1, 1);
        mpz_mul_2exp(slack_term.get_den_mpz_t(), slack_term.get_den_mpz_t(), *entry);
        product *= b / (a + slack_term);
        const Rational bound = slack == Slack::none ? power : product;
        t.expect(nodes[n].capital >= ExtReal(bound), [&] {
          return "k=" + std::to_string(k) + " exit " + std::to_string(exits) + ": capital " + nodes[n].capital.str() +
                 " < " + format_rational(bound);
        });
      }
      t.expect(exits == k, [&] { return "k=" + std::to_string(k) + ": " + std::to_string(exits) + " exits"; });
      // Where the horizon fits a dense table, the full strategy agrees with the path evaluation.
      if (2 * k <= Limits::current().max_depth) {
        auto full = levy_strategy(g.game, g.event.indicator(), a, b, slack);
        ++dense;
        t.expect(verify_supermartingale(g.game, full.table).ok, [&] { return "k=" + std::to_string(k) + ": table does not verify"; });
        for (std::size_t n = 0; n < nodes.size(); ++n) {
          const Situation s(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(n));
          t.expect(full.table.at(s) == nodes[n].capital, [&] {
            return "k=" + std::to_string(k) + " at " + show(s) + ": table " + full.table.at(s).str() + " vs path " +
                   nodes[n].capital.str();
          });
        }
      }
    }
  }
  ok = t.failures == 0;
  return t.summary("k = 1..20 cycles, exact and dyadic slack, " + std::to_string(dense) + " dense tables cross-checked");
}

std::string criterion7(bool& ok) {
  Rng rng(1007);
  Tally t;
  std::vector<std::pair<std::string, GameSpec>> games{
      {"coin", coin_game(3)},
      {"two-measure envelope",
       GameSpec(labels(2), share(OuterContent::envelope(2, {{Rational(2, 3), Rational(1, 3)}, {Rational(1, 3), Rational(2, 3)}})), 3)},
      {"three-measure envelope",
       GameSpec(labels(2), share(OuterContent::envelope(2, {random_probs(rng, 2), random_probs(rng, 2), random_probs(rng, 2)})), 3)}};
  std::vector<EventWindow> events;
  const auto window = all_paths(2, 2);
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::set<Situation> acc;
    for (std::size_t j = 0; j < 4; ++j) {
      if (mask & (1u << j)) acc.insert(window[j]);
    }
    events.push_back(EventWindow::from_accepted(2, 2, 3, acc));
  }
  const auto nodes = all_situations(2, 1);
  std::size_t families = 0;
  for (const auto& [name, game] : games) {
    std::vector<UpperExpectation> up;
    for (const auto& e : events) up.emplace_back(game, e.indicator());
    for (std::size_t i = 0; i < events.size(); ++i) {
      for (const auto& s : all_situations(2, 3)) {
        const ExtReal lo = lower_probability(game, events[i], s);
        t.expect(lo <= up[i].at(s), [&] { return name + ": lower above upper at " + show(s); });
      }
    }
    for (int rep = 0; rep < 10; ++rep) {
      auto xi = random_leaves(rng, 2, 3).first;
      for (const auto& s : all_situations(2, 3)) {
        t.expect(lower_expectation(game, xi, s) <= upper_expectation(game, xi, s),
                 [&] { return name + ": lower expectation above upper at " + show(s); });
      }
    }
    for (std::size_t i = 0; i < events.size(); ++i) {
      for (std::size_t j = i + 1; j < events.size(); ++j) {
        for (std::size_t l = j + 1; l < events.size(); ++l) {
          ++families;
          auto u = EventWindow::unite(EventWindow::unite(events[i], events[j]), events[l]);
          UpperExpectation uu(game, u.indicator());
          for (const auto& s : nodes) {
            const ExtReal sum = up[i].at(s) + up[j].at(s) + up[l].at(s);
            t.expect(uu.at(s) <= sum, [&] {
              return name + " at " + show(s) + ": union " + uu.at(s).str() + " > sum " + sum.str();
            });
          }
        }
      }
    }
  }
  ok = t.failures == 0;
  return t.summary(std::to_string(families) + " three-event families");
}

std::string criterion8(bool& ok) {
  Rng rng(1008);
  Tally t;
  for (std::size_t i = 0; i < 100; ++i) {
    std::map<std::string, ContentPtr> pool;
    const std::vector<std::string> names{"p", "q", "r", "s"};
    for (const auto& n : names) pool[n] = share(OuterContent::measure(2, random_probs(rng, 2)));
    const std::size_t horizon = 1 + i % 6;
    std::vector<std::vector<std::string>> predictions;
    for (std::size_t n = 0; n < horizon; ++n) {
      std::vector<std::string> p;
      const std::size_t size = uniform(rng, 1, 3);
      while (p.size() < size) {
        const auto& pick = names[uniform(rng, 0, names.size() - 1)];
        if (std::find(p.begin(), p.end(), pick) == p.end()) p.push_back(pick);
      }
      predictions.push_back(p);
    }
    Protocol2Spec spec(labels(2), predictions, pool);
    auto xi = random_leaves(rng, 2, horizon).first;
    UpperExpectation embedded(embed(spec), lift(spec, xi));
    for (const auto& chi : all_situations(2, horizon)) {
      Situation path;
      for (std::size_t d = 0; d < chi.size(); ++d) {
        const auto& allowed = spec.allowed(d + 1);
        path.push_back(spec.pair_index(allowed[uniform(rng, 0, allowed.size() - 1)], chi[d]));
      }
      const ExtReal native = native_upper_expectation(spec, xi, chi);
      t.expect(native == embedded.at(path), [&] {
        return "payoff " + std::to_string(i) + " at " + show(chi) + ": native " + native.str() + " vs embedded " +
               embedded.at(path).str();
      });
    }
  }
  ok = t.failures == 0;
  return t.summary("100 payoffs, |P_n| <= 3, N <= 6");
}

std::string criterion9(bool& ok) {
  Rng rng(1009);
  Tally t;
  auto tri = share(OuterContent::measure(3, {Rational(1, 2), Rational(1, 3), Rational(1, 6)}));
  auto env = share(OuterContent::envelope(2, {{Rational(1, 4), Rational(3, 4)}, {Rational(3, 5), Rational(2, 5)}}));
  std::size_t translations = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    const std::size_t start = 2 + i % 3;
    const std::size_t arity = i % 5 == 4 ? 3 : 2;
    const std::size_t width = uniform(rng, 1, arity == 3 ? 2 : 3);
    auto e = random_window(rng, arity, start, width);
    ContentPtr content = arity == 3 ? tri : (i % 2 ? env : coin());
    GameSpec game(labels(arity), content, e.end());
    auto r = kolmogorov_invariance(game, e);
    t.expect(r.invariant && r.witness_verified, [&] { return "event " + std::to_string(i) + ": report fails"; });
    // Independent check: every s in X^{N-1} has the same value, and the conditional table
    // translated from the first prefix to any other covers E and verifies.
    UpperExpectation u(game, e.indicator());
    const auto prefixes = all_paths(arity, start - 1);
    const auto table = conditional_table(game, e.indicator(), game.horizon());
    for (const auto& s : prefixes) {
      t.expect(u.at(s) == u.at(prefixes.front()), [&] { return "event " + std::to_string(i) + " differs at " + show(s); });
      auto moved = translate_strategy(table, prefixes.front(), s);
      bool covers = moved.at(s) == u.at(s);
      for (const auto& w : all_paths(arity, game.horizon() - s.size())) {
        Situation leaf = s;
        leaf.insert(leaf.end(), w.begin(), w.end());
        if (moved.at(leaf) < e.indicator().value(leaf)) covers = false;
      }
      ++translations;
      t.expect(covers && verify_supermartingale(game, moved).ok,
               [&] { return "event " + std::to_string(i) + ": translation to " + show(s) + " fails"; });
    }
  }
  ok = t.failures == 0;
  return t.summary("50 window events, " + std::to_string(translations) + " translated witnesses");
}

std::string criterion10(bool& ok) {
  Tally t;
  std::map<std::string, ContentPtr> coins{{"fair", coin()},
                                          {"low", share(OuterContent::measure(2, {Rational(4, 5), Rational(1, 5)}))},
                                          {"high", share(OuterContent::measure(2, {Rational(1, 5), Rational(4, 5)}))}};
  Protocol2Spec spec(labels(2), std::vector<std::vector<std::string>>(5, {"fair", "low", "high"}), coins);
  std::vector<EventWindow> events;
  // Every event on every window inside depths 3..5, which is past the gap for n = 1, 2.
  for (std::size_t start = 3; start <= 5; ++start) {
    for (std::size_t end = start; end <= 5; ++end) {
      const auto window = all_paths(2, end - start + 1);
      for (unsigned long mask = 0; mask < (1UL << window.size()); ++mask) {
        std::set<Situation> acc;
        for (std::size_t j = 0; j < window.size(); ++j) {
          if (mask & (1UL << j)) acc.insert(window[j]);
        }
        events.push_back(EventWindow::from_accepted(2, start, end, acc));
      }
    }
  }
  const std::vector<std::string> cycle{"low", "fair", "high"};
  std::vector<std::pair<std::string, ForecastingSystem>> products{
      {"constant", ForecastingSystem::constant("low")},
      {"depth-dependent", {"depth", [cycle](const Situation& s) { return cycle[s.size() % 3]; }}}};
  std::size_t rows = 0;
  for (const auto& [name, phi] : products) {
    auto r = delta_mixing_check(spec, phi, 0, {{1, 2}, {2, 1}}, events, {1, 2});
    for (const auto& row : r.rows) {
      ++rows;
      t.expect(row.margin == ExtReal(0), [&, name = name] {
        return name + ": margin " + row.margin.str() + " at n=" + std::to_string(row.n) + " given " + show(row.chi);
      });
    }
    t.expect(!r.violated, [&, name = name] { return name + ": reported violated"; });
  }
  auto sticky = ForecastingSystem::last_outcome({"low", "high"}, "fair");
  auto r = delta_mixing_check(spec, sticky, Rational(1, 10), {{1, 1}}, {EventWindow::coordinate_equals(2, 3, 1)}, {1});
  const bool positive = r.worst_margin && *r.worst_margin > ExtReal(0);
  t.expect(r.violated && positive, [&] { return "sticky forecaster: no positive violation"; });
  std::string witness;
  if (r.worst_row) {
    const auto& w = r.rows[*r.worst_row];
    witness = "sticky witness given " + show(w.chi) + ": margin " + w.margin.str();
  }
  ok = t.failures == 0;
  return t.summary(std::to_string(rows) + " product-forecast rows at margin 0, " + witness);
}

std::string criterion11(bool& ok) {
  Rng rng(1011);
  Tally t;
  const std::size_t horizon = 10;
  auto game = coin_game(horizon);
  std::size_t events = 0;
  auto check = [&](std::size_t start, std::size_t width, const std::set<Situation>& acc) {
    auto e = EventWindow::from_accepted(2, start, start + width - 1, acc);
    const ExtReal expected(Rational(static_cast<long>(acc.size())) / Rational(1L << width));
    const ExtReal up = upper_probability(game, e), lo = lower_probability(game, e);
    ++events;
    t.expect(up == expected && lo == expected, [&] {
      return "window " + std::to_string(start) + ".." + std::to_string(start + width - 1) + ": upper " + up.str() +
             ", lower " + lo.str() + ", measure " + expected.str();
    });
  };
  for (std::size_t width = 1; width <= 3; ++width) {
    const auto window = all_paths(2, width);
    for (std::size_t start = 1; start + width - 1 <= horizon; ++start) {
      for (unsigned long mask = 0; mask < (1UL << window.size()); ++mask) {
        std::set<Situation> acc;
        for (std::size_t j = 0; j < window.size(); ++j) {
          if (mask & (1UL << j)) acc.insert(window[j]);
        }
        check(start, width, acc);
      }
    }
  }
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t width = uniform(rng, 4, 8);
    const std::size_t start = uniform(rng, 1, horizon - width + 1);
    std::set<Situation> acc;
    for (const auto& w : all_paths(2, width)) {
      if (uniform(rng, 0, 1)) acc.insert(w);
    }
    check(start, width, acc);
  }
  ok = t.failures == 0;
  return t.summary(std::to_string(events) + " window events at N <= 10");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::string (*run)(bool&);
  };
  const Criterion criteria[] = {
      {1, "expectation DP equals leaf enumeration", 10, criterion1},
      {2, "envelope DP equals the best per-node measure selection", 30, criterion2},
      {3, "martingale identity at interior nodes", 60, criterion3},
      {4, "capped doubling example", 5, criterion4},
      {5, "upcrossing bounds", 60, criterion5},
      {6, "multiplicative growth on scripted games", 60, criterion6},
      {7, "coherence and finite subadditivity", 60, criterion7},
      {8, "Protocol 2 native equals embedded", 60, criterion8},
      {9, "window events are prefix invariant", 60, criterion9},
      {10, "delta-mixing margins", 60, criterion10},
      {11, "coin game probabilities are determinate and uniform", 60, criterion11},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    bool ok = false;
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      detail = c.run(ok);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.limit_s);
    const bool pass = ok && in_time;
    if (!pass) ++failed;
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << ": " << c.name << " (" << detail << "; "
              << timing << (in_time ? "" : ", over the time limit") << ")" << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
