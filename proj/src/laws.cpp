#include "gtp/laws.hpp"

#include <algorithm>

namespace gtp {

bool LevyExperimentReport::all_terminal_match() const {
  return std::all_of(paths.begin(), paths.end(), [](const LevyPathReport& p) { return p.terminal_matches; });
}

LevyExperimentReport levy_experiment(const GameSpec& game, const Payoff& xi, const std::vector<Situation>& paths) {
  UpperExpectation solver(game, xi);
  LevyExperimentReport report;
  auto values = xi.distinct_values();
  report.indicator = std::all_of(values.begin(), values.end(),
                                 [](const ExtReal& v) { return v == ExtReal(0) || v == ExtReal(1); });
  for (const auto& path : paths) {
    if (path.size() != xi.depth()) throw std::invalid_argument("path length must equal the payoff depth");
    LevyPathReport r;
    r.path = path;
    r.conditionals = solver.along(path);
    r.payoff = xi.value(path);
    r.terminal_matches = r.conditionals.back() == r.payoff;
    r.martingale_steps = true;
    Situation prefix;
    for (std::size_t n = 0; n < path.size(); ++n) {
      Gamble children(game.arity());
      for (std::size_t x = 0; x < game.arity(); ++x) {
        prefix.push_back(x);
        children[x] = solver.at(prefix);
        prefix.pop_back();
      }
      if (game.content(n + 1).eval(children) != r.conditionals[n]) r.martingale_steps = false;
      prefix.push_back(path[n]);
    }
    if (report.indicator) {
      r.in_event = r.payoff == ExtReal(1);
      r.reaches_one = std::any_of(r.conditionals.begin(), r.conditionals.end(),
                                  [](const ExtReal& v) { return v == ExtReal(1); });
    }
    report.paths.push_back(std::move(r));
  }
  return report;
}

KolmogorovReport kolmogorov_invariance(const GameSpec& game, const EventWindow& e) {
  if (game.horizon() < e.end()) throw std::invalid_argument("event window ends after the horizon");
  KolmogorovReport report;
  report.start = e.start();
  UpperExpectation solver(game, e.indicator());
  const auto prefixes = situations_of_length(game.arity(), e.start() - 1);
  for (const auto& s : prefixes) report.values.emplace_back(s, solver.at(s));
  report.invariant = std::all_of(report.values.begin(), report.values.end(),
                                 [&](const auto& p) { return p.second == report.values.front().second; });

  report.from = prefixes.front();
  report.to = prefixes.back();
  Supermartingale table = conditional_table(game, e.indicator(), game.horizon());
  Supermartingale moved = translate_strategy(table, report.from, report.to);
  bool covers = true;
  for (const auto& v : situations_of_length(game.arity(), game.horizon() - report.to.size())) {
    Situation leaf = report.to;
    leaf.insert(leaf.end(), v.begin(), v.end());
    if (moved.at(leaf) < e.indicator().value(leaf)) covers = false;
  }
  report.witness_verified = covers && verify_supermartingale(game, moved).ok &&
                            moved.at(report.to) == report.values.front().second &&
                            moved.at(report.to) == solver.at(report.to);
  return report;
}

ErgodicReport ergodic_bound(const GameSpec& game, const EventWindow& e, const Situation& s) {
  if (!game.depth_independent()) throw std::invalid_argument("ergodic bound requires the same content at every depth");
  const std::size_t m = e.end();
  ErgodicReport report;
  report.precondition = true;
  for (const auto& w : situations_of_length(game.arity(), m)) {
    Situation sw = s;
    sw.insert(sw.end(), w.begin(), w.end());
    if (e.contains(sw) && !e.contains(w)) {
      report.precondition = false;
      report.counterexample = w;
      break;
    }
  }
  const GameSpec longer = game.truncated(s.size() + m);
  const GameSpec base = game.truncated(m);
  report.conditional = upper_probability(longer, e, s);
  report.unconditional = upper_probability(base, e);
  report.holds = report.conditional <= report.unconditional;

  Supermartingale table = conditional_table(base, e.indicator(), m);
  Supermartingale shifted = shift_strategy(longer, table, s);
  bool covers = true;
  for (const auto& w : situations_of_length(game.arity(), m)) {
    Situation sw = s;
    sw.insert(sw.end(), w.begin(), w.end());
    if (shifted.at(sw) < e.indicator().value(sw)) covers = false;
  }
  report.witness_verified =
      covers && verify_supermartingale(longer, shifted).ok && shifted.at(s) == report.unconditional;
  return report;
}

ScriptedGame scripted_conditional_game(const std::vector<Rational>& targets, const Situation& path) {
  const std::size_t n_steps = targets.size();
  if (n_steps == 0) throw std::invalid_argument("at least one target is needed");
  if (path.size() != n_steps) throw std::invalid_argument("path length must equal the number of targets");
  for (std::size_t i = 0; i < n_steps; ++i) {
    if (sgn(targets[i]) <= 0 || targets[i] >= 1) {
      throw std::invalid_argument("infeasible prescription: target " + std::to_string(i) + " = " +
                                  format_rational(targets[i]) + " is outside (0, 1)");
    }
    if (path[i] > 1) throw std::invalid_argument("scripted games are binary");
  }
  std::size_t tail = n_steps - 1;
  while (tail > 0 && targets[tail - 1] == targets[n_steps - 1]) --tail;

  enum class Off { outside, inside, last_matches };
  std::vector<Off> off(n_steps);
  std::vector<ContentPtr> contents(n_steps);
  for (std::size_t n = 0; n < n_steps; ++n) {
    const Rational& now = targets[n];
    const Rational next = n + 1 < n_steps ? targets[n + 1] : Rational(1);
    Rational q;
    if (next > now) {
      q = now / next;
      off[n] = Off::outside;
    } else if (next < now) {
      q = (1 - now) / (1 - next);
      off[n] = Off::inside;
    } else if (n >= tail) {
      q = Rational(1, 2);
      off[n] = Off::last_matches;
    } else {
      q = 1;
      off[n] = Off::outside;
    }
    ProbabilityMap probs(2);
    probs[path[n]] = q;
    probs[1 - path[n]] = 1 - q;
    contents[n] = std::make_shared<const OuterContent>(OuterContent::measure(2, probs));
  }

  PayoffBuilder b(2, n_steps);
  // Subtree from `level` down whose membership is ω_N = path_N.
  auto last_matches = [&](std::size_t level) {
    std::vector<Payoff::NodeId> kids(2);
    kids[path.back()] = b.leaf(ExtReal(1));
    kids[1 - path.back()] = b.leaf(ExtReal(0));
    Payoff::NodeId id = b.node(n_steps - 1, kids);
    for (std::size_t l = n_steps - 1; l-- > level;) id = b.node(l, {id, id});
    return id;
  };
  Payoff::NodeId on_path = b.leaf(ExtReal(1));
  for (std::size_t n = n_steps; n-- > 0;) {
    std::vector<Payoff::NodeId> kids(2);
    kids[path[n]] = on_path;
    switch (off[n]) {
      case Off::outside: kids[1 - path[n]] = b.constant(n + 1, ExtReal(0)); break;
      case Off::inside: kids[1 - path[n]] = b.constant(n + 1, ExtReal(1)); break;
      case Off::last_matches: kids[1 - path[n]] = last_matches(n + 1); break;
    }
    on_path = b.node(n, kids);
  }
  return ScriptedGame{GameSpec(OutcomeSet({"0", "1"}), contents),
                      EventWindow::from_indicator(1, n_steps, b.finish()), path};
}

std::string to_string(ZeroOneClass c) {
  switch (c) {
    case ZeroOneClass::almost_certain: return "almost-certain";
    case ZeroOneClass::almost_impossible: return "almost-impossible";
    case ZeroOneClass::fully_unprobabilized: return "fully-unprobabilized";
    case ZeroOneClass::undetermined: return "undetermined";
  }
  return "undetermined";
}

ZeroOneReport zero_one_classify(const GameSpec& game, const EventWindow& e, const std::vector<std::size_t>& horizons) {
  if (horizons.empty()) throw std::invalid_argument("at least one horizon is needed");
  ZeroOneReport report;
  for (auto h : horizons) {
    if (h < e.end()) throw std::invalid_argument("horizon " + std::to_string(h) + " is shorter than the event window");
    GameSpec g = game.truncated(h);
    ZeroOneRow row{h, lower_probability(g, e), upper_probability(g, e), ZeroOneClass::undetermined};
    if (row.lower == ExtReal(1) && row.upper == ExtReal(1)) {
      row.cls = ZeroOneClass::almost_certain;
    } else if (row.lower == ExtReal(0) && row.upper == ExtReal(0)) {
      row.cls = ZeroOneClass::almost_impossible;
    } else if (row.lower == ExtReal(0) && row.upper == ExtReal(1)) {
      row.cls = ZeroOneClass::fully_unprobabilized;
    }
    report.rows.push_back(row);
  }
  report.overall = report.rows.back().cls;
  return report;
}

}  // namespace gtp
