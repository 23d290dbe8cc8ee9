#include "gtp/forecaster.hpp"

#include <algorithm>
#include <unordered_map>

namespace gtp {

Protocol2Spec::Protocol2Spec(OutcomeSet outcomes, std::vector<std::vector<std::string>> predictions,
                             std::map<std::string, ContentPtr> contents)
    : outcomes_(std::move(outcomes)) {
  for (std::size_t n = 0; n < predictions.size(); ++n) {
    if (predictions[n].empty()) throw std::invalid_argument("prediction set at depth " + std::to_string(n + 1) + " is empty");
    std::vector<std::size_t> ids;
    for (const auto& p : predictions[n]) {
      auto it = std::find(symbols_.begin(), symbols_.end(), p);
      std::size_t id = static_cast<std::size_t>(it - symbols_.begin());
      if (it == symbols_.end()) {
        auto c = contents.find(p);
        if (c == contents.end() || !c->second) throw std::invalid_argument("no content for prediction '" + p + "'");
        if (c->second->outcomes() != outcomes_.size()) {
          throw std::invalid_argument("content for prediction '" + p + "' has the wrong number of outcomes");
        }
        symbols_.push_back(p);
        contents_.push_back(c->second);
      }
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    allowed_.push_back(std::move(ids));
  }
}

std::size_t Protocol2Spec::symbol_index(const std::string& symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) throw std::invalid_argument("unknown prediction '" + symbol + "'");
  return static_cast<std::size_t>(it - symbols_.begin());
}

GameSpec embed(const Protocol2Spec& spec) {
  const std::size_t k = spec.outcomes().size();
  std::vector<std::string> labels;
  for (const auto& p : spec.symbols()) {
    for (const auto& x : spec.outcomes().labels()) labels.push_back(p + "|" + x);
  }
  const std::size_t arity = labels.size();
  std::map<std::vector<std::size_t>, ContentPtr> shared;
  std::vector<ContentPtr> per_depth;
  for (std::size_t n = 1; n <= spec.horizon(); ++n) {
    const auto& allowed = spec.allowed(n);
    auto it = shared.find(allowed);
    if (it == shared.end()) {
      AxiomLevel level = AxiomLevel::superexpectation;
      std::vector<ContentPtr> parts;
      for (auto p : allowed) {
        parts.push_back(spec.content_ptr(p));
        level = std::min(level, spec.content(p).declared_level());
      }
      auto fn = [allowed, parts, k](std::span<const ExtReal> f) {
        std::optional<ExtReal> best;
        for (std::size_t i = 0; i < allowed.size(); ++i) {
          ExtReal v = parts[i]->eval(f.subspan(allowed[i] * k, k));
          if (!best || v > *best) best = v;
        }
        return *best;
      };
      auto content = std::make_shared<const OuterContent>(OuterContent::custom(arity, "prediction-sup", fn, level));
      it = shared.emplace(allowed, content).first;
    }
    per_depth.push_back(it->second);
  }
  return GameSpec(OutcomeSet(labels), per_depth);
}

Payoff lift(const Protocol2Spec& spec, const Payoff& xi) {
  if (xi.arity() != spec.outcomes().size()) throw std::invalid_argument("payoff and spec have different outcome sets");
  if (xi.depth() > spec.horizon()) throw std::invalid_argument("payoff depth exceeds the horizon");
  const std::size_t k = spec.outcomes().size();
  const std::size_t arity = spec.symbols().size() * k;
  PayoffBuilder b(arity, xi.depth());
  std::vector<std::unordered_map<Payoff::NodeId, Payoff::NodeId>> memo(xi.depth() + 1);
  std::function<Payoff::NodeId(std::size_t, Payoff::NodeId)> walk = [&](std::size_t level, Payoff::NodeId id) {
    if (level == xi.depth()) return b.leaf(xi.leaf(id));
    if (auto it = memo[level].find(id); it != memo[level].end()) return it->second;
    const Payoff::NodeId zero = b.constant(level + 1, ExtReal(0));
    std::vector<Payoff::NodeId> kids(arity, zero);
    for (auto p : spec.allowed(level + 1)) {
      for (std::size_t x = 0; x < k; ++x) kids[spec.pair_index(p, x)] = walk(level + 1, xi.child(level, id, x));
    }
    auto out = b.node(level, kids);
    memo[level].emplace(id, out);
    return out;
  };
  walk(0, 0);
  return b.finish();
}

std::vector<ExtReal> native_conditionals(const Protocol2Spec& spec, const Payoff& xi, const Situation& path) {
  if (xi.depth() > spec.horizon()) throw std::invalid_argument("payoff depth exceeds the horizon");
  if (path.size() > spec.horizon()) throw std::out_of_range("path longer than the horizon");
  const Payoff full = xi.extended(spec.horizon());
  const std::size_t n = spec.horizon(), k = spec.outcomes().size();
  std::vector<std::vector<ExtReal>> values(n + 1);
  for (std::size_t id = 0; id < full.level_size(n); ++id) values[n].push_back(full.leaf(static_cast<Payoff::NodeId>(id)));
  Gamble children(k);
  for (std::size_t level = n; level-- > 0;) {
    for (std::size_t id = 0; id < full.level_size(level); ++id) {
      for (std::size_t x = 0; x < k; ++x) children[x] = values[level + 1][full.child(level, static_cast<Payoff::NodeId>(id), x)];
      // Forecaster moves first, then Skeptic prices against the announced content.
      std::optional<ExtReal> best;
      for (auto p : spec.allowed(level + 1)) {
        ExtReal v = spec.content(p).eval(children);
        if (!best || v > *best) best = v;
      }
      values[level].push_back(*best);
    }
  }
  std::vector<ExtReal> out{values[0][0]};
  Payoff::NodeId id = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    id = full.child(i, id, path[i]);
    out.push_back(values[i + 1][id]);
  }
  return out;
}

ExtReal native_upper_expectation(const Protocol2Spec& spec, const Payoff& xi, const Situation& s) {
  return native_conditionals(spec, xi, s).back();
}

// ---------------------------------------------------------------------------

ForecastingSystem ForecastingSystem::constant(std::string symbol) {
  return {"constant", [symbol](const Situation&) { return symbol; }};
}

ForecastingSystem ForecastingSystem::table(std::map<Situation, std::string> rules, std::string fallback) {
  return {"table", [rules = std::move(rules), fallback](const Situation& s) {
            auto it = rules.find(s);
            return it == rules.end() ? fallback : it->second;
          }};
}

ForecastingSystem ForecastingSystem::last_outcome(std::vector<std::string> by_outcome, std::string initial) {
  return {"last-outcome", [by_outcome = std::move(by_outcome), initial](const Situation& s) {
            return s.empty() ? initial : by_outcome.at(s.back());
          }};
}

std::size_t ForecastingSystem::predict(const Protocol2Spec& spec, const Situation& history) const {
  const std::string symbol = rule(history);
  const std::size_t id = spec.symbol_index(symbol);
  const auto& allowed = spec.allowed(history.size() + 1);
  if (std::find(allowed.begin(), allowed.end(), id) == allowed.end()) {
    throw std::invalid_argument("forecast '" + symbol + "' is not allowed at depth " + std::to_string(history.size() + 1));
  }
  return id;
}

Situation chi_phi(const Protocol2Spec& spec, const ForecastingSystem& phi, const Situation& chi) {
  if (chi.size() > spec.horizon()) throw std::out_of_range("outcome path longer than the horizon");
  Situation out;
  Situation history;
  for (auto x : chi) {
    out.push_back(spec.pair_index(phi.predict(spec, history), x));
    history.push_back(x);
  }
  return out;
}

Payoff lifted_event(const Protocol2Spec& spec, const ForecastingSystem& phi, const EventWindow& e) {
  if (e.end() > spec.horizon()) throw std::invalid_argument("event window ends after the horizon");
  const std::size_t k = spec.outcomes().size();
  const std::size_t arity = spec.symbols().size() * k;
  const std::size_t depth = e.end();
  std::size_t paths = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    paths *= k;
    if (paths > Limits::current().max_table_nodes) throw std::length_error("lifted event would exceed the node limit");
  }
  PayoffBuilder b(arity, depth);
  Situation prefix;
  std::function<Payoff::NodeId()> walk = [&]() -> Payoff::NodeId {
    const std::size_t level = prefix.size();
    if (level == depth) return b.leaf(e.indicator().value(prefix));
    const std::size_t p = phi.predict(spec, prefix);
    std::vector<Payoff::NodeId> kids(arity, b.constant(level + 1, ExtReal(0)));
    for (std::size_t x = 0; x < k; ++x) {
      prefix.push_back(x);
      kids[spec.pair_index(p, x)] = walk();
      prefix.pop_back();
    }
    return b.node(level, kids);
  };
  walk();
  return b.finish();
}

ExtReal upper_prob_phi(const Protocol2Spec& spec, const ForecastingSystem& phi, const EventWindow& e,
                       const Situation& chi) {
  UpperExpectation solver(embed(spec), lifted_event(spec, phi, e));
  return solver.at(chi_phi(spec, phi, chi));
}

ExtReal lower_prob_phi(const Protocol2Spec& spec, const ForecastingSystem& phi, const EventWindow& e,
                       const Situation& chi) {
  return ExtReal(1) - upper_prob_phi(spec, phi, e.complement(), chi);
}

ExtReal following_upper_prob(const Protocol2Spec& spec, const ForecastingSystem& phi, const EventWindow& e,
                             const Situation& chi) {
  const std::size_t depth = e.end();
  if (chi.size() >= depth) return e.indicator().value(chi);
  std::function<ExtReal(Situation&)> walk = [&](Situation& prefix) -> ExtReal {
    if (prefix.size() == depth) return e.indicator().value(prefix);
    const std::size_t p = phi.predict(spec, prefix);
    Gamble children(spec.outcomes().size());
    for (std::size_t x = 0; x < children.size(); ++x) {
      prefix.push_back(x);
      children[x] = walk(prefix);
      prefix.pop_back();
    }
    return spec.content(p).eval(children);
  };
  Situation start = chi;
  return walk(start);
}

MixingReport delta_mixing_check(const Protocol2Spec& spec, const ForecastingSystem& phi, const Rational& delta,
                                const std::map<std::size_t, std::size_t>& gap, const std::vector<EventWindow>& events,
                                const std::vector<std::size_t>& ns, const std::vector<Situation>& exceptions) {
  MixingReport report;
  const GameSpec game = embed(spec);
  const ExtReal bound(delta);
  for (auto n : ns) {
    auto g = gap.find(n);
    if (g == gap.end()) throw std::invalid_argument("no gap a(n) given for n = " + std::to_string(n));
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (events[i].start() < n + g->second) {
        throw std::invalid_argument("event " + std::to_string(i) + " starts at " + std::to_string(events[i].start()) +
                                    ", before n + a(n) = " + std::to_string(n + g->second));
      }
    }
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    UpperExpectation solver(game, lifted_event(spec, phi, events[i]));
    const ExtReal unconditional = solver.at({});
    report.dichotomy.push_back(unconditional == ExtReal(0) || unconditional >= ExtReal(Rational(1 - delta)));
    for (auto n : ns) {
      for (const auto& chi : situations_of_length(spec.outcomes().size(), n)) {
        if (std::find(exceptions.begin(), exceptions.end(), chi) != exceptions.end()) {
          ++report.skipped;
          continue;
        }
        MixingRow row;
        row.n = n;
        row.event = i;
        row.chi = chi;
        row.conditional = solver.at(chi_phi(spec, phi, chi));
        row.unconditional = unconditional;
        row.margin = row.conditional - unconditional;
        row.violated = row.margin > bound;
        row.trivially_bounded = ExtReal(1) - unconditional <= bound;
        if (!report.worst_margin || row.margin > *report.worst_margin) {
          report.worst_margin = row.margin;
          report.worst_row = report.rows.size();
        }
        report.violated = report.violated || row.violated;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

}  // namespace gtp
