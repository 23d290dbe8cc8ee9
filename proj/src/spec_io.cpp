#include "gtp/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gtp {

using nlohmann::json;

namespace {

std::string child(const std::string& ptr, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return ptr + "/" + escaped;
}

std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const json& need(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) throw SpecError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(ptr, "missing field \"" + key + "\"");
  return *it;
}

std::string as_string(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw SpecError(ptr, "expected a string");
  return j.get<std::string>();
}

std::size_t as_size(const json& j, const std::string& ptr) {
  if (!j.is_number_unsigned()) throw SpecError(ptr, "expected a non-negative integer");
  return j.get<std::size_t>();
}

// Numbers may be written as "p/q", "inf", "-inf" or a JSON integer.
ExtReal as_extreal(const json& j, const std::string& ptr) {
  try {
    if (j.is_number_integer()) return ExtReal(Rational(std::to_string(j.get<long long>())));
    if (j.is_string()) return ExtReal::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw SpecError(ptr, e.what());
  }
  throw SpecError(ptr, "expected a number string such as \"1/2\", \"inf\" or \"-inf\"");
}

Rational as_rational(const json& j, const std::string& ptr) {
  ExtReal v = as_extreal(j, ptr);
  if (!v.is_finite()) throw SpecError(ptr, "expected a finite rational");
  return v.rational();
}

std::size_t as_label(const OutcomeSet& outcomes, const json& j, const std::string& ptr) {
  auto label = as_string(j, ptr);
  auto i = outcomes.find(label);
  if (!i) throw SpecError(ptr, "unknown outcome \"" + label + "\"");
  return *i;
}

Situation as_situation(const OutcomeSet& outcomes, const std::string& text, const std::string& ptr) {
  try {
    return parse_situation(outcomes, text);
  } catch (const std::exception&) {
    throw SpecError(ptr, "cannot read situation \"" + text + "\"");
  }
}

OutcomeSet parse_outcomes(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) throw SpecError(ptr, "expected a non-empty list of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j.size(); ++i) labels.push_back(as_string(j[i], child(ptr, i)));
  try {
    OutcomeSet set(labels);
    if (set.size() > Limits::current().max_outcomes) {
      throw SpecError(ptr, "more than " + std::to_string(Limits::current().max_outcomes) + " outcomes");
    }
    return set;
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError(ptr, e.what());
  }
}

ProbabilityMap parse_probs(const OutcomeSet& outcomes, const json& j, const std::string& ptr) {
  if (!j.is_object()) throw SpecError(ptr, "expected an object from labels to probabilities");
  ProbabilityMap probs(outcomes.size(), Rational(0));
  Rational total = 0;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto p = child(ptr, it.key());
    auto i = outcomes.find(it.key());
    if (!i) throw SpecError(p, "unknown outcome \"" + it.key() + "\"");
    probs[*i] = as_rational(it.value(), p);
    if (sgn(probs[*i]) < 0) throw SpecError(p, "negative probability");
    total += probs[*i];
  }
  if (total != 1) throw SpecError(ptr, "probabilities sum to " + format_rational(total) + ", not 1");
  return probs;
}

AxiomLevel parse_level(const json& j, const std::string& ptr) {
  auto s = as_string(j, ptr);
  if (s == "superexpectation") return AxiomLevel::superexpectation;
  if (s == "outer-content" || s == "outer_content") return AxiomLevel::outer_content;
  if (s == "none") return AxiomLevel::none;
  throw SpecError(ptr, "unknown level \"" + s + "\"");
}

Gamble parse_gamble(const OutcomeSet& outcomes, const json& j, const std::string& ptr) {
  Gamble f(outcomes.size());
  if (j.is_array()) {
    if (j.size() != outcomes.size()) throw SpecError(ptr, "gamble needs one value per outcome");
    for (std::size_t i = 0; i < j.size(); ++i) f[i] = as_extreal(j[i], child(ptr, i));
    return f;
  }
  if (!j.is_object()) throw SpecError(ptr, "expected a gamble (list or label map)");
  std::vector<bool> seen(outcomes.size(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto p = child(ptr, it.key());
    auto i = outcomes.find(it.key());
    if (!i) throw SpecError(p, "unknown outcome \"" + it.key() + "\"");
    f[*i] = as_extreal(it.value(), p);
    seen[*i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw SpecError(ptr, "missing value for outcome \"" + outcomes.label(i) + "\"");
  }
  return f;
}

ContentPtr parse_content(const OutcomeSet& outcomes, const json& j, const std::string& ptr) {
  auto type = as_string(need(j, "type", ptr), child(ptr, "type"));
  const std::size_t k = outcomes.size();
  if (type == "measure") {
    auto probs = parse_probs(outcomes, need(j, "probs", ptr), child(ptr, "probs"));
    return std::make_shared<const OuterContent>(OuterContent::measure(k, probs));
  }
  if (type == "sup") return std::make_shared<const OuterContent>(OuterContent::sup(k));
  if (type == "envelope") {
    auto mp = child(ptr, "measures");
    const json& ms = need(j, "measures", ptr);
    if (!ms.is_array()) throw SpecError(mp, "expected a list of measures");
    if (ms.empty()) throw SpecError(mp, "an envelope needs at least one measure");
    std::vector<ProbabilityMap> measures;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const json& m = ms[i];
      auto p = child(mp, i);
      // Either {"probs": {...}} or the label map itself.
      if (m.is_object() && m.contains("probs")) measures.push_back(parse_probs(outcomes, m["probs"], child(p, "probs")));
      else measures.push_back(parse_probs(outcomes, m, p));
    }
    return std::make_shared<const OuterContent>(OuterContent::envelope(k, measures));
  }
  if (type == "table") {
    AxiomLevel declared = j.contains("declared") ? parse_level(j["declared"], child(ptr, "declared"))
                                                 : AxiomLevel::none;
    auto ep = child(ptr, "entries");
    const json& es = need(j, "entries", ptr);
    if (!es.is_array()) throw SpecError(ep, "expected a list of entries");
    std::map<Gamble, ExtReal> entries;
    for (std::size_t i = 0; i < es.size(); ++i) {
      auto p = child(ep, i);
      Gamble f = parse_gamble(outcomes, need(es[i], "gamble", p), child(p, "gamble"));
      ExtReal v = as_extreal(need(es[i], "value", p), child(p, "value"));
      if (!entries.emplace(f, v).second) throw SpecError(p, "duplicate gamble");
    }
    return std::make_shared<const OuterContent>(OuterContent::table(k, std::move(entries), declared));
  }
  throw SpecError(child(ptr, "type"), "unknown content type \"" + type + "\"");
}

EventWindow parse_window(const OutcomeSet& outcomes, const json& j, const std::string& ptr) {
  const std::size_t k = outcomes.size();
  if (!j.is_object()) throw SpecError(ptr, "expected a window object");
  auto start_of = [&] { return j.contains("start") ? as_size(j["start"], child(ptr, "start")) : std::size_t{1}; };
  if (j.contains("whole")) return EventWindow::whole(k, start_of());
  if (j.contains("empty")) return EventWindow::empty(k, start_of());
  if (j.contains("coordinate")) {
    auto pos = as_size(j["coordinate"], child(ptr, "coordinate"));
    if (pos == 0) throw SpecError(child(ptr, "coordinate"), "coordinates start at 1");
    return EventWindow::coordinate_equals(k, pos, as_label(outcomes, need(j, "equals", ptr), child(ptr, "equals")));
  }
  if (j.contains("complement")) return parse_window(outcomes, j["complement"], child(ptr, "complement")).complement();
  for (const char* op : {"union", "intersection"}) {
    if (!j.contains(op)) continue;
    auto lp = child(ptr, op);
    const json& list = j[op];
    if (!list.is_array() || list.empty()) throw SpecError(lp, "expected a non-empty list of windows");
    EventWindow acc = parse_window(outcomes, list[0], child(lp, 0));
    for (std::size_t i = 1; i < list.size(); ++i) {
      EventWindow next = parse_window(outcomes, list[i], child(lp, i));
      acc = op == std::string("union") ? EventWindow::unite(acc, next) : EventWindow::intersect(acc, next);
    }
    return acc;
  }
  const std::size_t start = as_size(need(j, "start", ptr), child(ptr, "start"));
  const std::size_t end = as_size(need(j, "end", ptr), child(ptr, "end"));
  if (start == 0 || end + 1 < start) throw SpecError(ptr, "need 1 <= start <= end + 1");
  const std::size_t width = end + 1 - start;
  if (j.contains("accept")) {
    auto ap = child(ptr, "accept");
    const json& list = j["accept"];
    if (!list.is_array()) throw SpecError(ap, "expected a list of window tuples");
    std::set<Situation> accepted;
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto p = child(ap, i);
      Situation t = as_situation(outcomes, as_string(list[i], p), p);
      if (t.size() != width) throw SpecError(p, "tuple length must be " + std::to_string(width));
      accepted.insert(t);
    }
    return EventWindow::from_accepted(k, start, end, accepted);
  }
  if (j.contains("contains") || j.contains("all")) {
    const bool any = j.contains("contains");
    const char* key = any ? "contains" : "all";
    std::size_t x = as_label(outcomes, j[key], child(ptr, key));
    return EventWindow::from_predicate(k, start, end, [any, x](const Situation& w) {
      for (auto y : w) {
        if (any && y == x) return true;
        if (!any && y != x) return false;
      }
      return !any;
    });
  }
  throw SpecError(ptr, "window needs one of accept, contains, all, coordinate, whole, empty, complement, union, "
                       "intersection");
}

Payoff parse_payoff(const OutcomeSet& outcomes, const json& j, const std::string& ptr) {
  const std::size_t k = outcomes.size();
  auto kind = as_string(need(j, "kind", ptr), child(ptr, "kind"));
  if (kind == "constant") {
    std::size_t depth = j.contains("depth") ? as_size(j["depth"], child(ptr, "depth")) : 0;
    return Payoff::constant(k, depth, as_extreal(need(j, "value", ptr), child(ptr, "value")));
  }
  if (kind == "indicator") return parse_window(outcomes, need(j, "window", ptr), child(ptr, "window")).indicator();
  if (kind == "leading_ones_capped") {
    Rational cap = as_rational(need(j, "cap", ptr), child(ptr, "cap"));
    if (cap < 1) throw SpecError(child(ptr, "cap"), "cap must be at least 1");
    std::size_t one = j.contains("one") ? as_label(outcomes, j["one"], child(ptr, "one"))
                                        : as_label(outcomes, json("1"), ptr);
    return Payoff::leading_ones_capped(k, one, cap);
  }
  if (kind == "coordinate") {
    auto pos = as_size(need(j, "position", ptr), child(ptr, "position"));
    if (pos == 0) throw SpecError(child(ptr, "position"), "coordinates start at 1");
    Gamble values = parse_gamble(outcomes, need(j, "values", ptr), child(ptr, "values"));
    return Payoff::coordinate(k, pos, values);
  }
  if (kind == "table") {
    const std::size_t depth = as_size(need(j, "depth", ptr), child(ptr, "depth"));
    auto vp = child(ptr, "values");
    const json& vals = need(j, "values", ptr);
    if (!vals.is_object()) throw SpecError(vp, "expected an object from situations to values");
    std::optional<ExtReal> fallback;
    if (j.contains("default")) fallback = as_extreal(j["default"], child(ptr, "default"));
    std::map<Situation, ExtReal> given;
    for (auto it = vals.begin(); it != vals.end(); ++it) {
      auto p = child(vp, it.key());
      Situation s = as_situation(outcomes, it.key(), p);
      if (s.size() != depth) throw SpecError(p, "situation length must equal the depth " + std::to_string(depth));
      given[s] = as_extreal(it.value(), p);
    }
    try {
      Limits::current().check_dense(k, depth);
    } catch (const std::length_error& e) {
      throw SpecError(child(ptr, "depth"), e.what());
    }
    return Payoff::from_function(k, depth, [&](const Situation& s) {
      auto it = given.find(s);
      if (it != given.end()) return it->second;
      if (!fallback) throw SpecError(vp, "missing value for situation \"" + format_situation(outcomes, s) + "\"");
      return *fallback;
    });
  }
  throw SpecError(child(ptr, "kind"), "unknown payoff kind \"" + kind + "\"");
}

ForecastingSystem parse_forecaster(const Protocol2Spec& spec, const json& j, const std::string& ptr) {
  auto symbol = [&](const json& v, const std::string& p) {
    auto s = as_string(v, p);
    try {
      spec.symbol_index(s);
    } catch (const std::exception&) {
      throw SpecError(p, "unknown prediction \"" + s + "\"");
    }
    return s;
  };
  auto kind = as_string(need(j, "kind", ptr), child(ptr, "kind"));
  if (kind == "constant") return ForecastingSystem::constant(symbol(need(j, "prediction", ptr), child(ptr, "prediction")));
  if (kind == "table") {
    auto rp = child(ptr, "rules");
    const json& rules = need(j, "rules", ptr);
    if (!rules.is_object()) throw SpecError(rp, "expected an object from situations to predictions");
    std::map<Situation, std::string> map;
    for (auto it = rules.begin(); it != rules.end(); ++it) {
      auto p = child(rp, it.key());
      map[as_situation(spec.outcomes(), it.key(), p)] = symbol(it.value(), p);
    }
    return ForecastingSystem::table(std::move(map), symbol(need(j, "default", ptr), child(ptr, "default")));
  }
  if (kind == "last-outcome") {
    auto bp = child(ptr, "by_outcome");
    const json& by = need(j, "by_outcome", ptr);
    if (!by.is_object()) throw SpecError(bp, "expected an object from labels to predictions");
    std::vector<std::string> table(spec.outcomes().size());
    for (std::size_t x = 0; x < table.size(); ++x) {
      const auto& label = spec.outcomes().label(x);
      if (!by.contains(label)) throw SpecError(bp, "missing prediction for outcome \"" + label + "\"");
      table[x] = symbol(by[label], child(bp, label));
    }
    return ForecastingSystem::last_outcome(std::move(table), symbol(need(j, "initial", ptr), child(ptr, "initial")));
  }
  throw SpecError(child(ptr, "kind"), "unknown forecaster kind \"" + kind + "\"");
}

Supermartingale parse_base(const OutcomeSet& outcomes, std::size_t horizon, const json& j, const std::string& ptr) {
  if (j.contains("multiplier")) {
    Gamble m = parse_gamble(outcomes, j["multiplier"], child(ptr, "multiplier"));
    std::vector<Rational> mult;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i].is_finite() || sgn(m[i].rational()) < 0) {
        throw SpecError(child(ptr, "multiplier"), "multipliers must be finite and non-negative");
      }
      mult.push_back(m[i].rational());
    }
    Rational initial = j.contains("initial") ? as_rational(j["initial"], child(ptr, "initial")) : Rational(1);
    return multiplier_table(outcomes.size(), horizon, mult, initial);
  }
  if (j.contains("values")) {
    std::ostringstream csv;
    const json& vals = j["values"];
    if (!vals.is_object()) throw SpecError(child(ptr, "values"), "expected an object from situations to values");
    for (auto it = vals.begin(); it != vals.end(); ++it) {
      csv << csv_field(it.key()) << ',' << as_extreal(it.value(), child(child(ptr, "values"), it.key())).str() << '\n';
    }
    try {
      return read_supermartingale_csv(csv.str(), outcomes);
    } catch (const std::exception& e) {
      throw SpecError(child(ptr, "values"), e.what());
    }
  }
  throw SpecError(ptr, "base needs \"multiplier\" or \"values\"");
}

void check_fits(std::size_t depth, std::size_t horizon, const std::string& ptr) {
  if (depth > horizon) {
    throw SpecError(ptr, "depth " + std::to_string(depth) + " exceeds the horizon " + std::to_string(horizon));
  }
}

json content_json(const OutcomeSet& outcomes, const OuterContent& c) {
  auto probs_json = [&](const ProbabilityMap& p) {
    json m = json::object();
    for (std::size_t i = 0; i < p.size(); ++i) m[outcomes.label(i)] = format_rational(p[i]);
    return m;
  };
  return std::visit(
      [&](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, OuterContent::Measure>) {
          return {{"type", "measure"}, {"probs", probs_json(k.probs)}};
        } else if constexpr (std::is_same_v<K, OuterContent::Sup>) {
          return {{"type", "sup"}};
        } else if constexpr (std::is_same_v<K, OuterContent::Envelope>) {
          json ms = json::array();
          for (const auto& m : k.measures) ms.push_back(probs_json(m));
          return {{"type", "envelope"}, {"measures", ms}};
        } else if constexpr (std::is_same_v<K, OuterContent::Table>) {
          json es = json::array();
          for (const auto& [f, v] : k.entries) {
            json g = json::object();
            for (std::size_t i = 0; i < f.size(); ++i) g[outcomes.label(i)] = f[i].str();
            es.push_back({{"gamble", g}, {"value", v.str()}});
          }
          std::string level = c.declared_level() == AxiomLevel::outer_content ? "outer-content"
                                                                               : to_string(c.declared_level());
          return {{"type", "table"}, {"declared", level}, {"entries", es}};
        } else {
          throw std::invalid_argument("custom content \"" + k.name + "\" has no JSON form");
        }
      },
      c.kind());
}

json payoff_json(const OutcomeSet& outcomes, const Payoff& xi) {
  json values = json::object();
  for (const auto& s : situations_of_length(outcomes.size(), xi.depth())) {
    values[format_situation(outcomes, s)] = xi.value(s).str();
  }
  return {{"kind", "table"}, {"depth", xi.depth()}, {"values", values}};
}

json window_json(const OutcomeSet& outcomes, const EventWindow& e) {
  json accept = json::array();
  const std::size_t width = e.end() + 1 - e.start();
  for (const auto& w : situations_of_length(outcomes.size(), width)) {
    Situation path(e.start() - 1, 0);
    path.insert(path.end(), w.begin(), w.end());
    if (e.contains(path)) accept.push_back(format_situation(outcomes, w));
  }
  return {{"start", e.start()}, {"end", e.end()}, {"accept", accept}};
}

}  // namespace

std::size_t LoadedSpec::horizon() const {
  if (protocol2) return protocol2->horizon();
  return game ? game->horizon() : 0;
}

Payoff LoadedSpec::resolve_payoff(const std::string& name) const {
  auto it = payoffs.find(name);
  if (it != payoffs.end()) return it->second;
  const std::size_t k = outcomes.size();
  auto one = [&] {
    auto i = outcomes.find("1");
    if (!i) throw std::invalid_argument("built-in payoff \"" + name + "\" needs an outcome labelled \"1\"");
    return *i;
  };
  try {
    if (name.rfind("e_w", 0) == 0 && name.size() > 3) {
      std::size_t pos = std::stoul(name.substr(3));
      if (pos == 0) throw std::invalid_argument("coordinates start at 1");
      if (pos > horizon()) throw std::invalid_argument("coordinate past the horizon " + std::to_string(horizon()));
      Gamble values(k, ExtReal(0));
      values[one()] = ExtReal(1);
      return Payoff::coordinate(k, pos, values);
    }
    if (name.rfind("const:", 0) == 0) return Payoff::constant(k, 0, ExtReal::parse(name.substr(6)));
    if (name.rfind("cap:", 0) == 0) return Payoff::leading_ones_capped(k, one(), parse_rational(name.substr(4)));
    if (name.rfind("event:", 0) == 0) return resolve_event(name.substr(6)).indicator();
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("payoff \"" + name + "\": " + e.what());
  }
  throw std::invalid_argument("unknown payoff \"" + name + "\"");
}

EventWindow LoadedSpec::resolve_event(const std::string& name) const {
  auto it = events.find(name);
  if (it != events.end()) return it->second;
  auto eq = name.find('=');
  if (name.size() > 1 && name[0] == 'w' && eq != std::string::npos) {
    try {
      std::size_t pos = std::stoul(name.substr(1, eq - 1));
      if (pos == 0) throw std::invalid_argument("coordinates start at 1");
      if (pos > horizon()) throw std::invalid_argument("coordinate past the horizon " + std::to_string(horizon()));
      return EventWindow::coordinate_equals(outcomes.size(), pos, outcomes.index_of(name.substr(eq + 1)));
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("event \"" + name + "\": " + e.what());
    }
  }
  throw std::invalid_argument("unknown event \"" + name + "\"");
}

LoadedSpec parse_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError("", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SpecError("", "expected a JSON object");
  LoadedSpec spec;
  spec.source = j.dump();
  spec.outcomes = parse_outcomes(need(j, "outcomes", ""), "/outcomes");

  std::optional<std::size_t> horizon;
  if (j.contains("horizon")) horizon = as_size(j["horizon"], "/horizon");
  const std::size_t max_depth = Limits::current().max_depth;
  auto check_horizon = [&](std::size_t h, const std::string& ptr) {
    if (h == 0) throw SpecError(ptr, "horizon must be positive");
    if (h > max_depth) throw SpecError(ptr, "horizon exceeds the depth limit " + std::to_string(max_depth));
  };

  if (j.contains("predictions")) {
    const json& preds = j["predictions"];
    if (!preds.is_array() || preds.empty()) throw SpecError("/predictions", "expected a non-empty list");
    std::vector<std::vector<std::string>> per_depth;
    if (preds[0].is_array()) {
      for (std::size_t n = 0; n < preds.size(); ++n) {
        auto p = child("/predictions", n);
        if (!preds[n].is_array() || preds[n].empty()) throw SpecError(p, "expected a non-empty list of predictions");
        std::vector<std::string> row;
        for (std::size_t i = 0; i < preds[n].size(); ++i) row.push_back(as_string(preds[n][i], child(p, i)));
        per_depth.push_back(row);
      }
      if (horizon && *horizon != per_depth.size()) {
        throw SpecError("/horizon", "horizon differs from the number of prediction lists");
      }
    } else {
      if (!horizon) throw SpecError("", "a flat prediction list needs a horizon");
      std::vector<std::string> row;
      for (std::size_t i = 0; i < preds.size(); ++i) row.push_back(as_string(preds[i], child("/predictions", i)));
      per_depth.assign(*horizon, row);
    }
    check_horizon(per_depth.size(), j.contains("horizon") ? "/horizon" : "/predictions");
    const json& cs = need(j, "contents", "");
    if (!cs.is_object()) throw SpecError("/contents", "expected an object from prediction symbols to contents");
    std::map<std::string, ContentPtr> contents;
    for (auto it = cs.begin(); it != cs.end(); ++it) {
      contents[it.key()] = parse_content(spec.outcomes, it.value(), child("/contents", it.key()));
    }
    for (std::size_t n = 0; n < per_depth.size(); ++n) {
      for (std::size_t i = 0; i < per_depth[n].size(); ++i) {
        if (!contents.count(per_depth[n][i])) {
          throw SpecError(child(child("/predictions", n), i), "no content for prediction \"" + per_depth[n][i] + "\"");
        }
      }
    }
    try {
      spec.protocol2.emplace(spec.outcomes, per_depth, contents);
    } catch (const std::exception& e) {
      throw SpecError("/predictions", e.what());
    }
    if (j.contains("forecaster")) spec.forecaster = parse_forecaster(*spec.protocol2, j["forecaster"], "/forecaster");
  } else {
    std::vector<ContentPtr> contents;
    if (j.contains("contents")) {
      const json& cs = j["contents"];
      if (!cs.is_array() || cs.empty()) throw SpecError("/contents", "expected a non-empty list of contents");
      for (std::size_t i = 0; i < cs.size(); ++i) contents.push_back(parse_content(spec.outcomes, cs[i], child("/contents", i)));
      if (horizon && *horizon != contents.size()) throw SpecError("/horizon", "horizon differs from the number of contents");
    } else {
      if (!horizon) throw SpecError("", "missing field \"horizon\"");
      contents.assign(*horizon, parse_content(spec.outcomes, need(j, "content", ""), "/content"));
    }
    check_horizon(contents.size(), j.contains("horizon") ? "/horizon" : "/contents");
    spec.game.emplace(spec.outcomes, contents);
    if (j.contains("base")) spec.base = parse_base(spec.outcomes, contents.size(), j["base"], "/base");
  }

  const std::size_t h = spec.horizon();
  if (j.contains("payoffs")) {
    if (!j["payoffs"].is_object()) throw SpecError("/payoffs", "expected an object");
    for (auto it = j["payoffs"].begin(); it != j["payoffs"].end(); ++it) {
      auto p = child("/payoffs", it.key());
      Payoff xi = parse_payoff(spec.outcomes, it.value(), p);
      check_fits(xi.depth(), h, p);
      spec.payoffs.emplace(it.key(), std::move(xi));
    }
  }
  if (j.contains("events")) {
    if (!j["events"].is_object()) throw SpecError("/events", "expected an object");
    for (auto it = j["events"].begin(); it != j["events"].end(); ++it) {
      auto p = child("/events", it.key());
      EventWindow e = parse_window(spec.outcomes, it.value(), p);
      check_fits(e.end(), h, p);
      spec.events.emplace(it.key(), std::move(e));
    }
  }
  return spec;
}

LoadedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string dump_spec(const LoadedSpec& spec) {
  json j;
  j["outcomes"] = spec.outcomes.labels();
  j["horizon"] = spec.horizon();
  const json source = spec.source.empty() ? json::object() : json::parse(spec.source);
  if (spec.protocol2) {
    const auto& p2 = *spec.protocol2;
    json preds = json::array();
    for (std::size_t n = 1; n <= p2.horizon(); ++n) {
      json row = json::array();
      for (auto i : p2.allowed(n)) row.push_back(p2.symbols()[i]);
      preds.push_back(row);
    }
    j["predictions"] = preds;
    json contents = json::object();
    for (std::size_t i = 0; i < p2.symbols().size(); ++i) {
      contents[p2.symbols()[i]] = content_json(spec.outcomes, p2.content(i));
    }
    j["contents"] = contents;
    if (spec.forecaster && source.contains("forecaster")) j["forecaster"] = source["forecaster"];
  } else if (spec.game) {
    if (spec.game->depth_independent()) {
      j["content"] = content_json(spec.outcomes, spec.game->content(1));
    } else {
      json contents = json::array();
      for (std::size_t n = 1; n <= spec.game->horizon(); ++n) contents.push_back(content_json(spec.outcomes, spec.game->content(n)));
      j["contents"] = contents;
    }
    if (spec.base) {
      json values = json::object();
      spec.base->for_each([&](const Situation& s, const ExtReal& v) { values[format_situation(spec.outcomes, s)] = v.str(); });
      j["base"] = {{"values", values}};
    }
  }
  if (!spec.payoffs.empty()) {
    json ps = json::object();
    for (const auto& [name, xi] : spec.payoffs) ps[name] = payoff_json(spec.outcomes, xi);
    j["payoffs"] = ps;
  }
  if (!spec.events.empty()) {
    json es = json::object();
    for (const auto& [name, e] : spec.events) es[name] = window_json(spec.outcomes, e);
    j["events"] = es;
  }
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("line " + std::to_string(line_no) + ": unterminated quote");
  return fields;
}

}  // namespace

Supermartingale read_supermartingale_csv(const std::string& text, const OutcomeSet& outcomes) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::map<Situation, ExtReal> values;
  std::size_t depth = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_row(line, line_no);
    if (values.empty() && fields[0] == "situation") continue;
    auto where = "line " + std::to_string(line_no) + ": ";
    if (fields.size() != 2) throw std::invalid_argument(where + "expected two fields: situation,value");
    Situation s;
    try {
      s = parse_situation(outcomes, fields[0]);
    } catch (const std::exception&) {
      throw std::invalid_argument(where + "cannot read situation \"" + fields[0] + "\"");
    }
    ExtReal v;
    try {
      v = ExtReal::parse(fields[1]);
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + e.what());
    }
    if (!values.emplace(s, v).second) {
      throw std::invalid_argument(where + "duplicate situation \"" + display_situation(outcomes, s) + "\"");
    }
    depth = std::max(depth, s.size());
  }
  if (values.empty()) throw std::invalid_argument("empty supermartingale table");
  Limits::current().check_dense(outcomes.size(), depth);
  return Supermartingale::from_function(outcomes.size(), depth, [&](const Situation& s) {
    auto it = values.find(s);
    if (it == values.end()) {
      throw std::invalid_argument("missing value for situation \"" + display_situation(outcomes, s) + "\"");
    }
    return it->second;
  });
}

std::string csv_field(const std::string& s) {
  if (s.empty()) return "\"\"";
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string write_supermartingale_csv(const Supermartingale& s, const OutcomeSet& outcomes) {
  std::ostringstream out;
  out << "situation,value\n";
  s.for_each([&](const Situation& t, const ExtReal& v) {
    out << csv_field(format_situation(outcomes, t)) << ',' << v.str() << '\n';
  });
  return out.str();
}

}  // namespace gtp
