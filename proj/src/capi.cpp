#include "gtp/gtp.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "gtp/expectation.hpp"
#include "gtp/forecaster.hpp"
#include "gtp/laws.hpp"
#include "gtp/spec_io.hpp"
#include "gtp/strategies.hpp"
#include "json.hpp"

struct gtp_spec {
  gtp::LoadedSpec spec;
};

namespace {

using namespace gtp;
using ojson = nlohmann::ordered_json;

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
gtp_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const SpecError& e) {
    last_error = e.what();
    return GTP_INPUT_ERROR;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return GTP_INPUT_ERROR;
  } catch (const std::out_of_range& e) {
    last_error = e.what();
    return GTP_INPUT_ERROR;
  } catch (const std::length_error& e) {
    last_error = std::string("over the size limits: ") + e.what();
    return GTP_INPUT_ERROR;
  } catch (const std::domain_error& e) {
    last_error = e.what();
    return GTP_INPUT_ERROR;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return GTP_INTERNAL_ERROR;
  } catch (...) {
    last_error = "internal error";
    return GTP_INTERNAL_ERROR;
  }
}

std::string text_or(const char* s, const char* fallback = "") { return s ? s : fallback; }

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto at = s.find(sep, start);
    out.push_back(s.substr(start, at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return out;
}

std::size_t to_size(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    auto v = std::stoul(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("cannot read " + what + " \"" + s + "\"");
}

std::pair<Rational, Rational> parse_interval(const std::string& text) {
  auto parts = split(text, ',');
  require(parts.size() == 2, "expected an interval a,b, got \"" + text + "\"");
  return {parse_rational(parts[0]), parse_rational(parts[1])};
}

const GameSpec& protocol1(const LoadedSpec& s, const std::string& what) {
  require(s.game.has_value(), what + " needs a Protocol 1 spec");
  return *s.game;
}

std::string show(const OutcomeSet& o, const Situation& s) { return display_situation(o, s); }

std::string gamble_text(const Gamble& f) {
  std::string out = "(";
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? ", " : "") + f[i].str();
  return out + ")";
}

std::string level_name(AxiomLevel l) { return l == AxiomLevel::outer_content ? "outer-content" : to_string(l); }

std::string trace_header() { return "n,situation,capital,conditional_upper,note\n"; }

void trace_row(std::ostringstream& out, std::size_t n, const OutcomeSet& o, const Situation& s,
               const std::string& capital, const std::string& conditional, const std::string& note) {
  out << n << ',' << csv_field(format_situation(o, s)) << ',' << capital << ',' << conditional << ','
      << (note.empty() ? "" : csv_field(note)) << '\n';
}

// ---------------------------------------------------------------------------

struct ContentGroup {
  std::string where;
  const OuterContent* content;
};

std::vector<ContentGroup> content_groups(const LoadedSpec& s) {
  std::vector<ContentGroup> groups;
  if (s.protocol2) {
    for (std::size_t i = 0; i < s.protocol2->symbols().size(); ++i) {
      groups.push_back({"prediction " + s.protocol2->symbols()[i], &s.protocol2->content(i)});
    }
    return groups;
  }
  const GameSpec& g = *s.game;
  std::size_t first = 1;
  for (std::size_t n = 2; n <= g.horizon() + 1; ++n) {
    if (n <= g.horizon() && g.content(n) == g.content(first)) continue;
    std::string where = first == n - 1 ? "depth " + std::to_string(first)
                                       : "depths " + std::to_string(first) + "-" + std::to_string(n - 1);
    groups.push_back({where, &g.content(first)});
    first = n;
  }
  return groups;
}

ojson witness_json(const AxiomWitness& w) {
  ojson gambles = ojson::array();
  for (const auto& f : w.gambles) {
    ojson g = ojson::array();
    for (const auto& v : f) g.push_back(v.str());
    gambles.push_back(g);
  }
  ojson j = {{"gambles", gambles}};
  if (w.scalar) j["scalar"] = format_rational(*w.scalar);
  j["lhs"] = w.lhs.str();
  j["relation"] = w.relation;
  j["rhs"] = w.rhs.str();
  return j;
}

}  // namespace

extern "C" {

const char* gtp_version(void) { return "0.1.0"; }

const char* gtp_last_error(void) { return last_error.c_str(); }

void gtp_string_free(char* s) { std::free(s); }

gtp_status gtp_extreal_normalize(const char* text, char** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = dup(ExtReal::parse(text).str());
    return GTP_OK;
  });
}

gtp_status gtp_spec_load_file(const char* path, gtp_spec** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new gtp_spec{load_spec_file(path)};
    return GTP_OK;
  });
}

gtp_status gtp_spec_load_json(const char* json, gtp_spec** out) {
  return guard([&] {
    require(json && out, "null argument");
    *out = new gtp_spec{parse_spec(json)};
    return GTP_OK;
  });
}

void gtp_spec_free(gtp_spec* spec) { delete spec; }

int gtp_spec_is_protocol2(const gtp_spec* spec) { return spec && spec->spec.protocol2 ? 1 : 0; }

int gtp_spec_horizon(const gtp_spec* spec) { return spec ? static_cast<int>(spec->spec.horizon()) : 0; }

gtp_status gtp_spec_dump_json(const gtp_spec* spec, char** out) {
  return guard([&] {
    require(spec && out, "null argument");
    *out = dup(dump_spec(spec->spec));
    return GTP_OK;
  });
}

gtp_status gtp_check_axioms(const gtp_spec* spec, int json, char** report) {
  return guard([&] {
    require(spec && report, "null argument");
    bool short_of_declared = false;
    std::ostringstream text;
    ojson all = ojson::array();
    for (const auto& group : content_groups(spec->spec)) {
      AxiomReport r = check_axioms(*group.content);
      if (r.effective < r.declared) short_of_declared = true;
      text << "content at " << group.where << " (" << group.content->kind_name() << "): declared "
           << level_name(r.declared) << ", effective " << level_name(r.effective) << '\n';
      ojson axioms = ojson::array();
      for (const auto& a : r.axioms) {
        text << "  axiom " << a.axiom << " " << a.name << (a.finite_surrogate ? " (finite surrogate)" : "") << ": "
             << (a.passed ? "pass" : "FAIL") << ", " << a.cases << " cases";
        if (a.skipped) text << ", " << a.skipped << " skipped";
        text << '\n';
        if (a.witness) {
          text << "    witness:";
          for (const auto& f : a.witness->gambles) text << ' ' << gamble_text(f);
          if (a.witness->scalar) text << " c=" << format_rational(*a.witness->scalar);
          text << "; needs " << a.witness->lhs.str() << ' ' << a.witness->relation << ' ' << a.witness->rhs.str()
               << '\n';
        }
        ojson aj = {{"axiom", a.axiom},   {"name", a.name},   {"passed", a.passed},
                    {"finite_surrogate", a.finite_surrogate}, {"cases", a.cases}, {"skipped", a.skipped}};
        if (a.witness) aj["witness"] = witness_json(*a.witness);
        axioms.push_back(aj);
      }
      all.push_back({{"where", group.where},
                     {"kind", group.content->kind_name()},
                     {"declared", level_name(r.declared)},
                     {"effective", level_name(r.effective)},
                     {"axioms", axioms}});
    }
    *report = dup(json ? ojson{{"contents", all}}.dump(2) + "\n" : text.str());
    return short_of_declared ? GTP_PROPERTY_VIOLATED : GTP_OK;
  });
}

gtp_status gtp_expect(const gtp_spec* spec, const char* payoff, const char* situation, gtp_variant variant,
                      int lower, char** value) {
  return guard([&] {
    require(spec && payoff && value, "null argument");
    const LoadedSpec& S = spec->spec;
    Payoff xi = S.resolve_payoff(payoff);
    Situation s = parse_situation(S.outcomes, text_or(situation));
    const std::size_t h = S.horizon();
    require(xi.depth() <= h, "payoff depth " + std::to_string(xi.depth()) + " exceeds the horizon");
    require(s.size() <= h, "situation is deeper than the horizon");
    ExtReal v;
    if (variant == GTP_VARIANT_SUP) {
      require(!lower, "the sup variant has no lower counterpart here");
      const GameSpec& g = protocol1(S, "the sup variant");
      v = sup_variant_upper_expectation(g.suffix(s.size()), xi.extended(h).subtree(s));
    } else if (S.protocol2) {
      v = lower ? -native_upper_expectation(*S.protocol2, xi.negated(), s) : native_upper_expectation(*S.protocol2, xi, s);
    } else {
      v = lower ? lower_expectation(*S.game, xi, s) : upper_expectation(*S.game, xi, s);
    }
    *value = dup(v.str());
    return GTP_OK;
  });
}

gtp_status gtp_verify_table(const gtp_spec* spec, const char* csv, char** report) {
  return guard([&] {
    require(spec && csv && report, "null argument");
    const GameSpec game = spec->spec.protocol2 ? embed(*spec->spec.protocol2) : *spec->spec.game;
    Supermartingale table = read_supermartingale_csv(csv, game.outcomes());
    VerifyResult r = verify_supermartingale(game, table);
    if (!r.ok) {
      const auto& w = *r.witness;
      *report = dup(show(game.outcomes(), w.situation) + ": " + w.lhs.str() + " > " + w.rhs.str() + "\n");
      return GTP_PROPERTY_VIOLATED;
    }
    *report = dup(std::string("ok: ") + (r.martingale ? "martingale" : "supermartingale") + " on " +
                  std::to_string(table.node_count()) + " situations\n");
    return GTP_OK;
  });
}

gtp_status gtp_simulate(const gtp_spec* spec, const gtp_simulate_options* options, gtp_simulate_result* result) {
  if (result) *result = gtp_simulate_result{nullptr, nullptr, nullptr, nullptr};
  return guard([&] {
    require(spec && options && result && options->strategy, "null argument");
    const LoadedSpec& S = spec->spec;
    const GameSpec& game = protocol1(S, "simulate");
    const OutcomeSet& o = S.outcomes;
    const std::string strategy = options->strategy;
    const Situation path = parse_path(o, text_or(options->path));
    require(path.size() <= game.horizon(), "path is longer than the horizon");

    std::optional<Payoff> xi;
    std::optional<UpperExpectation> solver;
    if (options->payoff && *options->payoff) {
      xi = S.resolve_payoff(options->payoff);
      require(xi->depth() <= game.horizon(), "payoff depth exceeds the horizon");
      solver.emplace(game, *xi);
    }
    auto conditional = [&](const Situation& s) { return solver ? solver->at(s).str() : std::string(); };

    std::ostringstream trace, summary;
    trace << trace_header();
    gtp_status status = GTP_OK;
    Situation prefix;

    if (strategy == "table") {
      require(options->table_csv, "the table strategy needs a table");
      Supermartingale table = read_supermartingale_csv(options->table_csv, o);
      require(table.arity() == game.arity(), "table arity differs from the game");
      std::vector<ExtReal> caps;
      std::optional<BudgetViolation> violation;
      try {
        caps = capital_process(game, strategy_from_table(table), path);
      } catch (const BudgetViolation& bv) {
        violation = bv;
      }
      const std::size_t rows = violation ? violation->situation.size() + 1 : path.size() + 1;
      for (std::size_t n = 0; n < rows; ++n) {
        prefix.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(n));
        std::string note;
        if (violation && n + 1 == rows) {
          note = "budget violation: move costs " + violation->required.str() + " > capital " +
                 violation->available.str();
        }
        trace_row(trace, n, o, prefix, violation ? table.at(prefix).str() : caps[n].str(), conditional(prefix), note);
      }
      if (violation) {
        summary << "budget violation at " << show(o, violation->situation) << ": " << violation->required.str()
                << " > " << violation->available.str() << '\n';
        status = GTP_PROPERTY_VIOLATED;
      } else {
        summary << "final capital " << caps.back().str() << '\n';
      }
      VerifyResult v = verify_supermartingale(game, table);
      summary << "table verifies: " << (v.ok ? "yes" : "no");
      if (!v.ok) summary << " (" << show(o, v.witness->situation) << ": " << v.witness->lhs.str() << " > "
                         << v.witness->rhs.str() << ")";
      summary << '\n';
    } else if (strategy.rfind("doob:", 0) == 0) {
      auto [a, b] = parse_interval(strategy.substr(5));
      std::optional<Supermartingale> base;
      if (options->base_csv) base = read_supermartingale_csv(options->base_csv, o);
      else base = S.base;
      require(base.has_value(), "doob needs a base supermartingale (--base or \"base\" in the spec)");
      const Situation origin = parse_situation(o, text_or(options->origin));
      DoobResult r = doob_upcrossing(game, *base, a, b, origin);
      for (std::size_t n = 0; n <= path.size(); ++n) {
        prefix.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(n));
        const DoobPhase& ph = r.phase(prefix);
        std::string note;
        if (!ph.in_subtree) {
          note = "outside origin subtree";
        } else {
          note = ph.frozen ? "frozen" : "active";
          if (ph.sigma) note += " sigma_" + std::to_string(ph.k);
          if (ph.tau) note += " tau_" + std::to_string(ph.k);
          note += " base " + r.normalized_base.at(prefix).str();
        }
        trace_row(trace, n, o, prefix, r.table.at(prefix).str(), conditional(prefix), note);
      }
      VerifyResult v = verify_supermartingale(game, r.table);
      Situation end = path;
      summary << "upcrossing supermartingale for (" << format_rational(a) << ", " << format_rational(b)
              << ") from " << show(o, origin) << '\n'
              << "final capital " << r.table.at(end).str() << '\n'
              << "table verifies: " << (v.ok ? "yes" : "no") << '\n';
      if (!v.ok) status = GTP_PROPERTY_VIOLATED;
      result->table_csv = dup(write_supermartingale_csv(r.table, o));
      ojson cuts = {{"a", format_rational(a)}, {"b", format_rational(b)}, {"origin", format_situation(o, origin)}};
      for (const char* name : {"sigma", "tau"}) {
        const auto& list = std::string(name) == "sigma" ? r.trace.sigma : r.trace.tau;
        ojson arr = ojson::array();
        for (const auto& cut : list) {
          ojson members = ojson::array();
          for (const auto& m : cut.members) members.push_back(format_situation(o, m));
          arr.push_back(members);
        }
        cuts[name] = arr;
      }
      result->cut_trace_json = dup(cuts.dump(2) + "\n");
    } else if (strategy.rfind("levy:", 0) == 0) {
      auto [a, b] = parse_interval(strategy.substr(5));
      require(xi.has_value(), "levy needs a payoff");
      const Slack slack = options->dyadic ? Slack::dyadic : Slack::none;
      const Rational shift = levy_shift(*xi);
      auto nodes = levy_capital_along(game, *xi, a, b, slack, path);
      for (std::size_t n = 0; n < nodes.size(); ++n) {
        prefix.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(n));
        const LevyNode& node = nodes[n];
        std::string note = node.riding ? "riding" : "waiting";
        if (node.entered) note += " entered";
        if (node.exited) note += " exit_" + std::to_string(node.exits) + " bound " + format_rational(node.bound);
        trace_row(trace, n, o, prefix, node.capital.str(), (node.conditional + ExtReal(shift)).str(), note);
      }
      summary << "multiplicative strategy for (" << format_rational(a) << ", " << format_rational(b)
              << "), shift " << format_rational(shift) << (options->dyadic ? ", dyadic slack" : "") << '\n'
              << "final capital " << nodes.back().capital.str() << ", exits " << nodes.back().exits << '\n';
      try {
        LevyResult full = levy_strategy(game, *xi, a, b, slack);
        VerifyResult v = verify_supermartingale(game, full.table);
        summary << "table verifies: " << (v.ok ? "yes" : "no") << '\n';
        if (!v.ok) status = GTP_PROPERTY_VIOLATED;
        result->table_csv = dup(write_supermartingale_csv(full.table, o));
      } catch (const std::length_error&) {
        summary << "table not built: tree over the dense limit\n";
      }
    } else {
      throw std::invalid_argument("unknown strategy \"" + strategy + "\"; expected table, doob:a,b or levy:a,b");
    }
    result->trace_csv = dup(trace.str());
    result->summary = dup(summary.str());
    return status;
  });
}

void gtp_simulate_result_free(gtp_simulate_result* result) {
  if (!result) return;
  std::free(result->trace_csv);
  std::free(result->summary);
  std::free(result->table_csv);
  std::free(result->cut_trace_json);
  *result = gtp_simulate_result{nullptr, nullptr, nullptr, nullptr};
}

gtp_status gtp_law(const gtp_spec* spec, const char* law, const gtp_law_options* options, gtp_law_result* result) {
  if (result) *result = gtp_law_result{nullptr, nullptr};
  return guard([&] {
    require(spec && law && options && result, "null argument");
    const LoadedSpec& S = spec->spec;
    const OutcomeSet& o = S.outcomes;
    const std::string name = law;
    const auto event_names = split(text_or(options->events), ',');
    auto first_event = [&] {
      require(!event_names.empty(), name + " needs an event");
      return S.resolve_event(event_names.front());
    };
    std::ostringstream text;
    ojson j = {{"law", name}, {"surrogate", "finite-horizon"}};
    gtp_status status = GTP_OK;

    if (name == "levy") {
      const GameSpec& game = protocol1(S, "levy");
      require(options->payoff && *options->payoff, "levy needs a payoff");
      Payoff xi = S.resolve_payoff(options->payoff);
      require(xi.depth() <= game.horizon(), "payoff depth exceeds the horizon");
      std::vector<Situation> paths;
      for (const auto& p : split(text_or(options->paths), ';')) paths.push_back(parse_path(o, p));
      if (paths.empty()) {
        Limits::current().check_dense(game.arity(), xi.depth());
        paths = situations_of_length(game.arity(), xi.depth());
      }
      LevyExperimentReport r = levy_experiment(game, xi, paths);
      std::ostringstream trace;
      trace << trace_header();
      text << "finite-horizon surrogate of the Levy zero-one law, payoff depth " << xi.depth() << '\n';
      ojson rows = ojson::array();
      std::size_t matched = 0;
      for (const auto& p : r.paths) {
        std::string label;
        for (std::size_t i = 0; i < p.path.size(); ++i) label += (i ? "," : "") + o.label(p.path[i]);
        text << "path " << (label.empty() ? "□" : label) << ":";
        ojson conds = ojson::array();
        for (std::size_t n = 0; n < p.conditionals.size(); ++n) {
          text << ' ' << p.conditionals[n].str();
          conds.push_back(p.conditionals[n].str());
          Situation prefix(p.path.begin(), p.path.begin() + static_cast<std::ptrdiff_t>(n));
          trace_row(trace, n, o, prefix, "", p.conditionals[n].str(),
                    n + 1 == p.conditionals.size() ? "payoff " + p.payoff.str() : "");
        }
        text << " -> payoff " << p.payoff.str() << (p.terminal_matches ? ", terminal match" : ", TERMINAL MISMATCH")
             << (p.martingale_steps ? "" : ", MARTINGALE STEP FAILS");
        if (r.indicator) text << (p.in_event ? ", in event" : ", not in event") << (p.reaches_one ? ", reaches 1" : "");
        text << '\n';
        if (p.terminal_matches && p.martingale_steps) ++matched;
        ojson row = {{"path", format_situation(o, p.path)}, {"conditionals", conds}, {"payoff", p.payoff.str()},
                     {"terminal_matches", p.terminal_matches}, {"martingale_steps", p.martingale_steps}};
        if (r.indicator) {
          row["in_event"] = p.in_event;
          row["reaches_one"] = p.reaches_one;
        }
        rows.push_back(row);
      }
      text << matched << "/" << r.paths.size() << " paths end at the payoff with martingale steps\n";
      j["indicator"] = r.indicator;
      j["paths"] = rows;
      if (matched != r.paths.size()) status = GTP_PROPERTY_VIOLATED;
      result->trace_csv = dup(trace.str());
    } else if (name == "kolmogorov") {
      const GameSpec& game = protocol1(S, "kolmogorov");
      EventWindow e = first_event();
      KolmogorovReport r = kolmogorov_invariance(game, e);
      text << "finite-horizon surrogate of Kolmogorov's zero-one law, window " << e.start() << ".." << e.end() << '\n';
      ojson values = ojson::object();
      for (const auto& [s, v] : r.values) {
        text << "  upper probability given " << show(o, s) << ": " << v.str() << '\n';
        values[format_situation(o, s)] = v.str();
      }
      text << "invariant across prefixes: " << (r.invariant ? "yes" : "NO") << '\n'
           << "translated witness " << show(o, r.from) << " -> " << show(o, r.to) << " verifies: "
           << (r.witness_verified ? "yes" : "NO") << '\n';
      j["start"] = r.start;
      j["values"] = values;
      j["invariant"] = r.invariant;
      j["witness_verified"] = r.witness_verified;
      if (!r.invariant || !r.witness_verified) status = GTP_PROPERTY_VIOLATED;
    } else if (name == "ergodic") {
      const GameSpec& game = protocol1(S, "ergodic");
      EventWindow e = first_event();
      Situation s = parse_situation(o, text_or(options->situation));
      ErgodicReport r = ergodic_bound(game, e, s);
      text << "finite-horizon surrogate of the shift bound, situation " << show(o, s) << '\n';
      if (!r.precondition) {
        text << "precondition fails: " << show(o, s) << " followed by " << show(o, *r.counterexample)
             << " is in the event but " << show(o, *r.counterexample) << " is not\n";
      }
      text << "upper probability given " << show(o, s) << ": " << r.conditional.str() << '\n'
           << "unconditional upper probability: " << r.unconditional.str() << '\n'
           << "bound holds: " << (r.holds ? "yes" : "NO") << '\n'
           << "shifted witness verifies: " << (r.witness_verified ? "yes" : "NO") << '\n';
      j["precondition"] = r.precondition;
      if (r.counterexample) j["counterexample"] = format_situation(o, *r.counterexample);
      j["conditional"] = r.conditional.str();
      j["unconditional"] = r.unconditional.str();
      j["holds"] = r.holds;
      j["witness_verified"] = r.witness_verified;
      if (!r.precondition || !r.holds || !r.witness_verified) status = GTP_PROPERTY_VIOLATED;
    } else if (name == "mixing") {
      require(S.protocol2.has_value(), "mixing needs a Protocol 2 spec");
      require(S.forecaster.has_value(), "mixing needs a forecaster in the spec");
      require(options->delta && *options->delta, "mixing needs delta");
      const Rational delta = parse_rational(options->delta);
      std::map<std::size_t, std::size_t> gap;
      for (const auto& item : split(text_or(options->gaps), ',')) {
        auto colon = item.find(':');
        require(colon != std::string::npos, "gap entries look like n:a, got \"" + item + "\"");
        gap[to_size(item.substr(0, colon), "depth")] = to_size(item.substr(colon + 1), "gap");
      }
      std::vector<std::size_t> ns;
      for (const auto& n : split(text_or(options->ns), ',')) ns.push_back(to_size(n, "depth"));
      require(!ns.empty(), "mixing needs at least one depth n");
      std::vector<EventWindow> events;
      for (const auto& e : event_names) events.push_back(S.resolve_event(e));
      require(!events.empty(), "mixing needs at least one event");
      std::vector<Situation> exceptions;
      for (const auto& x : split(text_or(options->exceptions), ';')) exceptions.push_back(parse_situation(o, x));
      MixingReport r = delta_mixing_check(*S.protocol2, *S.forecaster, delta, gap, events, ns, exceptions);
      text << "finite-horizon surrogate of delta-mixing with delta " << format_rational(delta)
           << ", checked over the listed events only\n";
      ojson rows = ojson::array();
      for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        if (row.violated) {
          text << "  violated: n=" << row.n << " event " << event_names[row.event] << " given " << show(o, row.chi)
               << ": " << row.conditional.str() << " - " << row.unconditional.str() << " = " << row.margin.str()
               << " > " << format_rational(delta) << '\n';
        }
        rows.push_back({{"n", row.n},
                        {"event", event_names[row.event]},
                        {"chi", format_situation(o, row.chi)},
                        {"conditional", row.conditional.str()},
                        {"unconditional", row.unconditional.str()},
                        {"margin", row.margin.str()},
                        {"violated", row.violated},
                        {"trivially_bounded", row.trivially_bounded}});
      }
      if (r.worst_row) {
        const auto& w = r.rows[*r.worst_row];
        text << "worst margin " << r.worst_margin->str() << " at n=" << w.n << ", event " << event_names[w.event]
             << ", given " << show(o, w.chi) << '\n';
        j["worst_margin"] = r.worst_margin->str();
      }
      ojson dich = ojson::object();
      for (std::size_t e = 0; e < r.dichotomy.size(); ++e) {
        text << "event " << event_names[e] << ": upper probability 0 or >= 1 - delta: "
             << (r.dichotomy[e] ? "yes" : "no") << '\n';
        dich[event_names[e]] = static_cast<bool>(r.dichotomy[e]);
      }
      text << r.rows.size() << " checks, " << r.skipped << " excepted prefixes skipped, "
           << (r.violated ? "VIOLATED" : "holds") << '\n';
      j["rows"] = rows;
      j["dichotomy"] = dich;
      j["skipped"] = r.skipped;
      j["violated"] = r.violated;
      if (r.violated) status = GTP_PROPERTY_VIOLATED;
    } else if (name == "classify") {
      const GameSpec& game = protocol1(S, "classify");
      EventWindow e = first_event();
      std::vector<std::size_t> horizons;
      for (const auto& h : split(text_or(options->horizons), ',')) horizons.push_back(to_size(h, "horizon"));
      if (horizons.empty()) horizons.push_back(game.horizon());
      ZeroOneReport r = zero_one_classify(game, e, horizons);
      text << "finite-horizon surrogate classification of event " << event_names.front() << '\n';
      ojson rows = ojson::array();
      for (const auto& row : r.rows) {
        text << "  horizon " << row.horizon << ": lower " << row.lower.str() << ", upper " << row.upper.str() << ", "
             << to_string(row.cls) << '\n';
        rows.push_back({{"horizon", row.horizon},
                        {"lower", row.lower.str()},
                        {"upper", row.upper.str()},
                        {"class", to_string(row.cls)}});
      }
      text << "class at the largest horizon: " << to_string(r.overall) << '\n';
      j["rows"] = rows;
      j["class"] = to_string(r.overall);
    } else {
      throw std::invalid_argument("unknown law \"" + name + "\"; expected levy, kolmogorov, ergodic, mixing or classify");
    }
    result->report = dup(options->json ? j.dump(2) + "\n" : text.str());
    return status;
  });
}

void gtp_law_result_free(gtp_law_result* result) {
  if (!result) return;
  std::free(result->report);
  std::free(result->trace_csv);
  *result = gtp_law_result{nullptr, nullptr};
}

}  // extern "C"
