#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "gtp/forecaster.hpp"
#include "gtp/gametree.hpp"
#include "gtp/payoff.hpp"

namespace gtp {

/// Schema violation, located by a JSON pointer such as "/content/measures".
struct SpecError : std::runtime_error {
  SpecError(std::string pointer, const std::string& message)
      : std::runtime_error((pointer.empty() ? std::string("/") : pointer) + ": " + message),
        pointer(std::move(pointer)) {}
  std::string pointer;
};

/// A parsed spec file: a Protocol 1 game or a Protocol 2 spec, plus named payoffs and events.
struct LoadedSpec {
  OutcomeSet outcomes{{"0"}};
  std::optional<GameSpec> game;
  std::optional<Protocol2Spec> protocol2;
  std::optional<ForecastingSystem> forecaster;
  std::optional<Supermartingale> base;  // default base for upcrossing constructions
  std::map<std::string, Payoff> payoffs;
  std::map<std::string, EventWindow> events;
  std::string source;  // normalized JSON text the spec was read from

  std::size_t horizon() const;
  /// Named payoff, or a built-in: e_w<k> (indicator of ω_k = "1"), const:<c>,
  /// cap:<A> (leading ones capped at A), event:<name>.
  Payoff resolve_payoff(const std::string& name) const;
  /// Named event, or w<k>=<label>.
  EventWindow resolve_event(const std::string& name) const;
};

LoadedSpec parse_spec(const std::string& json_text);
LoadedSpec load_spec_file(const std::string& path);
/// Serializes the parsed spec back to JSON (payoffs as tables, events as accepted tuples).
std::string dump_spec(const LoadedSpec& spec);

/// CSV with rows "situation,value"; an optional header row starting with "situation".
Supermartingale read_supermartingale_csv(const std::string& text, const OutcomeSet& outcomes);
std::string write_supermartingale_csv(const Supermartingale& s, const OutcomeSet& outcomes);

/// Quotes a CSV field when needed.
std::string csv_field(const std::string& s);

}  // namespace gtp
