// Command-line front end. Talks to the library only through gtp.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gtp/gtp.h"

namespace {

struct InputError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot open " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError{"cannot write " + path};
  out << (text ? text : "");
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? std::string(1, sep) : "") + items[i];
  return out;
}

int exit_code(gtp_status s) {
  switch (s) {
    case GTP_OK: return 0;
    case GTP_PROPERTY_VIOLATED: return 1;
    case GTP_INPUT_ERROR: return 2;
    default: return 3;
  }
}

int fail(gtp_status s) {
  std::cerr << "error: " << gtp_last_error() << '\n';
  return exit_code(s);
}

// Owns a loaded spec handle.
struct Spec {
  gtp_spec* handle = nullptr;
  ~Spec() { gtp_spec_free(handle); }
};

struct Text {
  char* p = nullptr;
  ~Text() { gtp_string_free(p); }
};

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game-theoretic probability on finite-horizon games, in exact arithmetic"};
  app.set_version_flag("--version", gtp_version());
  app.require_subcommand(1);

  std::string spec_path;
  bool json = false;

  auto* axioms = app.add_subcommand("axioms", "Check the five axioms for every content of a spec");
  axioms->add_option("spec", spec_path, "Spec file (JSON)")->required();
  axioms->add_flag("--json", json, "JSON report");

  std::string payoff, situation, variant = "liminf";
  bool lower = false;
  auto* expect = app.add_subcommand("expect", "Conditional upper or lower expectation of a payoff");
  expect->add_option("spec", spec_path, "Spec file (JSON)")->required();
  expect->add_option("--payoff", payoff, "Payoff name: from the spec, e_w<k>, const:<c>, cap:<A>, event:<name>")
      ->required();
  expect->add_option("--situation", situation, "Situation, \"\" for the root");
  expect->add_option("--variant", variant, "liminf or sup")->check(CLI::IsMember({"liminf", "sup"}));
  expect->add_flag("--lower", lower, "Lower expectation");

  std::string strategy, path, base_path, origin, trace_path, table_out, cut_trace_out;
  bool dyadic = false;
  auto* simulate = app.add_subcommand("simulate", "Run a strategy along a path");
  simulate->add_option("spec", spec_path, "Spec file (JSON)")->required();
  simulate->add_option("--strategy", strategy, "Table CSV file, doob:a,b or levy:a,b")->required();
  simulate->add_option("--path", path, "Comma-separated outcomes, e.g. 1,0,1,1");
  simulate->add_option("--payoff", payoff, "Payoff for levy, and for the conditional_upper column");
  simulate->add_option("--base", base_path, "Base supermartingale CSV for doob");
  simulate->add_option("--origin", origin, "Start situation for doob");
  simulate->add_flag("--dyadic", dyadic, "levy: dyadic slack instead of exact witnesses");
  simulate->add_option("--trace", trace_path, "Write the trace CSV here instead of stdout");
  simulate->add_option("--table-out", table_out, "Write the constructed table as CSV");
  simulate->add_option("--cut-trace", cut_trace_out, "doob: write the cut trace as JSON");

  std::string table_path;
  auto* verify = app.add_subcommand("verify", "Check a supermartingale table");
  verify->add_option("spec", spec_path, "Spec file (JSON)")->required();
  verify->add_option("--supermartingale", table_path, "Table CSV (situation,value)")->required();

  std::string law_name, delta, ns, horizons;
  std::vector<std::string> events, paths, gaps, exceptions;
  auto* law = app.add_subcommand("law", "Finite-horizon checks of the zero-one laws");
  law->add_option("law", law_name, "levy, kolmogorov, ergodic, mixing or classify")
      ->required()
      ->check(CLI::IsMember({"levy", "kolmogorov", "ergodic", "mixing", "classify"}));
  law->add_option("spec", spec_path, "Spec file (JSON)")->required();
  law->add_option("--payoff", payoff, "levy: payoff name");
  law->add_option("--event", events, "Event name, or w<k>=<label>; repeatable");
  law->add_option("--path", paths, "levy: path to trace; repeatable, all paths by default");
  law->add_option("--situation", situation, "ergodic: conditioning situation");
  law->add_option("--delta", delta, "mixing: delta");
  law->add_option("--gap", gaps, "mixing: n:a; repeatable");
  law->add_option("--n", ns, "mixing: comma-separated depths");
  law->add_option("--exception", exceptions, "mixing: excepted outcome prefix; repeatable");
  law->add_option("--horizons", horizons, "classify: comma-separated horizons");
  law->add_option("--trace", trace_path, "levy: write conditional traces as CSV");
  law->add_flag("--json", json, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Spec spec;
    if (gtp_status s = gtp_spec_load_file(spec_path.c_str(), &spec.handle); s != GTP_OK) return fail(s);

    if (axioms->parsed()) {
      Text report;
      gtp_status s = gtp_check_axioms(spec.handle, json ? 1 : 0, &report.p);
      if (s != GTP_OK && s != GTP_PROPERTY_VIOLATED) return fail(s);
      std::cout << report.p;
      return exit_code(s);
    }

    if (expect->parsed()) {
      Text value;
      gtp_status s = gtp_expect(spec.handle, payoff.c_str(), situation.c_str(),
                                variant == "sup" ? GTP_VARIANT_SUP : GTP_VARIANT_LIMINF, lower ? 1 : 0, &value.p);
      if (s != GTP_OK) return fail(s);
      std::cout << value.p << '\n';
      return 0;
    }

    if (verify->parsed()) {
      std::string csv = read_file(table_path);
      Text report;
      gtp_status s = gtp_verify_table(spec.handle, csv.c_str(), &report.p);
      if (s != GTP_OK && s != GTP_PROPERTY_VIOLATED) return fail(s);
      std::cout << report.p;
      return exit_code(s);
    }

    if (simulate->parsed()) {
      gtp_simulate_options o{};
      std::string table_csv, base_csv;
      if (strategy.rfind("doob:", 0) == 0 || strategy.rfind("levy:", 0) == 0) {
        o.strategy = strategy.c_str();
      } else {
        table_csv = read_file(strategy);
        o.strategy = "table";
        o.table_csv = table_csv.c_str();
      }
      if (!base_path.empty()) {
        base_csv = read_file(base_path);
        o.base_csv = base_csv.c_str();
      }
      o.payoff = opt(payoff);
      o.path = path.c_str();
      o.origin = origin.c_str();
      o.dyadic = dyadic ? 1 : 0;
      gtp_simulate_result r{};
      gtp_status s = gtp_simulate(spec.handle, &o, &r);
      if (s != GTP_OK && s != GTP_PROPERTY_VIOLATED) {
        gtp_simulate_result_free(&r);
        return fail(s);
      }
      if (trace_path.empty()) std::cout << r.trace_csv;
      else write_file(trace_path, r.trace_csv);
      std::cout << r.summary;
      if (!table_out.empty()) write_file(table_out, r.table_csv);
      if (!cut_trace_out.empty()) write_file(cut_trace_out, r.cut_trace_json);
      gtp_simulate_result_free(&r);
      return exit_code(s);
    }

    if (law->parsed()) {
      std::string events_s = join(events, ','), paths_s = join(paths, ';'), gaps_s = join(gaps, ','),
                  exceptions_s = join(exceptions, ';');
      gtp_law_options o{};
      o.payoff = opt(payoff);
      o.events = opt(events_s);
      o.paths = opt(paths_s);
      o.situation = situation.c_str();
      o.delta = opt(delta);
      o.gaps = opt(gaps_s);
      o.ns = opt(ns);
      o.exceptions = opt(exceptions_s);
      o.horizons = opt(horizons);
      o.json = json ? 1 : 0;
      gtp_law_result r{};
      gtp_status s = gtp_law(spec.handle, law_name.c_str(), &o, &r);
      if (s != GTP_OK && s != GTP_PROPERTY_VIOLATED) {
        gtp_law_result_free(&r);
        return fail(s);
      }
      std::cout << r.report;
      if (!trace_path.empty()) write_file(trace_path, r.trace_csv ? r.trace_csv : "");
      gtp_law_result_free(&r);
      return exit_code(s);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << '\n';
    return 2;
  }
  return 2;
}
