#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "gtp/gtp.h"

namespace {

std::string fixture(const std::string& name) { return std::string(GTP_SPECS_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Owns one loaded spec and frees returned strings.
struct Loaded {
  gtp_spec* spec = nullptr;
  explicit Loaded(const std::string& name) {
    EXPECT_EQ(gtp_spec_load_file(fixture(name).c_str(), &spec), GTP_OK) << gtp_last_error();
  }
  ~Loaded() { gtp_spec_free(spec); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  gtp_string_free(s);
  return out;
}

std::string expect_value(const gtp_spec* spec, const char* payoff, const char* situation,
                         gtp_variant variant = GTP_VARIANT_LIMINF, int lower = 0) {
  char* v = nullptr;
  gtp_status s = gtp_expect(spec, payoff, situation, variant, lower, &v);
  EXPECT_EQ(s, GTP_OK) << gtp_last_error();
  return take(v);
}

}  // namespace

TEST(CApi, Normalize) {
  char* out = nullptr;
  ASSERT_EQ(gtp_extreal_normalize("6/4", &out), GTP_OK);
  EXPECT_EQ(take(out), "3/2");
  ASSERT_EQ(gtp_extreal_normalize("-inf", &out), GTP_OK);
  EXPECT_EQ(take(out), "-inf");
  EXPECT_EQ(gtp_extreal_normalize("0.5", &out), GTP_INPUT_ERROR);
  EXPECT_NE(std::string(gtp_last_error()), "");
  EXPECT_EQ(gtp_extreal_normalize(nullptr, &out), GTP_INPUT_ERROR);
}

TEST(CApi, LoadErrors) {
  gtp_spec* spec = nullptr;
  EXPECT_EQ(gtp_spec_load_json(R"({"outcomes":["0","1"],"horizon":2,"content":{"type":"envelope","measures":[]}})",
                               &spec),
            GTP_INPUT_ERROR);
  EXPECT_EQ(spec, nullptr);
  EXPECT_NE(std::string(gtp_last_error()).find("/content/measures"), std::string::npos);
  EXPECT_EQ(gtp_spec_load_file("/nonexistent/spec.json", &spec), GTP_INPUT_ERROR);
  gtp_spec_free(nullptr);
}

TEST(CApi, Expectations) {
  Loaded coin("coin.json");
  EXPECT_EQ(gtp_spec_horizon(coin.spec), 4);
  EXPECT_EQ(gtp_spec_is_protocol2(coin.spec), 0);
  EXPECT_EQ(expect_value(coin.spec, "e_w1", ""), "1/2");
  EXPECT_EQ(expect_value(coin.spec, "heads_run", "1"), "3");
  EXPECT_EQ(expect_value(coin.spec, "cap:4", "", GTP_VARIANT_SUP), "1");
  Loaded sup("sup.json");
  EXPECT_EQ(expect_value(sup.spec, "heads_run", ""), "4");
  EXPECT_EQ(expect_value(sup.spec, "heads_run", "", GTP_VARIANT_LIMINF, 1), "1");
  Loaded p2("forecaster.json");
  EXPECT_EQ(gtp_spec_is_protocol2(p2.spec), 1);
  EXPECT_EQ(expect_value(p2.spec, "event:third_is_one", ""), "3/4");
  EXPECT_EQ(expect_value(p2.spec, "event:third_is_one", "", GTP_VARIANT_LIMINF, 1), "1/4");

  char* v = nullptr;
  EXPECT_EQ(gtp_expect(coin.spec, "nope", "", GTP_VARIANT_LIMINF, 0, &v), GTP_INPUT_ERROR);
  EXPECT_EQ(gtp_expect(coin.spec, "e_w1", "0102", GTP_VARIANT_LIMINF, 0, &v), GTP_INPUT_ERROR);
}

TEST(CApi, Verify) {
  Loaded coin("coin.json");
  char* report = nullptr;
  EXPECT_EQ(gtp_verify_table(coin.spec, slurp(fixture("bad.csv")).c_str(), &report), GTP_PROPERTY_VIOLATED);
  EXPECT_EQ(take(report), "□: 2 > 1\n");
  EXPECT_EQ(gtp_verify_table(coin.spec, "situation,value\n,1\n0,1\n1,1\n", &report), GTP_OK);
  EXPECT_NE(take(report).find("martingale"), std::string::npos);
  EXPECT_EQ(gtp_verify_table(coin.spec, "situation,value\n,1\n", &report), GTP_OK);
  take(report);
  EXPECT_EQ(gtp_verify_table(coin.spec, "situation,value\n0,1\n", &report), GTP_INPUT_ERROR);
}

TEST(CApi, Axioms) {
  Loaded coin("coin.json");
  char* report = nullptr;
  ASSERT_EQ(gtp_check_axioms(coin.spec, 0, &report), GTP_OK);
  EXPECT_NE(take(report).find("axiom 3 subadditivity: pass"), std::string::npos);
  ASSERT_EQ(gtp_check_axioms(coin.spec, 1, &report), GTP_OK);
  EXPECT_EQ(take(report).front(), '{');

  gtp_spec* bad = nullptr;
  ASSERT_EQ(gtp_spec_load_json(R"({"outcomes":["0","1"],"horizon":1,"content":{"type":"table",
      "declared":"superexpectation","entries":[{"gamble":["0","1"],"value":"1"},{"gamble":["1","0"],"value":"1"},
      {"gamble":["1","1"],"value":"3"}]}})",
                               &bad),
            GTP_OK)
      << gtp_last_error();
  EXPECT_EQ(gtp_check_axioms(bad, 0, &report), GTP_PROPERTY_VIOLATED);
  EXPECT_NE(take(report).find("axiom 3 subadditivity: FAIL"), std::string::npos);
  gtp_spec_free(bad);
}

TEST(CApi, SimulateDoob) {
  Loaded coin("coin.json");
  gtp_simulate_options o{};
  o.strategy = "doob:4/5,6/5";
  o.path = "1,0,1,1";
  gtp_simulate_result r{};
  ASSERT_EQ(gtp_simulate(coin.spec, &o, &r), GTP_OK) << gtp_last_error();
  std::string trace = r.trace_csv;
  EXPECT_EQ(trace.substr(0, trace.find('\n')), "n,situation,capital,conditional_upper,note");
  EXPECT_NE(trace.find("4,1011,39/16"), std::string::npos);
  EXPECT_NE(std::string(r.cut_trace_json).find("\"sigma\""), std::string::npos);
  EXPECT_NE(r.table_csv, nullptr);
  gtp_simulate_result_free(&r);
  EXPECT_EQ(r.trace_csv, nullptr);
}

TEST(CApi, SimulateLevyAndTable) {
  Loaded coin("coin.json");
  gtp_simulate_options o{};
  o.strategy = "levy:3/5,9/10";
  o.payoff = "w3=1";
  o.path = "1,0,1";
  gtp_simulate_result r{};
  EXPECT_EQ(gtp_simulate(coin.spec, &o, &r), GTP_INPUT_ERROR);  // an event name, not a payoff
  gtp_simulate_result_free(&r);
  o.payoff = "e_w3";
  ASSERT_EQ(gtp_simulate(coin.spec, &o, &r), GTP_OK) << gtp_last_error();
  EXPECT_NE(std::string(r.trace_csv).find("3,101,2,"), std::string::npos) << r.trace_csv;
  gtp_simulate_result_free(&r);

  gtp_simulate_options t{};
  t.strategy = "table";
  std::string bad = slurp(fixture("bad.csv"));
  t.table_csv = bad.c_str();
  t.path = "0";
  ASSERT_EQ(gtp_simulate(coin.spec, &t, &r), GTP_PROPERTY_VIOLATED);
  EXPECT_NE(std::string(r.summary).find("budget violation"), std::string::npos);
  gtp_simulate_result_free(&r);

  t.strategy = "martingale";
  EXPECT_EQ(gtp_simulate(coin.spec, &t, &r), GTP_INPUT_ERROR);
  gtp_simulate_result_free(&r);
}

TEST(CApi, Laws) {
  Loaded coin("coin.json");
  gtp_law_options o{};
  o.events = "tail_pair";
  gtp_law_result r{};
  ASSERT_EQ(gtp_law(coin.spec, "kolmogorov", &o, &r), GTP_OK) << gtp_last_error();
  EXPECT_NE(std::string(r.report).find("invariant across prefixes: yes"), std::string::npos);
  gtp_law_result_free(&r);

  o.events = "some_one_late";
  o.situation = "1";
  EXPECT_EQ(gtp_law(coin.spec, "ergodic", &o, &r), GTP_PROPERTY_VIOLATED);
  gtp_law_result_free(&r);

  gtp_law_options levy{};
  levy.payoff = "heads_run";
  ASSERT_EQ(gtp_law(coin.spec, "levy", &levy, &r), GTP_OK) << gtp_last_error();
  EXPECT_NE(r.trace_csv, nullptr);
  gtp_law_result_free(&r);

  EXPECT_EQ(gtp_law(coin.spec, "strong", &o, &r), GTP_INPUT_ERROR);
  gtp_law_result_free(&r);

  Loaded p2("forecaster.json");
  gtp_law_options m{};
  m.events = "third_is_one";
  m.delta = "1/10";
  m.gaps = "1:1";
  m.ns = "1";
  EXPECT_EQ(gtp_law(p2.spec, "mixing", &m, &r), GTP_PROPERTY_VIOLATED);
  EXPECT_NE(std::string(r.report).find("1/8"), std::string::npos);
  gtp_law_result_free(&r);
  m.exceptions = "1";
  EXPECT_EQ(gtp_law(p2.spec, "mixing", &m, &r), GTP_OK) << gtp_last_error();
  gtp_law_result_free(&r);
}

TEST(CApi, DumpRoundTrip) {
  Loaded p2("forecaster.json");
  char* text = nullptr;
  ASSERT_EQ(gtp_spec_dump_json(p2.spec, &text), GTP_OK);
  std::string first = take(text);
  gtp_spec* again = nullptr;
  ASSERT_EQ(gtp_spec_load_json(first.c_str(), &again), GTP_OK) << gtp_last_error();
  ASSERT_EQ(gtp_spec_dump_json(again, &text), GTP_OK);
  EXPECT_EQ(take(text), first);
  EXPECT_EQ(expect_value(again, "event:third_is_one", ""), "3/4");
  gtp_spec_free(again);
}
