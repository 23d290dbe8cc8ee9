#include "gtp/functionals.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace gtp {

OutcomeSet::OutcomeSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("outcome set must be non-empty");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("outcome labels must be non-empty");
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate outcome label '" + l + "'");
    if (l.size() != 1) compact_ = false;
  }
  if (!compact_) {
    for (const auto& l : labels_) {
      if (l.find('.') != std::string::npos) {
        throw std::invalid_argument("multi-character outcome labels must not contain '.'");
      }
    }
  }
}

std::optional<std::size_t> OutcomeSet::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t OutcomeSet::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw std::invalid_argument("unknown outcome label '" + std::string(label) + "'");
}

std::string to_string(AxiomLevel level) {
  switch (level) {
    case AxiomLevel::none: return "none";
    case AxiomLevel::outer_content: return "outer-content";
    case AxiomLevel::superexpectation: return "superexpectation";
  }
  return "none";
}

namespace {

void check_probability_map(std::size_t outcomes, const ProbabilityMap& p) {
  if (p.size() != outcomes) throw std::invalid_argument("probability map has wrong number of outcomes");
  Rational total = 0;
  for (const auto& q : p) {
    if (sgn(q) < 0) throw std::invalid_argument("probabilities must be non-negative");
    total += q;
  }
  if (total != 1) throw std::invalid_argument("probabilities must sum to exactly 1");
}

ExtReal measure_value(const ProbabilityMap& p, std::span<const ExtReal> f) {
  ExtReal total(0);
  for (std::size_t i = 0; i < p.size(); ++i) total += scale(p[i], f[i]);
  return total;
}

}  // namespace

OuterContent::OuterContent(std::size_t outcomes, Kind kind, AxiomLevel declared)
    : outcomes_(outcomes), kind_(std::move(kind)), declared_(declared) {
  if (outcomes_ == 0) throw std::invalid_argument("content needs at least one outcome");
}

OuterContent OuterContent::measure(std::size_t outcomes, ProbabilityMap probs) {
  check_probability_map(outcomes, probs);
  return OuterContent(outcomes, Measure{std::move(probs)}, AxiomLevel::superexpectation);
}

OuterContent OuterContent::sup(std::size_t outcomes) {
  return OuterContent(outcomes, Sup{}, AxiomLevel::superexpectation);
}

OuterContent OuterContent::envelope(std::size_t outcomes, std::vector<ProbabilityMap> measures) {
  if (measures.empty()) throw std::invalid_argument("envelope needs at least one measure");
  for (const auto& m : measures) check_probability_map(outcomes, m);
  return OuterContent(outcomes, Envelope{std::move(measures)}, AxiomLevel::superexpectation);
}

OuterContent OuterContent::table(std::size_t outcomes, std::map<Gamble, ExtReal> entries, AxiomLevel declared) {
  for (const auto& [g, v] : entries) {
    if (g.size() != outcomes) throw std::invalid_argument("table entry has wrong number of outcomes");
  }
  OuterContent c(outcomes, Table{std::move(entries)}, declared);
  c.identity_ = std::make_shared<int>(0);
  return c;
}

OuterContent OuterContent::custom(std::size_t outcomes, std::string name,
                                  std::function<ExtReal(std::span<const ExtReal>)> fn, AxiomLevel declared) {
  if (!fn) throw std::invalid_argument("custom content needs a callable");
  OuterContent c(outcomes, Function{std::move(name), std::move(fn)}, declared);
  c.identity_ = std::make_shared<int>(0);
  return c;
}

ExtReal OuterContent::eval(std::span<const ExtReal> f) const {
  if (f.size() != outcomes_) {
    throw std::invalid_argument("outcome-set mismatch: gamble has " + std::to_string(f.size()) +
                                " values, content expects " + std::to_string(outcomes_));
  }
  return std::visit(
      [&](const auto& k) -> ExtReal {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Measure>) {
          return measure_value(k.probs, f);
        } else if constexpr (std::is_same_v<K, Sup>) {
          return *std::max_element(f.begin(), f.end());
        } else if constexpr (std::is_same_v<K, Envelope>) {
          ExtReal best = measure_value(k.measures.front(), f);
          for (std::size_t i = 1; i < k.measures.size(); ++i) best = std::max(best, measure_value(k.measures[i], f));
          return best;
        } else if constexpr (std::is_same_v<K, Table>) {
          auto it = k.entries.find(Gamble(f.begin(), f.end()));
          if (it == k.entries.end()) throw std::out_of_range("gamble not in content table");
          return it->second;
        } else {
          return k.fn(f);
        }
      },
      kind_);
}

std::string OuterContent::kind_name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Measure>) return "measure";
        else if constexpr (std::is_same_v<K, Sup>) return "sup";
        else if constexpr (std::is_same_v<K, Envelope>) return "envelope";
        else if constexpr (std::is_same_v<K, Table>) return "table";
        else return k.name;
      },
      kind_);
}

bool OuterContent::is_builtin() const { return !identity_; }

bool operator==(const OuterContent& a, const OuterContent& b) {
  if (a.outcomes_ != b.outcomes_ || a.kind_.index() != b.kind_.index()) return false;
  if (a.identity_ || b.identity_) return a.identity_ == b.identity_;
  if (const auto* m = std::get_if<OuterContent::Measure>(&a.kind_)) {
    return m->probs == std::get<OuterContent::Measure>(b.kind_).probs;
  }
  if (const auto* e = std::get_if<OuterContent::Envelope>(&a.kind_)) {
    return e->measures == std::get<OuterContent::Envelope>(b.kind_).measures;
  }
  return true;  // sup
}

ExtReal eval(const OuterContent& content, std::span<const ExtReal> f) { return content.eval(f); }

// ---------------------------------------------------------------------------

bool AxiomReport::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& r) { return r.passed; });
}

std::vector<ExtReal> default_grid_values() {
  return {ExtReal::neg_infinity(), ExtReal(-1), ExtReal(0), ExtReal::ratio(1, 2),
          ExtReal(1),              ExtReal(2),  ExtReal::infinity()};
}

std::vector<Gamble> default_grid(std::size_t outcomes) {
  const auto values = default_grid_values();
  std::vector<Gamble> out;
  if (outcomes <= 3) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < outcomes; ++i) total *= values.size();
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
      Gamble g(outcomes);
      std::size_t c = code;
      for (std::size_t i = outcomes; i-- > 0;) {
        g[i] = values[c % values.size()];
        c /= values.size();
      }
      out.push_back(std::move(g));
    }
    return out;
  }
  std::mt19937 rng(20090607u);
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  for (int n = 0; n < 512; ++n) {
    Gamble g(outcomes);
    for (auto& v : g) v = values[pick(rng)];
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

Gamble add(const Gamble& f, const Gamble& g) {
  Gamble h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[i] + g[i];
  return h;
}

Gamble scaled(const Rational& c, const Gamble& f) {
  Gamble h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = scale(c, f[i]);
  return h;
}

bool pointwise_le(const Gamble& f, const Gamble& g) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] > g[i]) return false;
  }
  return true;
}

bool positive(const Gamble& f) {
  return std::all_of(f.begin(), f.end(), [](const ExtReal& v) { return v >= ExtReal(0); });
}

/// Evaluation with memoisation; nullopt when a table content lacks the gamble.
class Evaluator {
 public:
  explicit Evaluator(const OuterContent& c) : content_(c) {}

  std::optional<ExtReal> operator()(const Gamble& f) {
    auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;
    std::optional<ExtReal> v;
    try {
      v = content_.eval(f);
    } catch (const std::out_of_range&) {
      v.reset();
    }
    cache_.emplace(f, v);
    return v;
  }

 private:
  const OuterContent& content_;
  std::map<Gamble, std::optional<ExtReal>> cache_;
};

void fail(AxiomResult& r, AxiomWitness w) {
  if (r.passed) {
    r.passed = false;
    r.witness = std::move(w);
  }
}

}  // namespace

AxiomReport check_axioms(const OuterContent& content, const AxiomSuite& suite) {
  const std::size_t n = content.outcomes();
  Evaluator E(content);

  std::vector<Gamble> gambles = suite.gambles;
  std::vector<std::pair<Gamble, Gamble>> pairs = suite.pairs;
  std::vector<Rational> scalars = suite.scalars;
  if (gambles.empty()) {
    gambles = default_grid(n);
  }
  if (pairs.empty()) {
    pairs.reserve(gambles.size() * gambles.size());
    for (const auto& f : gambles) {
      for (const auto& g : gambles) pairs.emplace_back(f, g);
    }
  }
  if (scalars.empty()) scalars = {Rational(-1), Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(3)};
  for (const auto& f : gambles) {
    if (f.size() != n) throw std::invalid_argument("suite gamble has wrong number of outcomes");
  }

  AxiomReport report;
  report.declared = content.declared_level();
  report.axioms.resize(5);
  const char* names[] = {"monotonicity", "positive homogeneity", "subadditivity", "normalization",
                         "countable subadditivity on positive gambles"};
  for (int i = 0; i < 5; ++i) {
    report.axioms[i].axiom = i + 1;
    report.axioms[i].name = names[i];
  }
  report.axioms[4].finite_surrogate = true;

  // Axiom 1: f <= g implies E(f) <= E(g).
  auto& a1 = report.axioms[0];
  for (const auto& [f, g] : pairs) {
    if (!pointwise_le(f, g)) continue;
    auto ef = E(f), eg = E(g);
    if (!ef || !eg) { ++a1.skipped; continue; }
    ++a1.cases;
    if (*ef > *eg) fail(a1, {{f, g}, std::nullopt, *ef, *eg, "<="});
  }

  // Axiom 2: E(cf) = c E(f) for c in (0, inf).
  auto& a2 = report.axioms[1];
  for (const auto& f : gambles) {
    for (const auto& c : scalars) {
      if (sgn(c) <= 0) continue;
      auto lhs = E(scaled(c, f)), ef = E(f);
      if (!lhs || !ef) { ++a2.skipped; continue; }
      ++a2.cases;
      ExtReal rhs = scale(c, *ef);
      if (*lhs != rhs) fail(a2, {{f}, c, *lhs, rhs, "="});
    }
  }

  // Axiom 3: E(f + g) <= E(f) + E(g).
  auto& a3 = report.axioms[2];
  for (const auto& [f, g] : pairs) {
    auto lhs = E(add(f, g)), ef = E(f), eg = E(g);
    if (!lhs || !ef || !eg) { ++a3.skipped; continue; }
    ++a3.cases;
    ExtReal rhs = *ef + *eg;
    if (*lhs > rhs) fail(a3, {{f, g}, std::nullopt, *lhs, rhs, "<="});
  }

  // Axiom 4: E(c) = c for real c.
  auto& a4 = report.axioms[3];
  for (const auto& c : scalars) {
    Gamble constant(n, ExtReal(c));
    auto v = E(constant);
    if (!v) { ++a4.skipped; continue; }
    ++a4.cases;
    if (*v != ExtReal(c)) fail(a4, {{constant}, c, *v, ExtReal(c), "="});
  }

  // Axiom 5, finite surrogate: E(sum f_k) <= sum E(f_k) for positive gambles, using
  // pairs/triples, the point decomposition f = sum_x f(x) 1_x and the truncated
  // geometric sequence f_k = f / 2^k.
  auto& a5 = report.axioms[4];
  std::vector<Gamble> pos;
  for (const auto& f : gambles) {
    if (positive(f)) pos.push_back(f);
  }
  auto check_sum = [&](const std::vector<Gamble>& parts) {
    Gamble total(n, ExtReal(0));
    ExtReal rhs(0);
    for (const auto& p : parts) {
      total = add(total, p);
      auto ep = E(p);
      if (!ep) { ++a5.skipped; return; }
      rhs += *ep;
    }
    auto lhs = E(total);
    if (!lhs) { ++a5.skipped; return; }
    ++a5.cases;
    if (*lhs > rhs) fail(a5, {parts, std::nullopt, *lhs, rhs, "<="});
  };
  const std::size_t stride = std::max<std::size_t>(1, pos.size() / 10);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = 0; j < pos.size(); j += stride) {
      for (std::size_t k = 0; k < pos.size(); k += stride) check_sum({pos[i], pos[j], pos[k]});
    }
  }
  for (const auto& f : pos) {
    std::vector<Gamble> points;
    for (std::size_t x = 0; x < n; ++x) {
      Gamble p(n, ExtReal(0));
      p[x] = f[x];
      points.push_back(std::move(p));
    }
    check_sum(points);
    std::vector<Gamble> geometric;
    Rational w(1, 2);
    for (int k = 1; k <= 8; ++k, w /= 2) geometric.push_back(scaled(w, f));
    check_sum(geometric);
  }

  const bool core = a1.passed && a2.passed && a3.passed && a4.passed;
  AxiomLevel tested = !core ? AxiomLevel::none
                            : (a5.passed ? AxiomLevel::superexpectation : AxiomLevel::outer_content);
  report.effective = std::min(tested, report.declared);
  return report;
}

OuterContent extend_bounded_below(const OuterContent& partial) {
  const std::size_t n = partial.outcomes();
  auto base = std::make_shared<OuterContent>(partial);
  auto fn = [base, n](std::span<const ExtReal> f) -> ExtReal {
    std::vector<bool> minus(n, false);
    bool any = false, plus = false;
    Rational lowest = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (f[i].is_neg_inf()) {
        minus[i] = any = true;
      } else if (f[i].is_finite()) {
        lowest = std::min(lowest, f[i].rational());
      } else {
        plus = true;
      }
    }
    if (!any) return base->eval(f);

    Gamble probe(n, ExtReal(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (minus[i]) probe[i] = ExtReal(-1);
    }
    if (!plus && base->eval(probe) < ExtReal(0)) return ExtReal::neg_infinity();

    Rational a = lowest - 1;
    auto clamped = [&](const Rational& level) {
      Gamble g(f.begin(), f.end());
      for (std::size_t i = 0; i < n; ++i) {
        if (minus[i]) g[i] = ExtReal(level);
      }
      return base->eval(g);
    };
    ExtReal previous = clamped(a);
    for (int iter = 0; iter < 64; ++iter) {
      a *= 2;
      ExtReal next = clamped(a);
      if (next == previous) return next;
      previous = next;
    }
    throw std::runtime_error("bounded-below extension did not stabilize");
  };
  return OuterContent::custom(n, "extension(" + partial.kind_name() + ")", fn, partial.declared_level());
}

}  // namespace gtp
