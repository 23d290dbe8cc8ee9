#include "gtp/gametree.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>

namespace gtp {

std::string format_situation(const OutcomeSet& outcomes, const Situation& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!outcomes.compact() && i > 0) out += '.';
    out += outcomes.label(s[i]);
  }
  return out;
}

std::string display_situation(const OutcomeSet& outcomes, const Situation& s) {
  return s.empty() ? std::string("□") : format_situation(outcomes, s);
}

Situation parse_situation(const OutcomeSet& outcomes, std::string_view text) {
  Situation s;
  if (text.empty() || text == "□") return s;
  if (outcomes.compact()) {
    for (char c : text) s.push_back(outcomes.index_of(std::string_view(&c, 1)));
    return s;
  }
  std::size_t start = 0;
  while (true) {
    auto dot = text.find('.', start);
    s.push_back(outcomes.index_of(text.substr(start, dot - start)));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return s;
}

Situation parse_path(const OutcomeSet& outcomes, std::string_view text) {
  Situation s;
  if (text.empty()) return s;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    s.push_back(outcomes.index_of(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return s;
}

Relation relation(const Situation& s, const Situation& t) {
  const std::size_t n = std::min(s.size(), t.size());
  if (!std::equal(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n), t.begin())) return Relation::incomparable;
  if (s.size() == t.size()) return Relation::equal;
  return s.size() < t.size() ? Relation::strict_prefix : Relation::strict_extension;
}

bool is_prefix(const Situation& s, const Situation& t) {
  auto r = relation(s, t);
  return r == Relation::equal || r == Relation::strict_prefix;
}

bool is_extension(const Situation& s, const Situation& t) { return is_prefix(t, s); }

std::string to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::strict_prefix: return "strict-prefix";
    case Relation::strict_extension: return "strict-extension";
    case Relation::incomparable: return "incomparable";
  }
  return "incomparable";
}

bool Cut::valid() const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (relation(members[i], members[j]) != Relation::incomparable) return false;
    }
  }
  return true;
}

bool Cut::contains(const Situation& s) const { return std::find(members.begin(), members.end(), s) != members.end(); }

Limits Limits::current() {
  Limits l;
  if (const char* env = std::getenv("GTP_MAX_DEPTH")) {
    std::size_t v = 0;
    std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size()) l.max_depth = v;
  }
  return l;
}

void Limits::check_dense(std::size_t outcomes, std::size_t depth) const {
  if (outcomes > max_outcomes) {
    throw std::length_error("dense table over " + std::to_string(outcomes) + " outcomes exceeds the limit of " +
                            std::to_string(max_outcomes));
  }
  if (depth > max_depth) {
    throw std::length_error("dense table of depth " + std::to_string(depth) + " exceeds the depth limit of " +
                            std::to_string(max_depth) + " (set GTP_MAX_DEPTH to raise it)");
  }
  std::size_t nodes = 0, level = 1;
  for (std::size_t d = 0; d <= depth; ++d) {
    nodes += level;
    if (nodes > max_table_nodes) throw std::length_error("dense table would exceed the node limit");
    level *= outcomes;
  }
}

// ---------------------------------------------------------------------------

GameSpec::GameSpec(OutcomeSet outcomes, ContentPtr shared, std::size_t horizon)
    : GameSpec(std::move(outcomes), std::vector<ContentPtr>(horizon, shared)) {}

GameSpec::GameSpec(OutcomeSet outcomes, std::vector<ContentPtr> per_depth)
    : outcomes_(std::move(outcomes)), contents_(std::move(per_depth)) {
  for (const auto& c : contents_) {
    if (!c) throw std::invalid_argument("missing content");
    if (c->outcomes() != outcomes_.size()) {
      throw std::invalid_argument("content outcome count does not match the game's outcome set");
    }
  }
}

const OuterContent& GameSpec::content(std::size_t n) const { return *content_ptr(n); }

const ContentPtr& GameSpec::content_ptr(std::size_t n) const {
  if (n == 0 || n > contents_.size()) {
    throw std::out_of_range("no content for depth " + std::to_string(n) + " (horizon " +
                            std::to_string(contents_.size()) + ")");
  }
  return contents_[n - 1];
}

bool GameSpec::depth_independent() const {
  for (std::size_t i = 1; i < contents_.size(); ++i) {
    if (!(*contents_[i] == *contents_[0])) return false;
  }
  return true;
}

GameSpec GameSpec::with_horizon(std::size_t horizon) const {
  if (!depth_independent() || contents_.empty()) throw std::invalid_argument("game contents differ across depths");
  return GameSpec(outcomes_, contents_.front(), horizon);
}

GameSpec GameSpec::truncated(std::size_t horizon) const {
  if (horizon <= contents_.size()) {
    return GameSpec(outcomes_, std::vector<ContentPtr>(contents_.begin(),
                                                       contents_.begin() + static_cast<std::ptrdiff_t>(horizon)));
  }
  return with_horizon(horizon);
}

GameSpec GameSpec::suffix(std::size_t depth) const {
  if (depth > contents_.size()) throw std::out_of_range("suffix beyond horizon");
  return GameSpec(outcomes_, std::vector<ContentPtr>(contents_.begin() + static_cast<std::ptrdiff_t>(depth),
                                                     contents_.end()));
}

GameSpec make_game(OutcomeSet outcomes, const OuterContent& content, std::size_t horizon) {
  return GameSpec(std::move(outcomes), std::make_shared<const OuterContent>(content), horizon);
}

// ---------------------------------------------------------------------------

Supermartingale::Supermartingale(std::size_t arity, std::size_t depth, ExtReal fill) : arity_(arity), depth_(depth) {
  if (arity == 0) throw std::invalid_argument("arity must be positive");
  Limits::current().check_dense(arity, depth);
  std::size_t total = 0, level = 1;
  for (std::size_t d = 0; d <= depth; ++d) {
    offsets_.push_back(total);
    total += level;
    level *= arity;
  }
  values_.assign(total, fill);
}

Supermartingale Supermartingale::from_function(std::size_t arity, std::size_t depth,
                                               const std::function<ExtReal(const Situation&)>& fn) {
  Supermartingale s(arity, depth);
  for (std::size_t d = 0; d <= depth; ++d) {
    for (const auto& u : situations_of_length(arity, d)) s.set(u, fn(u));
  }
  return s;
}

std::size_t Supermartingale::index(const Situation& s) const {
  const std::size_t len = std::min(s.size(), depth_);
  std::size_t code = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (s[i] >= arity_) throw std::out_of_range("outcome index out of range");
    code = code * arity_ + s[i];
  }
  return offsets_[len] + code;
}

const ExtReal& Supermartingale::at(const Situation& s) const { return values_[index(s)]; }

void Supermartingale::set(const Situation& s, ExtReal v) {
  if (s.size() > depth_) throw std::out_of_range("situation deeper than the table");
  values_[index(s)] = std::move(v);
}

void Supermartingale::for_each(const std::function<void(const Situation&, const ExtReal&)>& fn) const {
  for (std::size_t d = 0; d <= depth_; ++d) {
    for (const auto& u : situations_of_length(arity_, d)) fn(u, at(u));
  }
}

Supermartingale operator+(const Supermartingale& a, const Supermartingale& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("tables over different outcome sets");
  return Supermartingale::from_function(a.arity(), std::max(a.depth(), b.depth()),
                                        [&](const Situation& s) { return a.at(s) + b.at(s); });
}

Supermartingale scale(const Rational& c, const Supermartingale& s) {
  return Supermartingale::from_function(s.arity(), s.depth(), [&](const Situation& u) { return scale(c, s.at(u)); });
}

Supermartingale multiplier_table(std::size_t arity, std::size_t depth, const std::vector<Rational>& multipliers,
                                 const Rational& initial) {
  if (multipliers.size() != arity) throw std::invalid_argument("one multiplier per outcome expected");
  for (const auto& m : multipliers) {
    if (sgn(m) < 0) throw std::invalid_argument("multipliers must be non-negative");
  }
  return Supermartingale::from_function(arity, depth, [&](const Situation& s) {
    Rational v = initial;
    for (auto x : s) v *= multipliers[x];
    return ExtReal(v);
  });
}

// ---------------------------------------------------------------------------

Strategy strategy_from_table(const Supermartingale& s) {
  Strategy st;
  st.initial = s.at({});
  st.move = [table = s](const Situation& u, const ExtReal&) {
    Gamble g(table.arity());
    Situation child = u;
    child.push_back(0);
    for (std::size_t x = 0; x < table.arity(); ++x) {
      child.back() = x;
      g[x] = table.at(child);
    }
    return g;
  };
  return st;
}

namespace {

Gamble checked_move(const GameSpec& game, const Strategy& strat, const Situation& s, const ExtReal& capital) {
  Gamble f = strat.move(s, capital);
  if (f.size() != game.arity()) throw std::invalid_argument("strategy returned a gamble of the wrong size");
  ExtReal required = game.content(s.size() + 1).eval(f);
  if (required > capital) {
    throw BudgetViolation(s, required, capital,
                          "budget violated at " + display_situation(game.outcomes(), s) + ": E(f) = " +
                              required.str() + " > capital " + capital.str());
  }
  return f;
}

}  // namespace

std::vector<ExtReal> capital_process(const GameSpec& game, const Strategy& strat, const Situation& path) {
  if (path.size() > game.horizon()) throw std::invalid_argument("path longer than the horizon");
  std::vector<ExtReal> k{strat.initial};
  Situation s;
  for (auto x : path) {
    if (x >= game.arity()) throw std::invalid_argument("path outcome out of range");
    Gamble f = checked_move(game, strat, s, k.back());
    k.push_back(f[x]);
    s.push_back(x);
  }
  return k;
}

Supermartingale capital_table(const GameSpec& game, const Strategy& strat) {
  Supermartingale table(game.arity(), game.horizon());
  std::function<void(Situation&, const ExtReal&)> walk = [&](Situation& s, const ExtReal& capital) {
    table.set(s, capital);
    if (s.size() == game.horizon()) return;
    Gamble f = checked_move(game, strat, s, capital);
    for (std::size_t x = 0; x < game.arity(); ++x) {
      s.push_back(x);
      walk(s, f[x]);
      s.pop_back();
    }
  };
  Situation root;
  walk(root, strat.initial);
  return table;
}

VerifyResult verify_supermartingale(const GameSpec& game, const Supermartingale& s) {
  if (s.arity() != game.arity()) throw std::invalid_argument("table and game have different outcome sets");
  VerifyResult result;
  auto record = [&](const Situation& u, const ExtReal& lhs, const ExtReal& rhs) {
    if (lhs > rhs) {
      if (result.ok) result.witness = SupermartingaleWitness{u, lhs, rhs};
      result.ok = false;
    }
    if (lhs != rhs) result.martingale = false;
  };

  const std::size_t tabulated = std::min(s.depth(), game.horizon());
  for (std::size_t d = 0; d < tabulated; ++d) {
    const OuterContent& content = game.content(d + 1);
    for (auto u : situations_of_length(s.arity(), d)) {
      Gamble children(s.arity());
      u.push_back(0);
      for (std::size_t x = 0; x < s.arity(); ++x) {
        u.back() = x;
        children[x] = s.at(u);
      }
      u.pop_back();
      record(u, content.eval(children), s.at(u));
    }
  }
  // Past the table depth every node is followed by constant children, so one check per
  // distinct leaf value and depth suffices.
  if (game.horizon() > tabulated) {
    std::vector<std::pair<ExtReal, Situation>> distinct;
    for (const auto& u : situations_of_length(s.arity(), tabulated)) {
      const ExtReal& v = s.at(u);
      if (std::none_of(distinct.begin(), distinct.end(), [&](const auto& p) { return p.first == v; })) {
        distinct.emplace_back(v, u);
      }
    }
    for (std::size_t d = tabulated; d < game.horizon(); ++d) {
      for (const auto& [v, u] : distinct) {
        Situation deep = u;
        deep.resize(d, 0);
        record(deep, game.content(d + 1).eval(Gamble(s.arity(), v)), v);
      }
    }
  }
  return result;
}

Supermartingale translate_strategy(const Supermartingale& s, const Situation& from, const Situation& to) {
  if (from.size() != to.size()) throw std::invalid_argument("translate_strategy needs situations of equal length");
  const std::size_t depth = std::max(s.depth(), to.size());
  return Supermartingale::from_function(s.arity(), depth, [&](const Situation& u) {
    if (!is_prefix(to, u)) return ExtReal::infinity();
    Situation v = from;
    v.insert(v.end(), u.begin() + static_cast<std::ptrdiff_t>(to.size()), u.end());
    return s.at(v);
  });
}

Supermartingale shift_strategy(const GameSpec& game, const Supermartingale& s, const Situation& prefix) {
  if (!game.depth_independent()) {
    throw std::invalid_argument("shift_strategy requires the same content at every depth");
  }
  return Supermartingale::from_function(s.arity(), s.depth() + prefix.size(), [&](const Situation& u) {
    if (!is_prefix(prefix, u)) return ExtReal::infinity();
    return s.at(Situation(u.begin() + static_cast<std::ptrdiff_t>(prefix.size()), u.end()));
  });
}

Supermartingale stop_when_covered(const Supermartingale& s, const ExtReal& level) {
  Supermartingale out(s.arity(), s.depth());
  std::function<void(Situation&, const ExtReal*)> walk = [&](Situation& u, const ExtReal* frozen) {
    const ExtReal& here = s.at(u);
    if (!frozen && here > level) frozen = &here;
    out.set(u, frozen ? *frozen : here);
    if (u.size() == s.depth()) return;
    for (std::size_t x = 0; x < s.arity(); ++x) {
      u.push_back(x);
      walk(u, frozen);
      u.pop_back();
    }
  };
  Situation root;
  walk(root, nullptr);
  return out;
}

std::vector<Situation> situations_of_length(std::size_t arity, std::size_t length) {
  std::vector<Situation> out;
  Situation s(length, 0);
  while (true) {
    out.push_back(s);
    std::size_t i = length;
    while (i > 0 && s[i - 1] + 1 == arity) s[--i] = 0;
    if (i == 0) break;
    ++s[i - 1];
  }
  return out;
}

}  // namespace gtp
