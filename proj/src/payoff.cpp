#include "gtp/payoff.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace gtp {

namespace {

std::uint64_t pair_key(Payoff::NodeId a, Payoff::NodeId b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace

std::size_t PayoffBuilder::Hash::operator()(const std::vector<NodeId>& v) const {
  std::size_t h = v.size();
  for (auto id : v) h = h * 1000003u ^ id;
  return h;
}

PayoffBuilder::PayoffBuilder(std::size_t arity, std::size_t depth) : p_(arity, depth), unique_(depth) {
  if (arity == 0) throw std::invalid_argument("arity must be positive");
}

Payoff::NodeId PayoffBuilder::leaf(const ExtReal& v) {
  auto [it, fresh] = leaf_ids_.try_emplace(v, static_cast<NodeId>(p_.leaves_.size()));
  if (fresh) p_.leaves_.push_back(v);
  return it->second;
}

Payoff::NodeId PayoffBuilder::node(std::size_t level, const std::vector<NodeId>& children) {
  auto& table = unique_[level];
  auto [it, fresh] = table.try_emplace(children, static_cast<NodeId>(table.size()));
  if (fresh) p_.children_[level].insert(p_.children_[level].end(), children.begin(), children.end());
  return it->second;
}

Payoff::NodeId PayoffBuilder::constant(std::size_t level, const ExtReal& v) {
  NodeId id = leaf(v);
  for (std::size_t l = p_.depth_; l-- > level;) id = node(l, std::vector<NodeId>(p_.arity_, id));
  return id;
}

Payoff::NodeId PayoffBuilder::copy(const Payoff& src, std::size_t level, NodeId id, std::ptrdiff_t shift,
                                   std::vector<std::unordered_map<NodeId, NodeId>>& memo) {
  if (level == src.depth_) return leaf(src.leaf(id));
  auto it = memo[level].find(id);
  if (it != memo[level].end()) return it->second;
  std::vector<NodeId> kids(src.arity_);
  for (std::size_t x = 0; x < src.arity_; ++x) kids[x] = copy(src, level + 1, src.child(level, id, x), shift, memo);
  auto out = node(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(level) + shift), kids);
  memo[level].emplace(id, out);
  return out;
}

Payoff PayoffBuilder::finish() {
  // Keep only what is reachable from the root, the node built last at level 0.
  const std::size_t depth = p_.depth_;
  const NodeId root = static_cast<NodeId>(p_.level_size(0) - 1);
  if (root == 0 && (depth == 0 || p_.level_size(0) == 1)) {
    bool all_reachable = true;
    // Nodes are appended after their children, so a single level-0 node built last
    // can still leave orphans below; count reachable nodes to decide.
    std::vector<std::vector<bool>> seen(depth + 1);
    for (std::size_t l = 0; l <= depth; ++l) seen[l].assign(p_.level_size(l), false);
    seen[0][0] = true;
    for (std::size_t l = 0; l < depth; ++l) {
      for (std::size_t id = 0; id < seen[l].size(); ++id) {
        if (!seen[l][id]) continue;
        for (std::size_t x = 0; x < p_.arity_; ++x) seen[l + 1][p_.child(l, static_cast<NodeId>(id), x)] = true;
      }
    }
    for (const auto& level : seen) {
      all_reachable = all_reachable && std::all_of(level.begin(), level.end(), [](bool b) { return b; });
    }
    if (all_reachable) return std::move(p_);
  }
  PayoffBuilder fresh(p_.arity_, depth);
  std::vector<std::unordered_map<NodeId, NodeId>> memo(depth + 1);
  fresh.copy(p_, 0, root, 0, memo);
  return std::move(fresh.p_);
}

Payoff Payoff::constant(std::size_t arity, std::size_t depth, const ExtReal& value) {
  PayoffBuilder b(arity, depth);
  b.constant(0, value);
  return b.finish();
}

Payoff Payoff::from_function(std::size_t arity, std::size_t depth,
                             const std::function<ExtReal(const Situation&)>& leaf) {
  const auto limit = Limits::current().max_table_nodes;
  std::size_t leaves = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    leaves *= arity;
    if (leaves > limit) throw std::length_error("payoff enumeration would exceed the node limit");
  }
  PayoffBuilder b(arity, depth);
  Situation s;
  std::function<Payoff::NodeId()> build = [&]() -> Payoff::NodeId {
    if (s.size() == depth) return b.leaf(leaf(s));
    std::vector<Payoff::NodeId> kids(arity);
    for (std::size_t x = 0; x < arity; ++x) {
      s.push_back(x);
      kids[x] = build();
      s.pop_back();
    }
    return b.node(s.size(), kids);
  };
  build();
  return b.finish();
}

Payoff Payoff::from_values(std::size_t arity, std::size_t depth, const std::vector<ExtReal>& leaves) {
  std::size_t expected = 1;
  for (std::size_t d = 0; d < depth; ++d) expected *= arity;
  if (leaves.size() != expected) {
    throw std::invalid_argument("payoff needs " + std::to_string(expected) + " leaf values, got " +
                                std::to_string(leaves.size()));
  }
  std::size_t next = 0;
  return from_function(arity, depth, [&](const Situation&) { return leaves[next++]; });
}

Payoff Payoff::leading_ones_capped(std::size_t arity, std::size_t one, const Rational& cap) {
  if (one >= arity) throw std::invalid_argument("outcome index out of range");
  if (sgn(cap) <= 0) throw std::invalid_argument("cap must be positive");
  std::size_t depth = 0;
  Rational power = 1;
  while (power < cap) {
    power *= 2;
    ++depth;
  }
  PayoffBuilder b(arity, depth);
  Payoff::NodeId below = b.leaf(ExtReal(cap));
  power /= 2;
  for (std::size_t level = depth; level-- > 0; power /= 2) {
    std::vector<Payoff::NodeId> kids(arity);
    for (std::size_t x = 0; x < arity; ++x) {
      kids[x] = x == one ? below : b.constant(level + 1, ExtReal(Rational(std::min(power, cap))));
    }
    below = b.node(level, kids);
  }
  return b.finish();
}

Payoff Payoff::coordinate(std::size_t arity, std::size_t position, const std::vector<ExtReal>& values) {
  if (position == 0) throw std::invalid_argument("coordinates are numbered from 1");
  return from_values(arity, 1, values).prepend_ignored(position - 1);
}

std::size_t Payoff::level_size(std::size_t level) const {
  if (level == depth_) return leaves_.size();
  return children_.at(level).size() / arity_;
}

std::size_t Payoff::node_count() const {
  std::size_t n = leaves_.size();
  for (std::size_t l = 0; l < depth_; ++l) n += level_size(l);
  return n;
}

Payoff::NodeId Payoff::node_at(const Situation& s) const {
  if (s.size() > depth_) throw std::out_of_range("situation deeper than the payoff");
  NodeId id = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= arity_) throw std::out_of_range("outcome index out of range");
    id = child(i, id, s[i]);
  }
  return id;
}

const ExtReal& Payoff::value(const Situation& path) const {
  if (path.size() < depth_) throw std::invalid_argument("path shorter than the payoff depth");
  return leaf(node_at(Situation(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(depth_))));
}

std::vector<ExtReal> Payoff::distinct_values() const {
  std::vector<ExtReal> v = leaves_;
  std::sort(v.begin(), v.end());
  return v;
}

bool Payoff::finite() const {
  return std::all_of(leaves_.begin(), leaves_.end(), [](const ExtReal& v) { return v.is_finite(); });
}

ExtReal Payoff::min_value() const { return *std::min_element(leaves_.begin(), leaves_.end()); }
ExtReal Payoff::max_value() const { return *std::max_element(leaves_.begin(), leaves_.end()); }

Payoff Payoff::map(const std::function<ExtReal(const ExtReal&)>& fn) const {
  PayoffBuilder b(arity_, depth_);
  std::vector<std::vector<std::optional<NodeId>>> memo(depth_ + 1);
  for (std::size_t l = 0; l <= depth_; ++l) memo[l].resize(level_size(l));
  std::function<NodeId(std::size_t, NodeId)> walk = [&](std::size_t level, NodeId id) -> NodeId {
    if (memo[level][id]) return *memo[level][id];
    NodeId out;
    if (level == depth_) {
      out = b.leaf(fn(leaf(id)));
    } else {
      std::vector<NodeId> kids(arity_);
      for (std::size_t x = 0; x < arity_; ++x) kids[x] = walk(level + 1, child(level, id, x));
      out = b.node(level, kids);
    }
    memo[level][id] = out;
    return out;
  };
  walk(0, 0);
  return b.finish();
}

Payoff Payoff::apply(const Payoff& a, const Payoff& b,
                     const std::function<ExtReal(const ExtReal&, const ExtReal&)>& fn) {
  if (a.arity_ != b.arity_) throw std::invalid_argument("payoffs over different outcome sets");
  const std::size_t depth = std::max(a.depth_, b.depth_);
  const Payoff ea = a.extended(depth), eb = b.extended(depth);
  PayoffBuilder out(a.arity_, depth);
  std::vector<std::unordered_map<std::uint64_t, NodeId>> memo(depth + 1);
  std::function<NodeId(std::size_t, NodeId, NodeId)> walk = [&](std::size_t level, NodeId ia, NodeId ib) -> NodeId {
    auto key = pair_key(ia, ib);
    auto it = memo[level].find(key);
    if (it != memo[level].end()) return it->second;
    NodeId id;
    if (level == depth) {
      id = out.leaf(fn(ea.leaf(ia), eb.leaf(ib)));
    } else {
      std::vector<NodeId> kids(ea.arity_);
      for (std::size_t x = 0; x < ea.arity_; ++x) kids[x] = walk(level + 1, ea.child(level, ia, x), eb.child(level, ib, x));
      id = out.node(level, kids);
    }
    memo[level].emplace(key, id);
    return id;
  };
  walk(0, 0, 0);
  return out.finish();
}

Payoff Payoff::negated() const {
  return map([](const ExtReal& v) { return -v; });
}

Payoff Payoff::extended(std::size_t depth) const {
  if (depth < depth_) throw std::invalid_argument("cannot reduce payoff depth");
  if (depth == depth_) return *this;
  PayoffBuilder b(arity_, depth);
  std::vector<std::unordered_map<NodeId, NodeId>> memo(depth_ + 1);
  std::function<NodeId(std::size_t, NodeId)> walk = [&](std::size_t level, NodeId id) -> NodeId {
    if (level == depth_) return b.constant(level, leaf(id));
    auto it = memo[level].find(id);
    if (it != memo[level].end()) return it->second;
    std::vector<NodeId> kids(arity_);
    for (std::size_t x = 0; x < arity_; ++x) kids[x] = walk(level + 1, child(level, id, x));
    NodeId out = b.node(level, kids);
    memo[level].emplace(id, out);
    return out;
  };
  walk(0, 0);
  return b.finish();
}

Payoff Payoff::subtree(const Situation& s) const {
  NodeId start = node_at(s);
  PayoffBuilder b(arity_, depth_ - s.size());
  std::vector<std::unordered_map<NodeId, NodeId>> memo(depth_ + 1);
  b.copy(*this, s.size(), start, -static_cast<std::ptrdiff_t>(s.size()), memo);
  return b.finish();
}

Payoff Payoff::prepend_ignored(std::size_t levels) const {
  if (levels == 0) return *this;
  PayoffBuilder b(arity_, depth_ + levels);
  std::vector<std::unordered_map<NodeId, NodeId>> memo(depth_ + 1);
  NodeId id = b.copy(*this, 0, 0, static_cast<std::ptrdiff_t>(levels), memo);
  for (std::size_t l = levels; l-- > 0;) id = b.node(l, std::vector<NodeId>(arity_, id));
  return b.finish();
}

bool operator==(const Payoff& a, const Payoff& b) {
  if (a.arity_ != b.arity_ || a.depth_ != b.depth_) return false;
  std::vector<std::unordered_map<std::uint64_t, bool>> seen(a.depth_ + 1);
  std::function<bool(std::size_t, Payoff::NodeId, Payoff::NodeId)> same = [&](std::size_t level, Payoff::NodeId ia,
                                                                               Payoff::NodeId ib) {
    if (level == a.depth_) return a.leaf(ia) == b.leaf(ib);
    auto key = pair_key(ia, ib);
    if (auto it = seen[level].find(key); it != seen[level].end()) return it->second;
    bool eq = true;
    for (std::size_t x = 0; x < a.arity_ && eq; ++x) eq = same(level + 1, a.child(level, ia, x), b.child(level, ib, x));
    seen[level].emplace(key, eq);
    return eq;
  };
  return same(0, 0, 0);
}

// ---------------------------------------------------------------------------

namespace {

void check_window(std::size_t start, std::size_t end) {
  if (start == 0) throw std::invalid_argument("event windows start at coordinate 1 or later");
  if (end + 1 < start) throw std::invalid_argument("event window ends before it starts");
}

}  // namespace

EventWindow EventWindow::from_predicate(std::size_t arity, std::size_t start, std::size_t end,
                                        const std::function<bool(const Situation&)>& window_member) {
  check_window(start, end);
  Payoff inner = Payoff::from_function(arity, end + 1 - start,
                                       [&](const Situation& w) { return ExtReal(window_member(w) ? 1 : 0); });
  return EventWindow(start, end, inner.prepend_ignored(start - 1));
}

EventWindow EventWindow::from_accepted(std::size_t arity, std::size_t start, std::size_t end,
                                       const std::set<Situation>& accepted) {
  check_window(start, end);
  for (const auto& w : accepted) {
    if (w.size() != end + 1 - start) throw std::invalid_argument("accepted tuple has the wrong length");
  }
  return from_predicate(arity, start, end, [&](const Situation& w) { return accepted.count(w) > 0; });
}

EventWindow EventWindow::coordinate_equals(std::size_t arity, std::size_t position, std::size_t x) {
  if (x >= arity) throw std::invalid_argument("outcome index out of range");
  return from_predicate(arity, position, position, [x](const Situation& w) { return w[0] == x; });
}

EventWindow EventWindow::whole(std::size_t arity, std::size_t start) {
  return from_predicate(arity, start, start - 1, [](const Situation&) { return true; });
}

EventWindow EventWindow::from_indicator(std::size_t start, std::size_t end, Payoff indicator) {
  check_window(start, end);
  if (indicator.depth() != end) throw std::invalid_argument("indicator depth must equal the window end");
  for (const auto& v : indicator.distinct_values()) {
    if (v != ExtReal(0) && v != ExtReal(1)) throw std::invalid_argument("indicator values must be 0 or 1");
  }
  // A reduced diagram ignores ω_1..ω_{start-1} exactly when level start-1 has one node.
  if (start > 1 && indicator.level_size(start - 1) != 1) {
    throw std::invalid_argument("event depends on coordinates before the window start");
  }
  return EventWindow(start, end, std::move(indicator));
}

EventWindow EventWindow::empty(std::size_t arity, std::size_t start) {
  return from_predicate(arity, start, start - 1, [](const Situation&) { return false; });
}

bool EventWindow::contains(const Situation& path) const { return indicator_.value(path) == ExtReal(1); }

EventWindow EventWindow::complement() const {
  return EventWindow(start_, end_, indicator_.map([](const ExtReal& v) { return ExtReal(1) - v; }));
}

EventWindow EventWindow::unite(const EventWindow& a, const EventWindow& b) {
  return EventWindow(std::min(a.start_, b.start_), std::max(a.end_, b.end_),
                     Payoff::apply(a.indicator_, b.indicator_, [](const ExtReal& x, const ExtReal& y) { return std::max(x, y); }));
}

EventWindow EventWindow::intersect(const EventWindow& a, const EventWindow& b) {
  return EventWindow(std::min(a.start_, b.start_), std::max(a.end_, b.end_),
                     Payoff::apply(a.indicator_, b.indicator_, [](const ExtReal& x, const ExtReal& y) { return std::min(x, y); }));
}

}  // namespace gtp
