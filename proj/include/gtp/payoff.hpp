#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <unordered_map>
#include <vector>

#include "gtp/extreal.hpp"
#include "gtp/gametree.hpp"

namespace gtp {

/**
 * A global variable depending on the first `depth` coordinates.
 *
 * Stored as a reduced decision diagram: one node table per level, level d
 * branching on ω_{d+1}, equal subtrees shared. Leaves live at level `depth`.
 * Node ids are per level; the root is node 0 of level 0.
 */
class Payoff {
 public:
  using NodeId = std::uint32_t;

  static Payoff constant(std::size_t arity, std::size_t depth, const ExtReal& value);
  /// Enumerates every leaf; refuses more than Limits::max_table_nodes leaves.
  static Payoff from_function(std::size_t arity, std::size_t depth,
                              const std::function<ExtReal(const Situation&)>& leaf);
  /// Leaf values in lexicographic order of the depth-length situations.
  static Payoff from_values(std::size_t arity, std::size_t depth, const std::vector<ExtReal>& leaves);
  /// min(2^n, cap) with n the number of leading `one`s; depth is the least d with 2^d >= cap.
  static Payoff leading_ones_capped(std::size_t arity, std::size_t one, const Rational& cap);
  /// ξ(ω) = values[ω_position], position 1-based.
  static Payoff coordinate(std::size_t arity, std::size_t position, const std::vector<ExtReal>& values);

  std::size_t arity() const { return arity_; }
  std::size_t depth() const { return depth_; }
  std::size_t level_size(std::size_t level) const;
  std::size_t node_count() const;

  NodeId child(std::size_t level, NodeId id, std::size_t x) const { return children_[level][id * arity_ + x]; }
  const ExtReal& leaf(NodeId id) const { return leaves_[id]; }
  /// Node reached from the root along s; |s| <= depth.
  NodeId node_at(const Situation& s) const;
  /// Value on any path of length >= depth.
  const ExtReal& value(const Situation& path) const;

  std::vector<ExtReal> distinct_values() const;  // ascending
  bool finite() const;
  ExtReal min_value() const;
  ExtReal max_value() const;

  Payoff map(const std::function<ExtReal(const ExtReal&)>& fn) const;
  static Payoff apply(const Payoff& a, const Payoff& b, const std::function<ExtReal(const ExtReal&, const ExtReal&)>& fn);
  Payoff negated() const;
  /// Same variable viewed at a larger depth.
  Payoff extended(std::size_t depth) const;
  /// The variable below s as a payoff of depth - |s|.
  Payoff subtree(const Situation& s) const;
  /// Adds `levels` leading coordinates the value does not depend on.
  Payoff prepend_ignored(std::size_t levels) const;

  friend bool operator==(const Payoff& a, const Payoff& b);

 private:
  friend class PayoffBuilder;
  Payoff(std::size_t arity, std::size_t depth) : arity_(arity), depth_(depth), children_(depth) {}

  std::size_t arity_;
  std::size_t depth_;
  std::vector<std::vector<NodeId>> children_;  // per level < depth, arity_ entries per node
  std::vector<ExtReal> leaves_;
};

/// Hash-consing construction of a Payoff, bottom level first.
class PayoffBuilder {
 public:
  using NodeId = Payoff::NodeId;
  PayoffBuilder(std::size_t arity, std::size_t depth);

  NodeId leaf(const ExtReal& v);
  NodeId node(std::size_t level, const std::vector<NodeId>& children);
  /// A subtree rooted at `level` with the same value on every path.
  NodeId constant(std::size_t level, const ExtReal& v);
  /// Copies the subtree of src at (level, id) so that it sits at level + shift here.
  NodeId copy(const Payoff& src, std::size_t level, NodeId id, std::ptrdiff_t shift,
              std::vector<std::unordered_map<NodeId, NodeId>>& memo);
  /// The node built last at level 0 becomes the root; call once.
  Payoff finish();

 private:
  struct Hash {
    std::size_t operator()(const std::vector<NodeId>& v) const;
  };
  Payoff p_;
  std::vector<std::unordered_map<std::vector<NodeId>, NodeId, Hash>> unique_;
  std::unordered_map<ExtReal, NodeId, ExtRealHash> leaf_ids_;
};

/**
 * An event whose membership depends only on coordinates start..end (1-based,
 * inclusive). end = start - 1 is an empty window: the event is Ω or ∅.
 */
class EventWindow {
 public:
  static EventWindow from_predicate(std::size_t arity, std::size_t start, std::size_t end,
                                    const std::function<bool(const Situation&)>& window_member);
  static EventWindow from_accepted(std::size_t arity, std::size_t start, std::size_t end,
                                   const std::set<Situation>& accepted);
  /// {ω_position = x}
  static EventWindow coordinate_equals(std::size_t arity, std::size_t position, std::size_t x);
  static EventWindow whole(std::size_t arity, std::size_t start = 1);
  static EventWindow empty(std::size_t arity, std::size_t start = 1);
  /// Wraps a 0/1 payoff of depth `end`; checks that it ignores coordinates before `start`.
  static EventWindow from_indicator(std::size_t start, std::size_t end, Payoff indicator);

  std::size_t start() const { return start_; }
  std::size_t end() const { return end_; }
  std::size_t arity() const { return indicator_.arity(); }
  const Payoff& indicator() const { return indicator_; }
  bool contains(const Situation& path) const;

  EventWindow complement() const;
  static EventWindow unite(const EventWindow& a, const EventWindow& b);
  static EventWindow intersect(const EventWindow& a, const EventWindow& b);

 private:
  EventWindow(std::size_t start, std::size_t end, Payoff indicator)
      : start_(start), end_(end), indicator_(std::move(indicator)) {}

  std::size_t start_;
  std::size_t end_;
  Payoff indicator_;  // depth == end
};

}  // namespace gtp
