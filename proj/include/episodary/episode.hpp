#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "episodary/sequence.hpp"

namespace episodary {

/// Sorted bag of labels (ascending byte order).
class LabelMultiset {
 public:
  LabelMultiset() = default;
  explicit LabelMultiset(std::vector<Label> labels);
  LabelMultiset(std::initializer_list<Label> labels)
      : LabelMultiset(std::vector<Label>(labels)) {}

  void insert(const Label& label);
  /// Removes one occurrence of every label in `other` that is present.
  void subtract(const LabelMultiset& other);
  void merge(const LabelMultiset& other);

  /// True if `other` is a sub-multiset of this one.
  bool includes(const LabelMultiset& other) const;
  bool intersects(const LabelMultiset& other) const;
  std::size_t count(const Label& label) const;

  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const Label& min() const { return labels_.front(); }
  const Label& max() const { return labels_.back(); }

  std::string to_string() const;  // "{a,b}"

  friend bool operator==(const LabelMultiset&, const LabelMultiset&) = default;

 private:
  std::vector<Label> labels_;
};

/// Lexicographic order over the ascending label sequences; a proper prefix is
/// smaller.
bool lex_leq(const LabelMultiset& x, const LabelMultiset& y);
bool lex_less(const LabelMultiset& x, const LabelMultiset& y);

enum class EdgeKind : std::uint8_t { none = 0, weak = 1, proper = 2 };

using NodeId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

struct EpisodeEvent {
  std::int64_t id;
  Label label;

  friend bool operator==(const EpisodeEvent&, const EpisodeEvent&) = default;
};

/// Episode events grouped into nodes, plus a graph of weak (ts <=) and proper
/// (ts <) edges between nodes. Nodes keep their creation order: the miner
/// relies on node(G, M) being the newest node.
class Episode {
 public:
  Episode() = default;

  NodeId add_node();
  /// Returns the index of the new event; its id is index + 1.
  std::size_t add_event(NodeId node, Label label);
  /// Shorthand for add_node() followed by add_event() for every label.
  NodeId add_node(const std::vector<Label>& labels);

  std::size_t node_count() const noexcept { return node_labels_.size(); }
  std::size_t event_count() const noexcept { return events_.size(); }
  bool empty() const noexcept { return node_labels_.empty(); }

  const std::vector<EpisodeEvent>& events() const noexcept { return events_; }
  NodeId node_of(std::size_t event) const { return node_of_[event]; }
  const LabelMultiset& node_labels(NodeId n) const { return node_labels_[n]; }
  const std::vector<std::size_t>& node_events(NodeId n) const { return node_events_[n]; }
  LabelMultiset labels() const;

  EdgeKind edge(NodeId from, NodeId to) const { return adjacency_[from * node_count() + to]; }
  bool connected(NodeId from, NodeId to) const { return edge(from, to) != EdgeKind::none; }
  /// Self loops are rejected; the reverse direction is left untouched.
  void set_edge(NodeId from, NodeId to, EdgeKind kind);
  void clear_edges();

  /// Edges of one kind, sorted by (source, target).
  std::vector<Edge> edges(EdgeKind kind) const;
  std::size_t edge_count(EdgeKind kind) const;

  const std::optional<std::int64_t>& support() const noexcept { return support_; }
  void set_support(std::optional<std::int64_t> s) { support_ = s; }

  /// Subgraph induced by `keep` (in the given order), with events re-numbered.
  Episode induced(const std::vector<NodeId>& keep) const;
  /// Subgraph with the nodes flagged in `removed` dropped.
  Episode without(const std::vector<bool>& removed) const;

  friend bool operator==(const Episode&, const Episode&) = default;

 private:
  std::vector<EpisodeEvent> events_;
  std::vector<NodeId> node_of_;
  std::vector<LabelMultiset> node_labels_;
  std::vector<std::vector<std::size_t>> node_events_;
  std::vector<EdgeKind> adjacency_;
  std::optional<std::int64_t> support_;
};

/// Adds an edge from each node to each descendant: proper when some path uses
/// a proper edge, weak otherwise. Throws CycleError on a cyclic graph.
Episode transitive_closure(const Episode& g);
bool has_cycle(const Episode& g);
bool is_transitively_closed(const Episode& g);

/// Proper: promoting the weak edge leaves G acyclic and transitively closed.
/// Weak: G plus the new edge is acyclic and its closure connects no further
/// node pair (existing weak edges may still become proper).
bool is_transitively_closed_with(const Episode& g, Edge edge, EdgeKind kind);

/// 3^|pe(G)| * 2^|we(G)|, saturating at UINT64_MAX.
std::uint64_t count_same_node_subepisodes(const Episode& g);

/// Node permutation used by the canonical text: ascending label multisets,
/// ties resolved by the smallest edge encoding.
std::vector<NodeId> canonical_node_order(const Episode& g);
Episode canonical(const Episode& g);

/// `nodes: 1{a} 2{b,c}; proper: 1>2; weak: -` with an optional trailing
/// `; support: N` when the support is known.
std::string serialize_episode(const Episode& g);
Episode parse_episode(std::string_view text);

/// Cheap deterministic key for memo tables: nodes in label order, ties in
/// index order. Equal keys imply isomorphic episodes; the converse need not
/// hold.
std::string episode_key(const Episode& g);

/// Tab-separated record: support, node count, node label lists, proper edges,
/// weak edges (canonical node numbering).
std::string episode_record(const Episode& g);

}  // namespace episodary
