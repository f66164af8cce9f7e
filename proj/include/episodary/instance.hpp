#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "episodary/episode.hpp"
#include "episodary/sequence.hpp"

namespace episodary {

/// One valid mapping of an episode into the sequence, spanning at most the
/// window. `events[k]` is the sequence position (0-based) of episode event k;
/// `node_ts[n]` is the shared time stamp of node n.
struct Instance {
  std::vector<std::int32_t> events;
  std::vector<Timestamp> node_ts;
  Timestamp first = 0;
  Timestamp last = 0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Instances of one episode, ordered by (first, last, events).
class InstanceSet {
 public:
  InstanceSet() = default;
  InstanceSet(Episode episode, std::vector<Instance> instances);

  const Episode& episode() const noexcept { return episode_; }
  const std::vector<Instance>& instances() const noexcept { return instances_; }
  std::size_t size() const noexcept { return instances_.size(); }
  bool empty() const noexcept { return instances_.empty(); }

 private:
  Episode episode_;
  std::vector<Instance> instances_;
};

/// Per-label event positions of a sequence together with the window size;
/// everything the augmentation steps need to look up candidate events.
class SequenceIndex {
 public:
  SequenceIndex(const Sequence& s, Timestamp window);

  const Sequence& sequence() const noexcept { return *sequence_; }
  Timestamp window() const noexcept { return window_; }
  /// Positions of the events carrying `label`, ascending.
  const std::vector<std::int32_t>& positions(const Label& label) const;

 private:
  const Sequence* sequence_;
  Timestamp window_;
  std::map<Label, std::vector<std::int32_t>, std::less<>> by_label_;
};

/// Instances of the one-event episode with `label`: one per event, keeping the
/// smallest id among events with equal label and time stamp.
InstanceSet build_singletons(const SequenceIndex& index, const Label& label);

/// Adds an event labelled `label` to node `node`; the new event must share the
/// node's time stamp.
InstanceSet augment_equal(const SequenceIndex& index, const InstanceSet& set, NodeId node,
                          const Label& label);

/// Adds a new node holding one event labelled `label`, with no edges.
InstanceSet augment(const SequenceIndex& index, const InstanceSet& set, const Label& label);

/// Instance set of an arbitrary episode: its nodes are built one event at a
/// time, then every edge is applied as a filter. Instance event k maps episode
/// event k.
InstanceSet instances_of(const SequenceIndex& index, const Episode& g);

/// Instance-based coverage test: the whole sequence acts as one window.
bool covers_by_instances(const Sequence& s, const Episode& g);

/// Keeps instances with ts(a) <= ts(b) (weak) or ts(a) < ts(b) (proper).
InstanceSet filter_weak(const InstanceSet& set, NodeId a, NodeId b);
InstanceSet filter_proper(const InstanceSet& set, NodeId a, NodeId b);

/// Number of windows of size `window` covering the episode, from its ordered
/// instance set.
std::int64_t support(const InstanceSet& set, Timestamp window);

/// Episode with the set's nodes and events whose edges are exactly the
/// orderings shared by every instance. The result can contain weak cycles.
/// Throws std::invalid_argument on an empty set.
Episode instance_closure(const InstanceSet& set);

/// Sequence ids (1-based, as stored in the sequence) of each instance, in the
/// episode's event order. Test and reporting helper.
std::vector<std::vector<std::int64_t>> instance_ids(const Sequence& s, const InstanceSet& set);

}  // namespace episodary
