#include "episodary/instance.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace episodary {

namespace {

bool instance_less(const Instance& x, const Instance& y) {
  if (x.first != y.first) return x.first < y.first;
  if (x.last != y.last) return x.last < y.last;
  return x.events < y.events;
}

bool uses(const Instance& inst, std::int32_t pos) {
  return std::find(inst.events.begin(), inst.events.end(), pos) != inst.events.end();
}

// Mapping `pos` keeps the instance non-redundant iff every earlier event with
// the same label and time stamp is already mapped.
bool non_redundant_with(const Sequence& s, const std::vector<std::int32_t>& same_label,
                        std::size_t k, const Instance& inst) {
  Timestamp ts = s[static_cast<std::size_t>(same_label[k])].ts;
  for (std::size_t j = k; j-- > 0;) {
    std::int32_t earlier = same_label[j];
    if (s[static_cast<std::size_t>(earlier)].ts != ts) break;
    if (!uses(inst, earlier)) return false;
  }
  return true;
}

// Index range [lo, hi) of `positions` whose time stamps lie in [from, to].
std::pair<std::size_t, std::size_t> ts_range(const Sequence& s,
                                             const std::vector<std::int32_t>& positions,
                                             Timestamp from, Timestamp to) {
  auto ts_of = [&](std::int32_t p) { return s[static_cast<std::size_t>(p)].ts; };
  auto lo = std::partition_point(positions.begin(), positions.end(),
                                 [&](std::int32_t p) { return ts_of(p) < from; });
  auto hi = std::partition_point(lo, positions.end(),
                                 [&](std::int32_t p) { return ts_of(p) <= to; });
  return {static_cast<std::size_t>(lo - positions.begin()),
          static_cast<std::size_t>(hi - positions.begin())};
}

}  // namespace

InstanceSet::InstanceSet(Episode episode, std::vector<Instance> instances)
    : episode_(std::move(episode)), instances_(std::move(instances)) {}

SequenceIndex::SequenceIndex(const Sequence& s, Timestamp window)
    : sequence_(&s), window_(window) {
  if (window < 1) throw std::invalid_argument("window size must be >= 1");
  for (std::size_t i = 0; i < s.size(); ++i)
    by_label_[s[i].label].push_back(static_cast<std::int32_t>(i));
}

const std::vector<std::int32_t>& SequenceIndex::positions(const Label& label) const {
  static const std::vector<std::int32_t> none;
  auto it = by_label_.find(label);
  return it == by_label_.end() ? none : it->second;
}

InstanceSet build_singletons(const SequenceIndex& index, const Label& label) {
  Episode g;
  g.add_node({label});
  const Sequence& s = index.sequence();
  const auto& positions = index.positions(label);
  std::vector<Instance> out;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    std::int32_t p = positions[k];
    Timestamp ts = s[static_cast<std::size_t>(p)].ts;
    if (k > 0 && s[static_cast<std::size_t>(positions[k - 1])].ts == ts) continue;
    out.push_back({{p}, {ts}, ts, ts});
  }
  return InstanceSet(std::move(g), std::move(out));
}

InstanceSet augment_equal(const SequenceIndex& index, const InstanceSet& set, NodeId node,
                          const Label& label) {
  Episode g = set.episode();
  g.add_event(node, label);
  const Sequence& s = index.sequence();
  const auto& positions = index.positions(label);
  std::vector<Instance> out;
  for (const Instance& inst : set.instances()) {
    Timestamp ts = inst.node_ts[node];
    auto [lo, hi] = ts_range(s, positions, ts, ts);
    for (std::size_t k = lo; k < hi; ++k) {
      std::int32_t p = positions[k];
      if (uses(inst, p) || !non_redundant_with(s, positions, k, inst)) continue;
      Instance grown = inst;
      grown.events.push_back(p);
      out.push_back(std::move(grown));
    }
  }
  return InstanceSet(std::move(g), std::move(out));
}

InstanceSet augment(const SequenceIndex& index, const InstanceSet& set, const Label& label) {
  Episode g = set.episode();
  g.add_node({label});
  const Sequence& s = index.sequence();
  const Timestamp window = index.window();
  const auto& positions = index.positions(label);
  std::vector<Instance> out;
  for (const Instance& inst : set.instances()) {
    auto [lo, hi] = ts_range(s, positions, inst.last - window + 1, inst.first + window - 1);
    for (std::size_t k = lo; k < hi; ++k) {
      std::int32_t p = positions[k];
      if (uses(inst, p) || !non_redundant_with(s, positions, k, inst)) continue;
      Timestamp ts = s[static_cast<std::size_t>(p)].ts;
      Instance grown = inst;
      grown.events.push_back(p);
      grown.node_ts.push_back(ts);
      grown.first = std::min(grown.first, ts);
      grown.last = std::max(grown.last, ts);
      out.push_back(std::move(grown));
    }
  }
  std::sort(out.begin(), out.end(), instance_less);
  return InstanceSet(std::move(g), std::move(out));
}

namespace {

template <typename Keep>
InstanceSet filter_by(const InstanceSet& set, NodeId a, NodeId b, EdgeKind kind, Keep keep) {
  Episode g = set.episode();
  if (g.edge(a, b) != EdgeKind::proper) g.set_edge(a, b, kind);
  std::vector<Instance> out;
  for (const Instance& inst : set.instances())
    if (keep(inst.node_ts[a], inst.node_ts[b])) out.push_back(inst);
  return InstanceSet(std::move(g), std::move(out));
}

}  // namespace

InstanceSet filter_weak(const InstanceSet& set, NodeId a, NodeId b) {
  return filter_by(set, a, b, EdgeKind::weak, [](Timestamp x, Timestamp y) { return x <= y; });
}

InstanceSet filter_proper(const InstanceSet& set, NodeId a, NodeId b) {
  return filter_by(set, a, b, EdgeKind::proper, [](Timestamp x, Timestamp y) { return x < y; });
}

InstanceSet instances_of(const SequenceIndex& index, const Episode& g) {
  if (g.empty()) return InstanceSet(g, {Instance{}});
  InstanceSet set;
  std::vector<std::size_t> built_order;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    const auto& events = g.node_events(n);
    for (std::size_t j = 0; j < events.size(); ++j) {
      const Label& label = g.events()[events[j]].label;
      if (n == 0 && j == 0)
        set = build_singletons(index, label);
      else if (j == 0)
        set = augment(index, set, label);
      else
        set = augment_equal(index, set, n, label);
      built_order.push_back(events[j]);
    }
  }
  for (NodeId a = 0; a < g.node_count(); ++a) {
    for (NodeId b = 0; b < g.node_count(); ++b) {
      if (g.edge(a, b) == EdgeKind::weak) set = filter_weak(set, a, b);
      if (g.edge(a, b) == EdgeKind::proper) set = filter_proper(set, a, b);
    }
  }

  std::vector<Instance> out;
  out.reserve(set.size());
  for (const Instance& inst : set.instances()) {
    Instance mapped = inst;
    for (std::size_t k = 0; k < built_order.size(); ++k)
      mapped.events[built_order[k]] = inst.events[k];
    out.push_back(std::move(mapped));
  }
  std::sort(out.begin(), out.end(), instance_less);
  return InstanceSet(g, std::move(out));
}

bool covers_by_instances(const Sequence& s, const Episode& g) {
  if (g.empty()) return true;
  if (s.empty()) return false;
  SequenceIndex index(s, s.events().back().ts - s.events().front().ts + 1);
  return !instances_of(index, g).empty();
}

std::int64_t support(const InstanceSet& set, Timestamp window) {
  const auto& all = set.instances();
  // Drop every instance whose span contains the span of a later one.
  std::vector<const Instance*> kept;
  Timestamp bound = std::numeric_limits<Timestamp>::max();
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    if (it->last < bound) {
      kept.push_back(&*it);
      bound = it->last;
    }
  }
  std::reverse(kept.begin(), kept.end());

  std::int64_t total = 0;
  std::optional<Timestamp> previous_first;
  for (const Instance* inst : kept) {
    std::int64_t windows = window - (inst->last - inst->first);
    Timestamp earliest_start = 1 + inst->last - window;
    if (previous_first)
      windows -= std::max<std::int64_t>(0, 1 + *previous_first - earliest_start);
    total += windows;
    previous_first = inst->first;
  }
  return total;
}

Episode instance_closure(const InstanceSet& set) {
  if (set.empty()) throw std::invalid_argument("instance closure of an empty instance set");
  Episode h = set.episode();
  h.clear_edges();
  std::size_t n = h.node_count();
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = 0; b < n; ++b) {
      if (a == b) continue;
      bool all_less = true;
      bool all_leq = true;
      for (const Instance& inst : set.instances()) {
        Timestamp ta = inst.node_ts[a];
        Timestamp tb = inst.node_ts[b];
        if (ta >= tb) all_less = false;
        if (ta > tb) {
          all_leq = false;
          break;
        }
      }
      if (all_less)
        h.set_edge(a, b, EdgeKind::proper);
      else if (all_leq)
        h.set_edge(a, b, EdgeKind::weak);
    }
  }
  return h;
}

std::vector<std::vector<std::int64_t>> instance_ids(const Sequence& s, const InstanceSet& set) {
  std::vector<std::vector<std::int64_t>> out;
  for (const Instance& inst : set.instances()) {
    std::vector<std::int64_t> ids;
    for (std::int32_t p : inst.events) ids.push_back(s[static_cast<std::size_t>(p)].id);
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace episodary
