#include "episodary/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <map>

#include "episodary/error.hpp"

namespace episodary::oracle {

namespace {

class Budget {
 public:
  explicit Budget(const Limits& limits) : max_(limits.max_steps) {}
  void spend(std::uint64_t units = 1) {
    used_ += units;
    if (used_ > max_) throw ResourceError("oracle work limit exceeded");
  }

 private:
  std::uint64_t max_;
  std::uint64_t used_ = 0;
};

std::vector<NodeId> topological_or_index_order(const Episode& g) {
  std::size_t n = g.node_count();
  std::vector<std::size_t> indegree(n, 0);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      if (a != b && g.connected(a, b)) ++indegree[b];
  std::vector<NodeId> order;
  std::vector<bool> done(n, false);
  while (order.size() < n) {
    bool progressed = false;
    for (NodeId v = 0; v < n; ++v) {
      if (done[v] || indegree[v] != 0) continue;
      done[v] = true;
      order.push_back(v);
      for (NodeId w = 0; w < n; ++w)
        if (w != v && g.connected(v, w)) --indegree[w];
      progressed = true;
    }
    if (!progressed) {
      for (NodeId v = 0; v < n; ++v)
        if (!done[v]) order.push_back(v);
      break;
    }
  }
  return order;
}

class CoverSearch {
 public:
  CoverSearch(const Sequence& s, const Episode& g, Budget& budget)
      : g_(g), budget_(budget), order_(topological_or_index_order(g)) {
    std::vector<Label> labels = g.labels().labels();
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    auto label_id = [&](const Label& l) -> int {
      auto it = std::lower_bound(labels.begin(), labels.end(), l);
      return (it != labels.end() && *it == l) ? static_cast<int>(it - labels.begin()) : -1;
    };
    width_ = labels.size();

    for (const auto& e : s.events()) {
      if (stamps_.empty() || stamps_.back() != e.ts) {
        stamps_.push_back(e.ts);
        supply_.resize(supply_.size() + width_, 0);
      }
      int id = label_id(e.label);
      if (id >= 0) ++supply_[(stamps_.size() - 1) * width_ + static_cast<std::size_t>(id)];
    }
    demand_.assign(g.node_count() * width_, 0);
    for (NodeId n = 0; n < g.node_count(); ++n)
      for (const auto& l : g.node_labels(n).labels())
        ++demand_[n * width_ + static_cast<std::size_t>(label_id(l))];
    slot_.assign(g.node_count(), 0);
  }

  bool run() {
    if (g_.empty()) return true;
    if (stamps_.empty()) return false;
    return place(0);
  }

 private:
  bool fits(NodeId node, std::size_t t) const {
    for (std::size_t k = 0; k < width_; ++k)
      if (demand_[node * width_ + k] > supply_[t * width_ + k]) return false;
    return true;
  }

  bool consistent(std::size_t depth, NodeId node, std::size_t t) const {
    for (std::size_t d = 0; d < depth; ++d) {
      NodeId other = order_[d];
      std::size_t u = slot_[other];
      switch (g_.edge(other, node)) {
        case EdgeKind::weak: if (u > t) return false; break;
        case EdgeKind::proper: if (u >= t) return false; break;
        case EdgeKind::none: break;
      }
      switch (g_.edge(node, other)) {
        case EdgeKind::weak: if (t > u) return false; break;
        case EdgeKind::proper: if (t >= u) return false; break;
        case EdgeKind::none: break;
      }
    }
    return true;
  }

  bool place(std::size_t depth) {
    if (depth == order_.size()) return true;
    NodeId node = order_[depth];
    for (std::size_t t = 0; t < stamps_.size(); ++t) {
      budget_.spend();
      if (!consistent(depth, node, t) || !fits(node, t)) continue;
      for (std::size_t k = 0; k < width_; ++k) supply_[t * width_ + k] -= demand_[node * width_ + k];
      slot_[node] = t;
      bool ok = place(depth + 1);
      for (std::size_t k = 0; k < width_; ++k) supply_[t * width_ + k] += demand_[node * width_ + k];
      if (ok) return true;
    }
    return false;
  }

  const Episode& g_;
  Budget& budget_;
  std::vector<NodeId> order_;
  std::size_t width_ = 0;
  std::vector<Timestamp> stamps_;
  std::vector<int> supply_;
  std::vector<int> demand_;
  std::vector<std::size_t> slot_;
};

bool covers_with(const Sequence& s, const Episode& g, Budget& budget) {
  return CoverSearch(s, g, budget).run();
}

std::int64_t support_with(const Sequence& s, const Episode& g, Timestamp window,
                          Budget& budget) {
  if (s.empty()) return 0;
  Timestamp lo = s.events().front().ts - window + 1;
  Timestamp hi = s.events().back().ts;
  std::int64_t count = 0;
  for (Timestamp t = lo; t <= hi; ++t)
    if (covers_with(subsequence(s, t, t + window - 1), g, budget)) ++count;
  return count;
}

// Calls `visit` with every gap-free slot assignment of H's nodes that honours
// H's edges; stops early when `visit` returns false.
bool for_each_witness(const Episode& h, Budget& budget,
                      const std::function<bool(const Sequence&)>& visit) {
  std::size_t n = h.node_count();
  std::vector<std::size_t> slot(n, 0);

  auto emit = [&]() {
    std::size_t used = 0;
    for (std::size_t v : slot) used = std::max(used, v + 1);
    std::vector<bool> hit(used, false);
    for (std::size_t v : slot) hit[v] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return true;
    std::vector<std::pair<std::size_t, Label>> placed;
    for (NodeId node = 0; node < n; ++node)
      for (const auto& l : h.node_labels(node).labels()) placed.emplace_back(slot[node], l);
    std::sort(placed.begin(), placed.end());
    std::vector<SequenceEvent> events;
    for (const auto& [t, l] : placed)
      events.push_back({static_cast<std::int64_t>(events.size() + 1), l,
                        static_cast<Timestamp>(t + 1)});
    return visit(Sequence(std::move(events)));
  };

  std::function<bool(NodeId)> assign = [&](NodeId node) -> bool {
    if (node == n) return emit();
    for (std::size_t t = 0; t < n; ++t) {
      budget.spend();
      bool ok = true;
      for (NodeId other = 0; other < node && ok; ++other) {
        std::size_t u = slot[other];
        EdgeKind in = h.edge(other, node);
        EdgeKind out = h.edge(node, other);
        if ((in == EdgeKind::weak && u > t) || (in == EdgeKind::proper && u >= t) ||
            (out == EdgeKind::weak && t > u) || (out == EdgeKind::proper && t >= u))
          ok = false;
      }
      if (!ok) continue;
      slot[node] = t;
      if (!assign(node + 1)) return false;
    }
    return true;
  };
  if (n == 0) return visit(Sequence());
  return assign(0);
}

bool subepisode_with(const Episode& g, const Episode& h, Budget& budget) {
  return for_each_witness(h, budget,
                          [&](const Sequence& w) { return covers_with(w, g, budget); });
}

}  // namespace

bool covers(const Sequence& s, const Episode& g, const Limits& limits) {
  Budget budget(limits);
  return covers_with(s, g, budget);
}

std::int64_t brute_support(const Sequence& s, const Episode& g, Timestamp window,
                           const Limits& limits) {
  Budget budget(limits);
  return support_with(s, g, window, budget);
}

bool brute_subepisode(const Episode& g, const Episode& h, const Limits& limits) {
  Budget budget(limits);
  return subepisode_with(g, h, budget);
}

std::vector<Episode> brute_frequent(const Sequence& s, Timestamp window,
                                    std::int64_t min_support, std::size_t max_nodes,
                                    std::size_t max_events, const Limits& limits) {
  Budget budget(limits);
  const auto& alphabet = s.alphabet();

  // Every non-empty label multiset with at most max_events labels.
  std::vector<LabelMultiset> shapes;
  std::function<void(std::size_t, std::vector<Label>&)> grow = [&](std::size_t from,
                                                                   std::vector<Label>& bag) {
    if (!bag.empty()) shapes.emplace_back(bag);
    if (bag.size() == max_events) return;
    for (std::size_t k = from; k < alphabet.size(); ++k) {
      bag.push_back(alphabet[k]);
      grow(k, bag);
      bag.pop_back();
    }
  };
  std::vector<Label> bag;
  grow(0, bag);
  std::sort(shapes.begin(), shapes.end(), lex_less);

  std::vector<Episode> found;
  std::set<std::string> isomorphs;
  auto keep = [&](Episode g) {
    if (!isomorphs.insert(episode_key(canonical(g))).second) return;
    auto fr = g.support();
    LabelMultiset labels = g.labels();
    for (const Episode& other : found) {
      if (other.support() != fr || other.labels() != labels) continue;
      if (subepisode_with(g, other, budget) && subepisode_with(other, g, budget)) return;
    }
    found.push_back(std::move(g));
  };

  // Nodes are listed in non-increasing label order; isomorphic duplicates that
  // remain are merged by `keep`.
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, std::size_t)> pick_nodes = [&](std::size_t max_shape,
                                                                 std::size_t events) {
    if (!chosen.empty()) {
      Episode parallel;
      for (std::size_t k : chosen) parallel.add_node(shapes[k].labels());
      if (support_with(s, parallel, window, budget) >= min_support) {
        std::size_t n = parallel.node_count();
        std::vector<Edge> pairs;
        for (NodeId a = 0; a < n; ++a)
          for (NodeId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
        Episode g = parallel;
        std::function<void(std::size_t)> pick_edges = [&](std::size_t k) {
          if (k == pairs.size()) {
            budget.spend();
            if (!is_transitively_closed(g)) return;
            std::int64_t fr = support_with(s, g, window, budget);
            if (fr < min_support) return;
            Episode kept = g;
            kept.set_support(fr);
            keep(std::move(kept));
            return;
          }
          auto [a, b] = pairs[k];
          static constexpr EdgeKind kinds[] = {EdgeKind::none, EdgeKind::weak, EdgeKind::proper};
          for (EdgeKind forward : kinds) {
            for (EdgeKind backward : kinds) {
              if (forward != EdgeKind::none && backward != EdgeKind::none) continue;
              g.set_edge(a, b, forward);
              g.set_edge(b, a, backward);
              pick_edges(k + 1);
            }
          }
          g.set_edge(a, b, EdgeKind::none);
          g.set_edge(b, a, EdgeKind::none);
        };
        pick_edges(0);
      } else {
        // Adding nodes cannot raise the support of the parallel episode.
        return;
      }
    }
    if (chosen.size() == max_nodes) return;
    for (std::size_t k = 0; k <= max_shape && k < shapes.size(); ++k) {
      if (events + shapes[k].size() > max_events) continue;
      chosen.push_back(k);
      pick_nodes(k, events + shapes[k].size());
      chosen.pop_back();
    }
  };
  if (!shapes.empty()) pick_nodes(shapes.size() - 1, 0);
  return found;
}

std::vector<Episode> brute_closed(const std::vector<Episode>& frequent, const Limits& limits) {
  Budget budget(limits);
  std::vector<Episode> closed;
  for (std::size_t i = 0; i < frequent.size(); ++i) {
    const Episode& g = frequent[i];
    LabelMultiset labels = g.labels();
    bool dominated = false;
    for (std::size_t j = 0; j < frequent.size() && !dominated; ++j) {
      const Episode& h = frequent[j];
      if (i == j || h.support() != g.support() || !h.labels().includes(labels)) continue;
      if (subepisode_with(g, h, budget) && !subepisode_with(h, g, budget)) dominated = true;
    }
    if (!dominated) closed.push_back(g);
  }
  return closed;
}

}  // namespace episodary::oracle
