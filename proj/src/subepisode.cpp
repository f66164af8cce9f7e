#include "episodary/subepisode.hpp"

#include <algorithm>
#include <set>

namespace episodary {

namespace {

// `alive` marks the nodes still present in the working graph.
std::vector<NodeId> sources(const Episode& g, const std::vector<bool>& alive) {
  std::vector<NodeId> out;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    if (!alive[n]) continue;
    bool has_parent = false;
    for (NodeId p = 0; p < g.node_count() && !has_parent; ++p)
      if (p != n && alive[p] && g.connected(p, n)) has_parent = true;
    if (!has_parent) out.push_back(n);
  }
  return out;
}

void remove_with_descendants(const Episode& g, std::vector<bool>& alive, NodeId n) {
  std::vector<NodeId> stack{n};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = false;
    for (NodeId w = 0; w < g.node_count(); ++w)
      if (w != v && alive[w] && g.connected(v, w)) stack.push_back(w);
  }
}

LabelMultiset labels_of(const Episode& g, const NodeSet& nodes) {
  LabelMultiset out;
  for (NodeId n : nodes) out.merge(g.node_labels(n));
  return out;
}

void generate_from(const Episode& g, std::vector<bool> alive, const NodeSet& prefix,
                   std::vector<NodeSet>& out) {
  for (NodeId n : sources(g, alive)) {
    if (!alive[n]) continue;
    NodeSet grown = prefix;
    grown.insert(std::upper_bound(grown.begin(), grown.end(), n), n);
    out.push_back(grown);
    std::vector<bool> rest = alive;
    rest[n] = false;
    generate_from(g, std::move(rest), grown, out);
    remove_with_descendants(g, alive, n);
  }
}

void consume_from(const Episode& g, std::vector<bool> alive, NodeSet prefix,
                  LabelMultiset remaining, std::vector<NodeSet>& out) {
  while (true) {
    auto srcs = sources(g, alive);
    if (srcs.empty()) break;
    NodeId n = srcs.front();
    const LabelMultiset& own = g.node_labels(n);
    if (!remaining.includes(own)) {
      remove_with_descendants(g, alive, n);
      continue;
    }
    bool contested = false;
    for (NodeId m = 0; m < g.node_count() && !contested; ++m)
      if (m != n && alive[m] && own.intersects(g.node_labels(m))) contested = true;
    if (contested) {
      // Branch: prefixes that leave n out, kept only if n cannot be added.
      std::vector<bool> without_n = alive;
      remove_with_descendants(g, without_n, n);
      std::vector<NodeSet> branch;
      consume_from(g, std::move(without_n), prefix, remaining, branch);
      for (NodeSet& w : branch) {
        NodeSet added;
        std::set_difference(w.begin(), w.end(), prefix.begin(), prefix.end(),
                            std::back_inserter(added));
        LabelMultiset needed = labels_of(g, added);
        needed.merge(own);
        if (!remaining.includes(needed)) out.push_back(std::move(w));
      }
    }
    prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), n), n);
    remaining.subtract(own);
    alive[n] = false;
  }
  out.push_back(std::move(prefix));
}

// Runs `fn` on the subgraph induced by the proper sources of `g` and maps
// the node sets it returns back to ids of `g`.
template <typename Fn>
std::vector<NodeSet> on_proper_sources(const Episode& g, Fn fn) {
  std::vector<NodeId> keep = proper_sources(g);
  std::vector<NodeSet> sets = fn(g.induced(keep));
  for (NodeSet& set : sets) {
    for (NodeId& n : set) n = keep[n];
    std::sort(set.begin(), set.end());
  }
  return sets;
}

Episode remove_nodes(const Episode& g, const NodeSet& nodes) {
  std::vector<bool> removed(g.node_count(), false);
  for (NodeId n : nodes) removed[n] = true;
  return g.without(removed);
}

}  // namespace

UniqueLabelVerdict unique_label_test(const Episode& g, const Episode& h) {
  LabelMultiset host = h.labels();
  if (!host.includes(g.labels())) return UniqueLabelVerdict::inapplicable;
  for (const auto& e : g.events())
    if (host.count(e.label) != 1) return UniqueLabelVerdict::inapplicable;

  // Image node of every event of G.
  std::vector<NodeId> image(g.event_count());
  for (std::size_t k = 0; k < g.event_count(); ++k) {
    const Label& label = g.events()[k].label;
    for (std::size_t j = 0; j < h.event_count(); ++j) {
      if (h.events()[j].label == label) {
        image[k] = h.node_of(j);
        break;
      }
    }
  }

  for (std::size_t e = 0; e < g.event_count(); ++e) {
    for (std::size_t f = 0; f < g.event_count(); ++f) {
      if (e == f) continue;
      NodeId ge = g.node_of(e), gf = g.node_of(f);
      NodeId he = image[e], hf = image[f];
      if (ge == gf) {
        if (he != hf) return UniqueLabelVerdict::not_sub;
        continue;
      }
      switch (g.edge(gf, ge)) {
        case EdgeKind::proper:
          if (he == hf || h.edge(hf, he) != EdgeKind::proper) return UniqueLabelVerdict::not_sub;
          break;
        case EdgeKind::weak:
          if (he != hf && h.edge(hf, he) == EdgeKind::none) return UniqueLabelVerdict::not_sub;
          break;
        case EdgeKind::none:
          break;
      }
    }
  }
  return UniqueLabelVerdict::is_sub;
}

Episode reduce_host(const Episode& h, const LabelMultiset& labels) {
  std::vector<bool> removed(h.node_count(), false);
  for (NodeId n = 0; n < h.node_count(); ++n)
    removed[n] = !h.node_labels(n).intersects(labels);
  return h.without(removed);
}

std::vector<NodeId> proper_sources(const Episode& g) {
  std::vector<NodeId> out;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    bool proper_parent = false;
    for (NodeId p = 0; p < g.node_count() && !proper_parent; ++p)
      if (p != n && g.edge(p, n) == EdgeKind::proper) proper_parent = true;
    if (!proper_parent) out.push_back(n);
  }
  return out;
}

std::vector<NodeSet> generate_prefix_subgraphs(const Episode& g) {
  std::vector<NodeSet> out;
  generate_from(g, std::vector<bool>(g.node_count(), true), {}, out);
  return out;
}

std::vector<NodeSet> consume(const Episode& g, const LabelMultiset& labels) {
  std::vector<NodeSet> out;
  consume_from(g, std::vector<bool>(g.node_count(), true), {}, labels, out);
  std::erase_if(out, [](const NodeSet& v) { return v.empty(); });
  return out;
}

std::vector<Episode> tail(const Episode& g, const LabelMultiset& labels) {
  auto prefixes = on_proper_sources(g, [&](const Episode& x) { return consume(x, labels); });
  if (prefixes.empty()) return {g};
  std::vector<Episode> out;
  for (const NodeSet& w : prefixes) out.push_back(remove_nodes(g, w));
  return out;
}

bool SubepisodeSolver::subepisode(const Episode& g, const Episode& h) {
  memo_.clear();
  return step_rec({transitive_closure(g)}, transitive_closure(h));
}

bool SubepisodeSolver::step(const std::vector<Episode>& family, const Episode& h) {
  memo_.clear();
  return step_rec(family, h);
}

bool SubepisodeSolver::step_rec(std::vector<Episode> family, const Episode& h) {
  ++step_calls_;
  LabelMultiset host_labels = h.labels();

  // Members whose labels do not fit into H are never covered by the minimal
  // sequences covering H.
  std::vector<Episode> members;
  std::set<std::string> seen;
  for (Episode& g : family) {
    g.set_support(std::nullopt);
    if (!host_labels.includes(g.labels())) continue;
    if (g.empty()) return true;
    if (seen.insert(episode_key(g)).second) members.push_back(std::move(g));
  }
  if (members.empty() || h.empty()) return false;

  for (const Episode& g : members) {
    UniqueLabelVerdict verdict = unique_label_test(g, h);
    if (verdict == UniqueLabelVerdict::is_sub) return true;
    if (verdict == UniqueLabelVerdict::not_sub && members.size() == 1) return false;
  }

  LabelMultiset wanted;
  for (const Episode& g : members) wanted.merge(g.labels());
  Episode host = reduce_host(h, wanted);
  host.set_support(std::nullopt);

  std::string key = episode_key(host);
  key += '#';
  for (const auto& k : seen) {
    key += k;
    key += '&';
  }
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  bool result = true;
  auto prefixes =
      on_proper_sources(host, [](const Episode& y) { return generate_prefix_subgraphs(y); });
  for (const NodeSet& v : prefixes) {
    LabelMultiset slot = labels_of(host, v);
    std::vector<Episode> tails;
    for (const Episode& g : members) {
      auto t = tail(g, slot);
      tails.insert(tails.end(), std::make_move_iterator(t.begin()),
                   std::make_move_iterator(t.end()));
    }
    if (!step_rec(std::move(tails), remove_nodes(host, v))) {
      result = false;
      break;
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

bool step(const std::vector<Episode>& family, const Episode& h) {
  return SubepisodeSolver().step(family, h);
}

bool is_subepisode(const Episode& g, const Episode& h) {
  return SubepisodeSolver().subepisode(g, h);
}

bool similar(const Episode& g, const Episode& h) { return SubepisodeSolver().similar(g, h); }

}  // namespace episodary
