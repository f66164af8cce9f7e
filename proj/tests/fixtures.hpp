#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "episodary/episode.hpp"
#include "episodary/sequence.hpp"

namespace fixtures {

using episodary::EdgeKind;
using episodary::Episode;
using episodary::Label;
using episodary::NodeId;

inline Episode make(const std::vector<std::vector<Label>>& nodes,
                    const std::vector<std::pair<NodeId, NodeId>>& proper,
                    const std::vector<std::pair<NodeId, NodeId>>& weak = {}) {
  Episode g;
  for (const auto& labels : nodes) g.add_node(labels);
  for (auto [a, b] : proper) g.set_edge(a, b, EdgeKind::proper);
  for (auto [a, b] : weak) g.set_edge(a, b, EdgeKind::weak);
  return g;
}

// Toy episodes over a, b, c, d and the two-a/two-b pair.
namespace toy {
inline Episode g1() { return make({{"a"}, {"b"}, {"c"}, {"d"}}, {{0, 3}}); }
inline Episode g2() {
  return make({{"a"}, {"b"}, {"c"}, {"d"}}, {{0, 3}, {0, 2}, {2, 3}, {1, 3}}, {{0, 1}});
}
inline Episode g3() { return make({{"a"}, {"b"}, {"c", "d"}}, {{0, 2}, {1, 2}}, {{0, 1}}); }
inline Episode h1() { return make({{"a"}, {"a"}, {"b"}, {"b"}}, {{0, 2}, {1, 3}}); }
inline Episode h2() {
  return make({{"a"}, {"a"}, {"b"}, {"b"}}, {{0, 2}, {1, 3}}, {{1, 2}, {0, 3}});
}
}  // namespace toy

// Episodes on abcbdacbcd with window 5.
namespace closure {
inline Episode g1() { return toy::g1(); }
inline Episode g2() {
  return make({{"a"}, {"b"}, {"c"}, {"d"}}, {{0, 3}, {0, 2}, {0, 1}, {2, 3}, {1, 3}});
}
inline Episode g3() {
  return make({{"a"}, {"b"}, {"c"}, {"d"}}, {{0, 3}, {1, 2}, {0, 2}, {0, 1}, {2, 3}, {1, 3}});
}
inline Episode g4() {
  return make({{"a"}, {"b"}, {"c"}, {"d"}}, {{0, 3}, {2, 1}, {0, 2}, {0, 1}, {2, 3}, {1, 3}});
}
}  // namespace closure

// Tail example: a -> c proper, b -> d proper, a -> b and a -> d weak.
namespace tails {
inline Episode g() {
  return make({{"a"}, {"b"}, {"c"}, {"d"}}, {{0, 2}, {1, 3}}, {{0, 1}, {0, 3}});
}
inline Episode h1() { return make({{"b"}, {"c"}, {"d"}}, {{0, 2}}); }
inline Episode h2() { return make({{"a"}, {"c"}, {"d"}}, {{0, 1}}, {{0, 2}}); }
inline Episode h3() { return make({{"c"}, {"d"}}, {}); }
}  // namespace tails

/// Random sequence with `length` events over the first `alphabet` letters;
/// consecutive time stamps differ by 0..max_step.
inline episodary::Sequence random_sequence(std::mt19937_64& rng, int length, int alphabet,
                                           int max_step = 2) {
  std::vector<episodary::SequenceEvent> events;
  episodary::Timestamp ts = 1;
  for (int i = 0; i < length; ++i) {
    ts += std::uniform_int_distribution<int>(0, max_step)(rng);
    char c = static_cast<char>('a' + std::uniform_int_distribution<int>(0, alphabet - 1)(rng));
    events.push_back({i + 1, std::string(1, c), ts});
  }
  return episodary::Sequence(std::move(events));
}

/// Random acyclic episode: nodes get random labels, each pair i < j of a
/// random node permutation gets no edge, a weak or a proper edge. The result
/// is transitively closed.
inline Episode random_episode(std::mt19937_64& rng, int max_nodes, int max_events_per_node,
                              int alphabet) {
  Episode g;
  int nodes = std::uniform_int_distribution<int>(1, max_nodes)(rng);
  for (int n = 0; n < nodes; ++n) {
    int events = std::uniform_int_distribution<int>(1, max_events_per_node)(rng);
    std::vector<Label> labels;
    for (int k = 0; k < events; ++k)
      labels.emplace_back(
          1, static_cast<char>('a' + std::uniform_int_distribution<int>(0, alphabet - 1)(rng)));
    g.add_node(labels);
  }
  std::vector<NodeId> order(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) order[static_cast<std::size_t>(i)] = static_cast<NodeId>(i);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      int kind = std::uniform_int_distribution<int>(0, 2)(rng);
      if (kind > 0) g.set_edge(order[i], order[j], kind == 1 ? EdgeKind::weak : EdgeKind::proper);
    }
  }
  return episodary::transitive_closure(g);
}

}  // namespace fixtures
