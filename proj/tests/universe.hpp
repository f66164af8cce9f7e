#pragma once

// Miner output against the brute-force closed set on small inputs.

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "episodary/miner.hpp"
#include "episodary/oracle.hpp"

namespace universe {

using namespace episodary;

constexpr std::size_t kMaxNodes = 4;
constexpr std::size_t kMaxEvents = 4;

/// True when some frequent episode has more events than the brute-force
/// bound, i.e. some parallel episode of kMaxEvents + 1 labels is frequent.
inline bool exceeds_bounds(const Sequence& s, Timestamp window, std::int64_t min_support) {
  std::vector<Label> alphabet = s.alphabet();
  std::vector<std::size_t> pick(kMaxEvents + 1, 0);
  bool found = false;
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t k, std::size_t from) {
    if (found) return;
    if (k == pick.size()) {
      Episode g;
      for (std::size_t i : pick) g.add_node({alphabet[i]});
      found = oracle::brute_support(s, g, window) >= min_support;
      return;
    }
    for (std::size_t i = from; i < alphabet.size(); ++i) {
      pick[k] = i;
      choose(k + 1, i);
    }
  };
  choose(0, 0);
  return found;
}

struct Comparison {
  bool skipped = false;
  bool equal = true;
  std::string detail;
};

inline bool matched(const Episode& g, const std::vector<Episode>& pool) {
  for (const Episode& h : pool)
    if (h.support() == g.support() && oracle::brute_subepisode(g, h) &&
        oracle::brute_subepisode(h, g))
      return true;
  return false;
}

/// Mined closed episodes equal the brute-force closed set up to similarity,
/// with equal supports.
inline Comparison compare_with_brute(const Sequence& s, Timestamp window,
                                     std::int64_t min_support) {
  Comparison out;
  if (exceeds_bounds(s, window, min_support)) {
    out.skipped = true;
    return out;
  }
  std::vector<Episode> expected = oracle::brute_closed(
      oracle::brute_frequent(s, window, min_support, kMaxNodes, kMaxEvents));
  MinerConfig cfg;
  cfg.window = window;
  cfg.min_support = min_support;
  std::vector<Episode> mined = mine(s, cfg).episodes;

  std::ostringstream detail;
  for (const Episode& g : mined)
    if (!matched(g, expected)) detail << "extra " << serialize_episode(g) << '\n';
  for (const Episode& h : expected)
    if (!matched(h, mined)) detail << "missing " << serialize_episode(h) << '\n';
  if (mined.size() != expected.size()) detail << "count " << mined.size() << " vs " << expected.size() << '\n';
  out.detail = detail.str();
  out.equal = out.detail.empty();
  if (!out.equal)
    out.detail = serialize_sequence(s) + "window=" + std::to_string(window) +
                 " sigma=" + std::to_string(min_support) + '\n' + out.detail;
  return out;
}

/// Every sequence of `length` events over the first `alphabet` letters whose
/// time stamps start at 1 and grow by 0, 1 or 2.
inline void for_each_sequence(int length, int alphabet, const std::function<void(const Sequence&)>& fn) {
  std::vector<SequenceEvent> events(static_cast<std::size_t>(length));
  std::function<void(int, Timestamp)> place = [&](int k, Timestamp ts) {
    if (k == length) {
      fn(Sequence(events));
      return;
    }
    for (int step = 0; step <= (k == 0 ? 0 : 2); ++step)
      for (int c = 0; c < alphabet; ++c) {
        events[static_cast<std::size_t>(k)] = {k + 1, std::string(1, static_cast<char>('a' + c)), ts + step};
        place(k + 1, ts + step);
      }
  };
  place(0, 1);
}

// Every acyclic, transitively closed episode with up to `max_nodes`
// single-event nodes over labels a and b, one per canonical text.
inline std::vector<Episode> closed_episodes(std::size_t max_nodes) {
  std::map<std::string, Episode> seen;
  for (std::size_t nodes = 1; nodes <= max_nodes; ++nodes) {
    std::vector<Edge> pairs;
    for (NodeId i = 0; i < nodes; ++i)
      for (NodeId j = i + 1; j < nodes; ++j) pairs.emplace_back(i, j);
    std::size_t edge_codes = 1;
    for (std::size_t k = 0; k < pairs.size(); ++k) edge_codes *= 5;
    for (std::size_t labels = 0; labels < (std::size_t{1} << nodes); ++labels) {
      for (std::size_t code = 0; code < edge_codes; ++code) {
        Episode g;
        for (NodeId n = 0; n < nodes; ++n) g.add_node({(labels >> n) & 1 ? "b" : "a"});
        std::size_t c = code;
        for (auto [i, j] : pairs) {
          switch (c % 5) {
            case 1: g.set_edge(i, j, EdgeKind::weak); break;
            case 2: g.set_edge(j, i, EdgeKind::weak); break;
            case 3: g.set_edge(i, j, EdgeKind::proper); break;
            case 4: g.set_edge(j, i, EdgeKind::proper); break;
            default: break;
          }
          c /= 5;
        }
        if (has_cycle(g) || !is_transitively_closed(g)) continue;
        seen.emplace(serialize_episode(g), g);
      }
    }
  }
  std::vector<Episode> out;
  for (auto& [text, g] : seen) out.push_back(g);
  return out;
}

}  // namespace universe
