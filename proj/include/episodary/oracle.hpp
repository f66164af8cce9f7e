#pragma once

// Brute-force reference implementations. Everything here works directly from
// the coverage definition and shares no code path with the instance-based
// support or the recursive subepisode test.

#include <cstdint>
#include <vector>

#include "episodary/episode.hpp"
#include "episodary/sequence.hpp"

namespace episodary::oracle {

/// Work guard: every backtracking step or enumerated candidate counts as one
/// unit; exceeding `max_steps` throws ResourceError.
struct Limits {
  std::uint64_t max_steps = 500'000'000;
};

/// Is there an injective, label-respecting mapping of the episode events into
/// `s` that gives every node one time stamp and honours all edges?
bool covers(const Sequence& s, const Episode& g, const Limits& limits = {});

/// Slides every window [t, t + window - 1] that can hold an event and counts
/// the covering ones.
std::int64_t brute_support(const Sequence& s, const Episode& g, Timestamp window,
                           const Limits& limits = {});

/// G <= H: every arrangement of H's nodes into ordered time slots that respects
/// H's edges must cover G.
bool brute_subepisode(const Episode& g, const Episode& h, const Limits& limits = {});

/// All acyclic, transitively closed episodes over the labels of `s` with at
/// most `max_nodes` nodes and `max_events` events whose support reaches
/// `min_support`, one representative per similarity class, supports attached.
std::vector<Episode> brute_frequent(const Sequence& s, Timestamp window,
                                    std::int64_t min_support, std::size_t max_nodes,
                                    std::size_t max_events, const Limits& limits = {});

/// Members of `frequent` (pairwise non-similar, supports attached) without a
/// strict superepisode of equal support in the same list.
std::vector<Episode> brute_closed(const std::vector<Episode>& frequent,
                                  const Limits& limits = {});

}  // namespace episodary::oracle
