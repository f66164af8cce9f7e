#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "episodary/episode.hpp"

namespace episodary {

/// Node sets are sorted node ids of the episode they were computed on.
using NodeSet = std::vector<NodeId>;

enum class UniqueLabelVerdict { is_sub, not_sub, inapplicable };

/// Decides G <= H directly when every label of G occurs exactly once in H
/// (and lab(G) is contained in lab(H)). Both episodes must be transitively
/// closed.
UniqueLabelVerdict unique_label_test(const Episode& g, const Episode& h);

/// Removes every node of H that carries none of `labels`.
Episode reduce_host(const Episode& h, const LabelMultiset& labels);

/// Nodes with no incoming proper edge (H transitively closed).
std::vector<NodeId> proper_sources(const Episode& g);

/// Every non-empty parent-closed node set of a graph with no proper edges,
/// each exactly once.
std::vector<NodeSet> generate_prefix_subgraphs(const Episode& g);

/// Maximal parent-closed node sets V of a graph with no proper edges such that
/// lab(V) fits into `labels`. Empty when no source fits.
std::vector<NodeSet> consume(const Episode& g, const LabelMultiset& labels);

/// G minus each maximal prefix subgraph of its proper-source subgraph whose
/// labels fit into `labels`; {G} when there is none.
std::vector<Episode> tail(const Episode& g, const LabelMultiset& labels);

/// Recursive decision of "every sequence covering H covers some member of
/// `family`". Memoises sub-results for the lifetime of one top-level query.
class SubepisodeSolver {
 public:
  /// Episodes need not be transitively closed; both are closed first.
  bool subepisode(const Episode& g, const Episode& h);
  bool similar(const Episode& g, const Episode& h) {
    return subepisode(g, h) && subepisode(h, g);
  }

  /// All episodes must be transitively closed.
  bool step(const std::vector<Episode>& family, const Episode& h);

  std::uint64_t step_calls() const noexcept { return step_calls_; }

 private:
  bool step_rec(std::vector<Episode> family, const Episode& h);

  std::unordered_map<std::string, bool> memo_;
  std::uint64_t step_calls_ = 0;
};

bool step(const std::vector<Episode>& family, const Episode& h);
bool is_subepisode(const Episode& g, const Episode& h);
bool similar(const Episode& g, const Episode& h);

}  // namespace episodary
