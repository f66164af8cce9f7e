#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "episodary/episode.hpp"
#include "episodary/instance.hpp"
#include "episodary/sequence.hpp"
#include "episodary/subepisode.hpp"

namespace episodary {

struct MinerConfig {
  Timestamp window = 1;
  std::int64_t min_support = 1;
  /// Largest instance set the miner may materialise before giving up.
  std::size_t instance_abort = 10'000'000;
};

struct MinerStats {
  std::uint64_t scans = 0;
  std::uint64_t i_closed = 0;
  std::uint64_t closed = 0;
  std::uint64_t frequent_estimate = 0;
};

struct MineResult {
  std::vector<Episode> episodes;
  MinerStats stats;
};

/// Discovered episodes grouped by support. Every stored episode carries its
/// support.
class ClosedStore {
 public:
  /// Returns false when `g` is a subepisode of a stored episode of equal
  /// support (nothing changes). Otherwise evicts the stored episodes of equal
  /// support that are subepisodes of `g`, inserts `g` and returns true.
  bool offer(const Episode& g, SubepisodeSolver& solver);

  /// Survivors of the final closedness filter: within each support class,
  /// episodes with a strict superepisode are dropped and one of every similar
  /// pair is kept.
  std::vector<Episode> post_filter(SubepisodeSolver& solver) const;

  std::size_t size() const;

 private:
  struct Entry {
    Episode episode;
    LabelMultiset labels;
  };
  std::map<std::int64_t, std::vector<Entry>> by_support_;
};

/// One call of the episode test during the search.
struct MinerVisit {
  /// Episode of the candidate instance set (before closure).
  const Episode& candidate;
  std::int64_t support;
  /// Support of the episode the candidate was derived from; -1 at the root.
  std::int64_t parent_support;
  /// Instance closure when the candidate passed every test, else null.
  const Episode* accepted;
};

using MinerObserver = std::function<void(const MinerVisit&)>;

/// Depth-first search for closed frequent episodes. Single threaded; build one
/// Miner per thread.
class Miner {
 public:
  explicit Miner(MinerConfig cfg, MinerObserver observer = {});

  /// Throws ResourceError when an instance set exceeds cfg.instance_abort and
  /// std::invalid_argument on a non-positive window or support threshold.
  MineResult run(const Sequence& s);

 private:
  using EdgeSet = std::set<Edge>;

  std::optional<Episode> test_episode(const InstanceSet& set, const EdgeSet& weak_forbidden,
                                      const EdgeSet& proper_forbidden,
                                      std::int64_t parent_support);
  void mine_parallel(const InstanceSet& set, const Episode& g);
  void mine_weak(const InstanceSet& set, const Episode& g, EdgeSet forbidden);
  void mine_proper(const InstanceSet& set, const Episode& g, const EdgeSet& weak_forbidden,
                   EdgeSet proper_forbidden);
  void guard(const InstanceSet& set) const;

  MinerConfig cfg_;
  MinerObserver observer_;
  const SequenceIndex* index_ = nullptr;
  std::vector<Label> frequent_labels_;
  ClosedStore store_;
  SubepisodeSolver solver_;
  MinerStats stats_;
  std::map<LabelMultiset, std::uint64_t, bool (*)(const LabelMultiset&, const LabelMultiset&)>
      best_estimate_{lex_less};
};

MineResult mine(const Sequence& s, const MinerConfig& cfg);

/// Output order: descending support, then canonical episode text.
void sort_episodes(std::vector<Episode>& episodes);

}  // namespace episodary
