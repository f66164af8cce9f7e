#include "episodary/miner.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "episodary/error.hpp"

namespace episodary {

bool ClosedStore::offer(const Episode& g, SubepisodeSolver& solver) {
  auto& cls = by_support_[g.support().value()];
  LabelMultiset labels = g.labels();
  std::vector<bool> evict(cls.size(), false);
  bool covered = false;
  for (std::size_t i = 0; i < cls.size() && !covered; ++i) {
    const Entry& h = cls[i];
    if (h.labels.includes(labels) && solver.subepisode(g, h.episode))
      covered = true;
    else if (labels.includes(h.labels) && solver.subepisode(h.episode, g))
      evict[i] = true;
  }
  std::size_t kept = 0;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (evict[i]) continue;
    if (kept != i) cls[kept] = std::move(cls[i]);
    ++kept;
  }
  cls.resize(kept);
  if (covered) return false;
  cls.push_back({g, std::move(labels)});
  return true;
}

std::vector<Episode> ClosedStore::post_filter(SubepisodeSolver& solver) const {
  std::vector<Episode> out;
  for (const auto& [fr, cls] : by_support_) {
    for (std::size_t i = 0; i < cls.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < cls.size() && !dominated; ++j) {
        if (i == j || !cls[j].labels.includes(cls[i].labels)) continue;
        if (!solver.subepisode(cls[i].episode, cls[j].episode)) continue;
        bool similar = cls[i].labels == cls[j].labels &&
                       solver.subepisode(cls[j].episode, cls[i].episode);
        dominated = !similar || j < i;
      }
      if (!dominated) out.push_back(cls[i].episode);
    }
  }
  return out;
}

std::size_t ClosedStore::size() const {
  std::size_t n = 0;
  for (const auto& [fr, cls] : by_support_) n += cls.size();
  return n;
}

Miner::Miner(MinerConfig cfg, MinerObserver observer)
    : cfg_(cfg), observer_(std::move(observer)) {}

MineResult Miner::run(const Sequence& s) {
  if (cfg_.window < 1) throw std::invalid_argument("window size must be >= 1");
  if (cfg_.min_support < 1) throw std::invalid_argument("support threshold must be >= 1");

  store_ = ClosedStore();
  solver_ = SubepisodeSolver();
  stats_ = MinerStats();
  best_estimate_.clear();
  frequent_labels_.clear();
  if (s.empty()) return {};

  SequenceIndex index(s, cfg_.window);
  index_ = &index;

  std::vector<std::pair<InstanceSet, Episode>> roots;
  for (const Label& x : s.alphabet()) {
    InstanceSet set = build_singletons(index, x);
    guard(set);
    if (auto g = test_episode(set, {}, {}, -1)) {
      frequent_labels_.push_back(x);
      roots.emplace_back(std::move(set), std::move(*g));
    }
  }
  for (const auto& [set, g] : roots) mine_parallel(set, g);
  index_ = nullptr;

  MineResult result;
  for (Episode& g : store_.post_filter(solver_)) result.episodes.push_back(canonical(g));
  sort_episodes(result.episodes);

  stats_.closed = result.episodes.size();
  for (const auto& [labels, a] : best_estimate_) {
    std::uint64_t room = std::numeric_limits<std::uint64_t>::max() - stats_.frequent_estimate;
    stats_.frequent_estimate += std::min(a, room);
  }
  result.stats = stats_;
  return result;
}

std::optional<Episode> Miner::test_episode(const InstanceSet& set, const EdgeSet& weak_forbidden,
                                           const EdgeSet& proper_forbidden,
                                           std::int64_t parent_support) {
  ++stats_.scans;
  std::int64_t fr = support(set, cfg_.window);
  auto notify = [&](const Episode* accepted) {
    if (observer_) observer_(MinerVisit{set.episode(), fr, parent_support, accepted});
  };

  if (fr < cfg_.min_support) {
    notify(nullptr);
    return std::nullopt;
  }
  Episode g = instance_closure(set);
  bool rejected = has_cycle(g);
  for (const Edge& e : g.edges(EdgeKind::weak))
    if (rejected || weak_forbidden.count(e)) rejected = true;
  for (const Edge& e : g.edges(EdgeKind::proper))
    if (rejected || proper_forbidden.count(e) || weak_forbidden.count(e)) rejected = true;
  if (rejected) {
    notify(nullptr);
    return std::nullopt;
  }

  g.set_support(fr);
  ++stats_.i_closed;
  std::uint64_t& best = best_estimate_[g.labels()];
  best = std::max(best, count_same_node_subepisodes(g));
  store_.offer(g, solver_);
  notify(&g);
  return g;
}

void Miner::mine_parallel(const InstanceSet& set, const Episode& g) {
  mine_weak(set, g, {});

  std::size_t m = g.node_count();
  NodeId last = m - 1;
  const LabelMultiset& own = g.node_labels(last);
  std::int64_t fr = g.support().value();

  for (const Label& x : frequent_labels_) {
    if (x < own.max()) continue;
    LabelMultiset grown = own;
    grown.insert(x);
    if (m > 1 && !lex_leq(grown, g.node_labels(m - 2))) continue;
    InstanceSet next = augment_equal(*index_, set, last, x);
    guard(next);
    if (auto h = test_episode(next, {}, {}, fr)) mine_parallel(next, *h);
  }
  for (const Label& x : frequent_labels_) {
    if (x > own.min()) break;
    InstanceSet next = augment(*index_, set, x);
    guard(next);
    if (auto h = test_episode(next, {}, {}, fr)) mine_parallel(next, *h);
  }
}

void Miner::mine_weak(const InstanceSet& set, const Episode& g, EdgeSet forbidden) {
  std::size_t n = g.node_count();
  EdgeSet non_edges;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      if (a != b && !g.connected(a, b)) non_edges.emplace(a, b);
  mine_proper(set, g, non_edges, {});

  std::int64_t fr = g.support().value();
  for (const Edge& e : non_edges) {
    if (forbidden.count(e) || !is_transitively_closed_with(g, e, EdgeKind::weak)) continue;
    InstanceSet next = filter_weak(set, e.first, e.second);
    if (auto h = test_episode(next, forbidden, {}, fr)) mine_weak(next, *h, forbidden);
    forbidden.insert(e);
  }
}

void Miner::mine_proper(const InstanceSet& set, const Episode& g, const EdgeSet& weak_forbidden,
                        EdgeSet proper_forbidden) {
  std::int64_t fr = g.support().value();
  for (const Edge& e : g.edges(EdgeKind::weak)) {
    if (proper_forbidden.count(e) || !is_transitively_closed_with(g, e, EdgeKind::proper))
      continue;
    InstanceSet next = filter_proper(set, e.first, e.second);
    if (auto h = test_episode(next, weak_forbidden, proper_forbidden, fr))
      mine_proper(next, *h, weak_forbidden, proper_forbidden);
    proper_forbidden.insert(e);
  }
}

void Miner::guard(const InstanceSet& set) const {
  if (set.size() > cfg_.instance_abort)
    throw ResourceError("instance limit of " + std::to_string(cfg_.instance_abort) +
                        " exceeded while extending " + serialize_episode(set.episode()));
}

MineResult mine(const Sequence& s, const MinerConfig& cfg) { return Miner(cfg).run(s); }

void sort_episodes(std::vector<Episode>& episodes) {
  std::vector<std::pair<std::string, Episode>> keyed;
  keyed.reserve(episodes.size());
  for (Episode& g : episodes) {
    Episode bare = canonical(g);
    bare.set_support(std::nullopt);
    keyed.emplace_back(serialize_episode(bare), std::move(g));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    std::int64_t fx = x.second.support().value_or(0);
    std::int64_t fy = y.second.support().value_or(0);
    if (fx != fy) return fx > fy;
    return x.first < y.first;
  });
  episodes.clear();
  for (auto& [key, g] : keyed) episodes.push_back(std::move(g));
}

}  // namespace episodary
