#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "episodary/error.hpp"
#include "episodary/miner.hpp"
#include "episodary/oracle.hpp"
#include "fixtures.hpp"
#include "universe.hpp"

using namespace episodary;
using fixtures::make;

namespace {

std::string text(Episode g) {
  g.set_support(std::nullopt);
  return serialize_episode(g);
}

std::vector<std::string> texts_with_support(const std::vector<Episode>& episodes) {
  std::vector<std::string> out;
  for (const Episode& g : episodes) out.push_back(serialize_episode(g));
  return out;
}

Episode with_support(Episode g, std::int64_t support) {
  g.set_support(support);
  return g;
}

}  // namespace

TEST_CASE("search space of (aa)ba") {
  Sequence s = sequence_from_shorthand("(aa)ba");
  MinerConfig cfg;
  cfg.window = 2;
  cfg.min_support = 2;
  std::map<std::string, std::int64_t> visited;
  bool child_of_infrequent = false;
  Miner miner(cfg, [&](const MinerVisit& v) {
    visited.emplace(text(v.candidate), v.support);
    if (v.support < cfg.min_support) CHECK(v.accepted == nullptr);
    if (v.parent_support >= 0 && v.parent_support < cfg.min_support) child_of_infrequent = true;
  });
  MineResult result = miner.run(s);

  CHECK(visited.at(text(make({{"a"}}, {}))) == 4);
  CHECK(visited.at(text(make({{"b"}}, {}))) == 2);
  CHECK(visited.at(text(make({{"a", "a"}}, {}))) == 2);
  CHECK(visited.at(text(make({{"a"}, {"b"}}, {}))) == 2);
  CHECK_FALSE(child_of_infrequent);

  std::vector<std::string> expected{
      serialize_episode(with_support(make({{"a"}}, {}), 4)),
      serialize_episode(with_support(make({{"a", "a"}}, {}), 2)),
      serialize_episode(with_support(make({{"a"}, {"b"}}, {}), 2)),
  };
  CHECK(texts_with_support(result.episodes) == expected);
  CHECK(result.stats.closed == 3);
}

TEST_CASE("empty sequence and invalid configurations") {
  MinerConfig cfg;
  MineResult result = mine(Sequence{}, cfg);
  CHECK(result.episodes.empty());
  CHECK(result.stats.closed == 0);

  Sequence s = sequence_from_shorthand("ab");
  cfg.window = 0;
  CHECK_THROWS_AS(mine(s, cfg), std::invalid_argument);
  cfg.window = 1;
  cfg.min_support = 0;
  CHECK_THROWS_AS(mine(s, cfg), std::invalid_argument);
}

TEST_CASE("threshold above every support gives no output") {
  MinerConfig cfg;
  cfg.window = 3;
  cfg.min_support = 100;
  CHECK(mine(sequence_from_shorthand("abcab"), cfg).episodes.empty());
}

TEST_CASE("planted pattern with two nodes") {
  PlantedConfig planted;
  planted.nodes = 2;
  Sequence s = gen_planted(planted);
  MinerConfig cfg;
  cfg.window = 10;
  cfg.min_support = 100;
  MineResult result = mine(s, cfg);
  CHECK(result.stats.closed == 3);
  CHECK(result.stats.i_closed == 15);

  Label s1 = planted_label(1, 2), s2 = planted_label(2, 2);
  Label s3 = planted_label(3, 2), s4 = planted_label(4, 2);
  std::vector<std::string> expected{
      serialize_episode(with_support(make({{s1, s2}}, {}), 1000)),
      serialize_episode(with_support(make({{s3, s4}}, {}), 1000)),
      serialize_episode(with_support(make({{s1, s2}, {s3, s4}}, {{0, 1}}), 900)),
  };
  auto got = texts_with_support(result.episodes);
  CHECK(std::is_permutation(got.begin(), got.end(), expected.begin(), expected.end()));
  CHECK(got.back() == expected.back());
}

TEST_CASE("output order is descending support, then text") {
  MinerConfig cfg;
  cfg.window = 4;
  cfg.min_support = 1;
  MineResult result = mine(sequence_from_shorthand("abcbdacbcd"), cfg);
  REQUIRE(result.episodes.size() > 1);
  for (std::size_t i = 1; i < result.episodes.size(); ++i) {
    const Episode& x = result.episodes[i - 1];
    const Episode& y = result.episodes[i];
    CHECK(*x.support() >= *y.support());
    if (*x.support() == *y.support()) CHECK(text(x) < text(y));
  }
}

TEST_CASE("output does not depend on the order of simultaneous events") {
  Sequence s = sequence_from_shorthand("(abc)b(ca)d(ab)");
  std::vector<SequenceEvent> events = s.events();
  std::reverse(events.begin(), events.end());
  std::stable_sort(events.begin(), events.end(),
                   [](const SequenceEvent& x, const SequenceEvent& y) { return x.ts < y.ts; });
  for (std::size_t i = 0; i < events.size(); ++i) events[i].id = static_cast<std::int64_t>(i + 1);
  Sequence shuffled(events);
  MinerConfig cfg;
  cfg.window = 3;
  cfg.min_support = 2;
  CHECK(texts_with_support(mine(s, cfg).episodes) ==
        texts_with_support(mine(shuffled, cfg).episodes));
}

TEST_CASE("visits are anti-monotone and label-distinct episodes are accepted once") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 40; ++round) {
    Sequence s = fixtures::random_sequence(rng, 10, 4);
    MinerConfig cfg;
    cfg.window = std::uniform_int_distribution<int>(1, 4)(rng);
    cfg.min_support = std::uniform_int_distribution<int>(1, 3)(rng);
    std::map<std::string, int> accepted;
    Miner miner(cfg, [&](const MinerVisit& v) {
      if (v.parent_support >= 0) CHECK(v.support <= v.parent_support);
      if (!v.accepted) return;
      CHECK(v.support >= cfg.min_support);
      CHECK_FALSE(has_cycle(*v.accepted));
      LabelMultiset labels = v.accepted->labels();
      if (std::adjacent_find(labels.labels().begin(), labels.labels().end()) == labels.labels().end())
        CHECK(++accepted[text(*v.accepted)] == 1);
    });
    MineResult result = miner.run(s);
    CHECK(result.stats.closed == result.episodes.size());
    CHECK(result.stats.closed <= result.stats.i_closed);
    for (const Episode& g : result.episodes)
      CHECK(*g.support() == oracle::brute_support(s, g, cfg.window));
  }
}

TEST_CASE("store keeps the strict superepisodes of equal support") {
  Sequence s = sequence_from_shorthand("abcbdacbcd");
  using namespace fixtures::closure;
  CHECK(oracle::brute_support(s, g2(), 5) == 2);
  CHECK(oracle::brute_support(s, g3(), 5) == 2);
  CHECK(oracle::brute_support(s, g4(), 5) == 2);

  SubepisodeSolver solver;
  ClosedStore store;
  CHECK(store.offer(with_support(g2(), 2), solver));
  CHECK(store.offer(with_support(g3(), 2), solver));
  CHECK(store.size() == 1);
  CHECK_FALSE(store.offer(with_support(g2(), 2), solver));
  CHECK(store.offer(with_support(g4(), 2), solver));
  CHECK(store.offer(with_support(g2(), 3), solver));
  CHECK(store.size() == 3);

  auto kept = store.post_filter(solver);
  std::vector<std::string> got;
  for (const Episode& g : kept) got.push_back(text(g));
  std::sort(got.begin(), got.end());
  std::vector<std::string> expected{text(g2()), text(g3()), text(g4())};
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);
}

TEST_CASE("closed output on abcbdacbcd drops the i-closed episode with closed extensions") {
  Sequence s = sequence_from_shorthand("abcbdacbcd");
  MinerConfig cfg;
  cfg.window = 5;
  cfg.min_support = 2;
  MineResult result = mine(s, cfg);
  SubepisodeSolver solver;
  bool has_g3 = false, has_g4 = false;
  for (const Episode& g : result.episodes) {
    if (*g.support() != 2 || g.labels() != LabelMultiset{"a", "b", "c", "d"}) continue;
    CHECK_FALSE(solver.subepisode(g, fixtures::closure::g2()));
    has_g3 = has_g3 || solver.similar(g, fixtures::closure::g3());
    has_g4 = has_g4 || solver.similar(g, fixtures::closure::g4());
  }
  CHECK(has_g3);
  CHECK(has_g4);
}

TEST_CASE("instance limit") {
  Sequence s = sequence_from_shorthand("aaaaaaaaaa");
  MinerConfig cfg;
  cfg.window = 10;
  cfg.min_support = 1;
  cfg.instance_abort = 5;
  CHECK_THROWS_AS(mine(s, cfg), ResourceError);
}

TEST_CASE("frequent estimate for a single planted node") {
  PlantedConfig planted;
  Sequence s = gen_planted(planted);
  MinerConfig cfg;
  cfg.window = 10;
  cfg.min_support = 100;
  MineResult result = mine(s, cfg);
  CHECK(result.stats.closed == 1);
  CHECK(result.stats.i_closed == 3);
  CHECK(result.stats.frequent_estimate == 3);
}

TEST_CASE("agreement with the brute-force closed set on every tiny sequence") {
  std::size_t runs = 0;
  for (int length = 1; length <= 3; ++length)
    universe::for_each_sequence(length, 2, [&](const Sequence& s) {
      for (Timestamp window = 1; window <= 4; ++window)
        for (std::int64_t sigma = 1; sigma <= 3; ++sigma) {
          auto c = universe::compare_with_brute(s, window, sigma);
          if (c.skipped) continue;
          ++runs;
          if (!c.equal) FAIL_CHECK(c.detail);
        }
    });
  CHECK(runs > 300);
}

TEST_CASE("agreement with the brute-force closed set on random sequences") {
  std::mt19937_64 rng(8);
  int compared = 0;
  for (int round = 0; round < 40; ++round) {
    int length = std::uniform_int_distribution<int>(1, 8)(rng);
    int alphabet = std::uniform_int_distribution<int>(1, 3)(rng);
    Sequence s = fixtures::random_sequence(rng, length, alphabet);
    Timestamp window = std::uniform_int_distribution<int>(1, 4)(rng);
    std::int64_t sigma = std::uniform_int_distribution<int>(1, 4)(rng);
    auto c = universe::compare_with_brute(s, window, sigma);
    if (c.skipped) continue;
    ++compared;
    if (!c.equal) FAIL_CHECK(c.detail);
  }
  CHECK(compared > 30);
}
