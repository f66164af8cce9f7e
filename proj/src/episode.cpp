#include "episodary/episode.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "episodary/error.hpp"

namespace episodary {

// ---------------------------------------------------------------------------
// LabelMultiset

LabelMultiset::LabelMultiset(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
}

void LabelMultiset::insert(const Label& label) {
  labels_.insert(std::upper_bound(labels_.begin(), labels_.end(), label), label);
}

void LabelMultiset::subtract(const LabelMultiset& other) {
  std::vector<Label> rest;
  rest.reserve(labels_.size());
  std::set_difference(labels_.begin(), labels_.end(), other.labels_.begin(),
                      other.labels_.end(), std::back_inserter(rest));
  labels_ = std::move(rest);
}

void LabelMultiset::merge(const LabelMultiset& other) {
  std::vector<Label> all;
  all.reserve(labels_.size() + other.labels_.size());
  std::merge(labels_.begin(), labels_.end(), other.labels_.begin(), other.labels_.end(),
             std::back_inserter(all));
  labels_ = std::move(all);
}

bool LabelMultiset::includes(const LabelMultiset& other) const {
  return std::includes(labels_.begin(), labels_.end(), other.labels_.begin(),
                       other.labels_.end());
}

bool LabelMultiset::intersects(const LabelMultiset& other) const {
  auto a = labels_.begin();
  auto b = other.labels_.begin();
  while (a != labels_.end() && b != other.labels_.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

std::size_t LabelMultiset::count(const Label& label) const {
  auto range = std::equal_range(labels_.begin(), labels_.end(), label);
  return static_cast<std::size_t>(std::distance(range.first, range.second));
}

std::string LabelMultiset::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) out += ',';
    out += labels_[i];
  }
  return out + "}";
}

bool lex_leq(const LabelMultiset& x, const LabelMultiset& y) {
  return !std::lexicographical_compare(y.labels().begin(), y.labels().end(),
                                       x.labels().begin(), x.labels().end());
}

bool lex_less(const LabelMultiset& x, const LabelMultiset& y) {
  return std::lexicographical_compare(x.labels().begin(), x.labels().end(),
                                      y.labels().begin(), y.labels().end());
}

// ---------------------------------------------------------------------------
// Episode

NodeId Episode::add_node() {
  std::size_t n = node_count();
  std::vector<EdgeKind> grown((n + 1) * (n + 1), EdgeKind::none);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) grown[i * (n + 1) + j] = adjacency_[i * n + j];
  adjacency_ = std::move(grown);
  node_labels_.emplace_back();
  node_events_.emplace_back();
  return n;
}

std::size_t Episode::add_event(NodeId node, Label label) {
  if (node >= node_count()) throw std::out_of_range("add_event: no such node");
  std::size_t index = events_.size();
  node_labels_[node].insert(label);
  node_events_[node].push_back(index);
  events_.push_back({static_cast<std::int64_t>(index + 1), std::move(label)});
  node_of_.push_back(node);
  return index;
}

NodeId Episode::add_node(const std::vector<Label>& labels) {
  NodeId n = add_node();
  for (const auto& l : labels) add_event(n, l);
  return n;
}

LabelMultiset Episode::labels() const {
  std::vector<Label> all;
  all.reserve(events_.size());
  for (const auto& e : events_) all.push_back(e.label);
  return LabelMultiset(std::move(all));
}

void Episode::set_edge(NodeId from, NodeId to, EdgeKind kind) {
  if (from == to) throw std::invalid_argument("episode edges cannot be self loops");
  if (from >= node_count() || to >= node_count())
    throw std::out_of_range("set_edge: no such node");
  adjacency_[from * node_count() + to] = kind;
}

void Episode::clear_edges() { std::fill(adjacency_.begin(), adjacency_.end(), EdgeKind::none); }

std::vector<Edge> Episode::edges(EdgeKind kind) const {
  std::vector<Edge> out;
  for (NodeId a = 0; a < node_count(); ++a)
    for (NodeId b = 0; b < node_count(); ++b)
      if (a != b && edge(a, b) == kind) out.emplace_back(a, b);
  return out;
}

std::size_t Episode::edge_count(EdgeKind kind) const {
  return static_cast<std::size_t>(std::count(adjacency_.begin(), adjacency_.end(), kind));
}

Episode Episode::induced(const std::vector<NodeId>& keep) const {
  Episode out;
  for (NodeId n : keep) {
    NodeId m = out.add_node();
    for (std::size_t e : node_events_[n]) out.add_event(m, events_[e].label);
  }
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (i != j) out.adjacency_[i * keep.size() + j] = edge(keep[i], keep[j]);
  return out;
}

Episode Episode::without(const std::vector<bool>& removed) const {
  std::vector<NodeId> keep;
  for (NodeId n = 0; n < node_count(); ++n)
    if (n >= removed.size() || !removed[n]) keep.push_back(n);
  return induced(keep);
}

// ---------------------------------------------------------------------------
// Closure and cycles

namespace {

// reach[i*n+j]: 0 none, 1 weak path, 2 path through a proper edge.
std::vector<std::uint8_t> reachability(const Episode& g) {
  std::size_t n = g.node_count();
  std::vector<std::uint8_t> reach(n * n, 0);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      if (a != b) reach[a * n + b] = static_cast<std::uint8_t>(g.edge(a, b));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint8_t ik = reach[i * n + k];
      if (!ik) continue;
      for (std::size_t j = 0; j < n; ++j) {
        std::uint8_t kj = reach[k * n + j];
        if (!kj) continue;
        std::uint8_t via = std::max(ik, kj);
        if (via > reach[i * n + j]) reach[i * n + j] = via;
      }
    }
  }
  return reach;
}

bool reach_has_cycle(const std::vector<std::uint8_t>& reach, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i * n + i]) return true;
  return false;
}

}  // namespace

bool has_cycle(const Episode& g) { return reach_has_cycle(reachability(g), g.node_count()); }

Episode transitive_closure(const Episode& g) {
  std::size_t n = g.node_count();
  auto reach = reachability(g);
  if (reach_has_cycle(reach, n)) throw CycleError("transitive closure of a cyclic episode");
  Episode out = g;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      if (a != b) out.set_edge(a, b, static_cast<EdgeKind>(reach[a * n + b]));
  return out;
}

bool is_transitively_closed(const Episode& g) {
  std::size_t n = g.node_count();
  auto reach = reachability(g);
  if (reach_has_cycle(reach, n)) return false;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      if (a != b && static_cast<EdgeKind>(reach[a * n + b]) != g.edge(a, b)) return false;
  return true;
}

bool is_transitively_closed_with(const Episode& g, Edge edge, EdgeKind kind) {
  auto [a, b] = edge;
  if (a == b || kind == EdgeKind::none) return false;
  Episode h = g;
  h.set_edge(a, b, kind);
  if (kind == EdgeKind::proper) return is_transitively_closed(h);

  // A new weak edge may turn existing weak edges proper, but must not imply
  // an edge between unconnected nodes.
  std::size_t n = h.node_count();
  auto reach = reachability(h);
  if (reach_has_cycle(reach, n)) return false;
  for (NodeId x = 0; x < n; ++x)
    for (NodeId y = 0; y < n; ++y)
      if (x != y && reach[x * n + y] != 0 && !h.connected(x, y)) return false;
  return true;
}

std::uint64_t count_same_node_subepisodes(const Episode& g) {
  constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  auto times = [&](std::uint64_t k, std::size_t reps) {
    for (std::size_t i = 0; i < reps; ++i) {
      if (total > cap / k) {
        total = cap;
        return;
      }
      total *= k;
    }
  };
  times(3, g.edge_count(EdgeKind::proper));
  times(2, g.edge_count(EdgeKind::weak));
  return total;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

std::vector<NodeId> label_order(const Episode& g) {
  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return lex_less(g.node_labels(a), g.node_labels(b));
  });
  return order;
}

std::string edge_encoding(const Episode& g, const std::vector<NodeId>& order) {
  std::string code;
  code.reserve(order.size() * order.size());
  for (NodeId a : order)
    for (NodeId b : order) code.push_back(static_cast<char>('0' + static_cast<int>(g.edge(a, b))));
  return code;
}

constexpr std::size_t kMaxCanonicalPermutations = 40320;

}  // namespace

std::vector<NodeId> canonical_node_order(const Episode& g) {
  std::vector<NodeId> order = label_order(g);

  // Runs of nodes with equal label multisets.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t permutations = 1;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && g.node_labels(order[j]) == g.node_labels(order[i])) ++j;
    if (j - i > 1) {
      groups.emplace_back(i, j);
      for (std::size_t k = 2; k <= j - i && permutations <= kMaxCanonicalPermutations; ++k)
        permutations *= k;
    }
    i = j;
  }
  if (groups.empty() || permutations > kMaxCanonicalPermutations) return order;

  std::vector<NodeId> best = order;
  std::string best_code = edge_encoding(g, order);
  // Odometer over the permutations of every tie group.
  for (auto& [lo, hi] : groups) std::sort(order.begin() + lo, order.begin() + hi);
  while (true) {
    std::string code = edge_encoding(g, order);
    if (code < best_code) {
      best_code = std::move(code);
      best = order;
    }
    std::size_t k = 0;
    for (; k < groups.size(); ++k) {
      auto [lo, hi] = groups[k];
      if (std::next_permutation(order.begin() + lo, order.begin() + hi)) break;
    }
    if (k == groups.size()) break;
  }
  return best;
}

Episode canonical(const Episode& g) {
  Episode out = g.induced(canonical_node_order(g));
  out.set_support(g.support());
  return out;
}

namespace {

std::string node_list(const Episode& g, std::string_view sep, bool numbered) {
  std::string out;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    if (n) out += sep;
    if (numbered) out += std::to_string(n + 1);
    std::string labels = g.node_labels(n).to_string();
    out += numbered ? labels : labels.substr(1, labels.size() - 2);
  }
  return out;
}

std::string edge_list(const Episode& g, EdgeKind kind, char arrow, std::string_view sep) {
  auto edges = g.edges(kind);
  if (edges.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(edges[i].first + 1);
    out += arrow;
    out += std::to_string(edges[i].second + 1);
  }
  return out;
}

}  // namespace

std::string serialize_episode(const Episode& g) {
  Episode c = canonical(g);
  std::string out = "nodes: " + node_list(c, " ", true);
  out += "; proper: " + edge_list(c, EdgeKind::proper, '>', " ");
  out += "; weak: " + edge_list(c, EdgeKind::weak, '~', " ");
  if (g.support()) out += "; support: " + std::to_string(*g.support());
  return out;
}

std::string episode_key(const Episode& g) {
  std::vector<NodeId> order = label_order(g);
  std::string key;
  for (NodeId n : order) {
    key += g.node_labels(n).to_string();
  }
  key += '|';
  key += edge_encoding(g, order);
  return key;
}

std::string episode_record(const Episode& g) {
  Episode c = canonical(g);
  std::string out = g.support() ? std::to_string(*g.support()) : std::string("-");
  out += '\t';
  out += std::to_string(c.node_count());
  out += '\t';
  out += c.empty() ? std::string("-") : node_list(c, ";", false);
  out += '\t';
  out += edge_list(c, EdgeKind::proper, '>', ";");
  out += '\t';
  out += edge_list(c, EdgeKind::weak, '~', ";");
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class EpisodeParser {
 public:
  explicit EpisodeParser(std::string_view text) : text_(text) {}

  Episode parse() {
    Episode g;
    keyword("nodes:");
    while (true) {
      skip_space();
      if (at_end() || peek() == ';') break;
      std::size_t index = number();
      if (index != g.node_count() + 1)
        fail("expected node " + std::to_string(g.node_count() + 1));
      expect('{');
      NodeId n = g.add_node();
      while (true) {
        std::string label = label_token();
        g.add_event(n, std::move(label));
        skip_space();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        expect('}');
        break;
      }
    }
    expect(';');
    keyword("proper:");
    edges(g, '>', EdgeKind::proper);
    expect(';');
    keyword("weak:");
    edges(g, '~', EdgeKind::weak);
    skip_space();
    if (!at_end() && peek() == ';') {
      ++pos_;
      keyword("support:");
      g.set_support(static_cast<std::int64_t>(number()));
    }
    skip_space();
    if (!at_end()) fail("unexpected trailing text");
    return g;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("episode column " + std::to_string(pos_ + 1) + ": " + what, 0, pos_ + 1);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void keyword(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) fail("expected '" + std::string(word) + "'");
    pos_ += word.size();
  }

  std::size_t number() {
    skip_space();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  std::string label_token() {
    skip_space();
    std::size_t start = pos_;
    while (!at_end()) {
      char c = peek();
      if (c == ',' || c == '}' || c == '{' || c == ';' ||
          std::isspace(static_cast<unsigned char>(c)))
        break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a label");
    return std::string(text_.substr(start, pos_ - start));
  }

  void edges(Episode& g, char arrow, EdgeKind kind) {
    skip_space();
    if (!at_end() && peek() == '-') {
      ++pos_;
      return;
    }
    while (true) {
      skip_space();
      if (at_end() || peek() == ';') return;
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      std::size_t from = number();
      expect(arrow);
      std::size_t to = number();
      if (from == 0 || to == 0 || from > g.node_count() || to > g.node_count())
        fail("edge refers to an unknown node");
      if (from == to) fail("self loop");
      if (g.connected(from - 1, to - 1)) fail("duplicate edge");
      g.set_edge(from - 1, to - 1, kind);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Episode parse_episode(std::string_view text) { return EpisodeParser(text).parse(); }

}  // namespace episodary
