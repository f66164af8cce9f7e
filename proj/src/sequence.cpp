#include "episodary/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "episodary/error.hpp"

namespace episodary {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

std::string pad_number(int value, int width) {
  std::string digits = std::to_string(value);
  if (static_cast<int>(digits.size()) < width)
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  return digits;
}

int digit_count(int value) { return static_cast<int>(std::to_string(value).size()); }

}  // namespace

Sequence::Sequence(std::vector<SequenceEvent> events) : events_(std::move(events)) {
  for (std::size_t i = 1; i < events_.size(); ++i) {
    if (events_[i].id <= events_[i - 1].id)
      throw std::invalid_argument("sequence ids must be strictly increasing");
    if (events_[i].ts < events_[i - 1].ts)
      throw std::invalid_argument("sequence time stamps must not decrease with id");
  }
  for (const auto& e : events_) alphabet_.push_back(e.label);
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
}

Sequence parse_sequence(std::istream& in) {
  std::vector<SequenceEvent> events;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    std::size_t split = 0;
    while (split < line.size() && !is_blank(line[split])) ++split;
    std::string_view ts_text = line.substr(0, split);
    std::string_view label = trim(line.substr(split));

    Timestamp ts = 0;
    auto [ptr, ec] = std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(), ts);
    if (ec != std::errc() || ptr != ts_text.data() + ts_text.size())
      throw ParseError("line " + std::to_string(line_no) + ": bad time stamp '" +
                           std::string(ts_text) + "'",
                       line_no);
    if (label.empty())
      throw ParseError("line " + std::to_string(line_no) + ": missing label", line_no);
    for (char c : label) {
      if (is_blank(c))
        throw ParseError("line " + std::to_string(line_no) + ": label contains whitespace",
                         line_no);
    }
    if (!events.empty() && ts < events.back().ts)
      throw OrderError("line " + std::to_string(line_no) + ": time stamp " +
                           std::to_string(ts) + " precedes " +
                           std::to_string(events.back().ts),
                       line_no);
    events.push_back({static_cast<std::int64_t>(events.size() + 1), Label(label), ts});
  }
  return Sequence(std::move(events));
}

Sequence parse_sequence(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_sequence(in);
}

void write_sequence(std::ostream& out, const Sequence& s) {
  for (const auto& e : s.events()) out << e.ts << ' ' << e.label << '\n';
}

std::string serialize_sequence(const Sequence& s) {
  std::ostringstream out;
  write_sequence(out, s);
  return out.str();
}

Sequence subsequence(const Sequence& s, Timestamp first, Timestamp last) {
  std::vector<SequenceEvent> kept;
  for (const auto& e : s.events()) {
    if (e.ts >= first && e.ts <= last) kept.push_back(e);
  }
  return Sequence(std::move(kept));
}

Sequence sequence_from_shorthand(std::string_view shorthand) {
  std::vector<SequenceEvent> events;
  Timestamp ts = 0;
  bool in_group = false;
  for (char c : shorthand) {
    if (c == '(') {
      if (in_group) throw std::invalid_argument("nested group in shorthand");
      in_group = true;
      ++ts;
    } else if (c == ')') {
      if (!in_group) throw std::invalid_argument("unbalanced ')' in shorthand");
      in_group = false;
    } else if (!is_blank(c)) {
      if (!in_group) ++ts;
      events.push_back({static_cast<std::int64_t>(events.size() + 1), Label(1, c), ts});
    }
  }
  if (in_group) throw std::invalid_argument("unterminated group in shorthand");
  return Sequence(std::move(events));
}

Label planted_label(int k, int nodes) {
  return "s" + pad_number(k, digit_count(2 * nodes));
}

Sequence gen_planted(const PlantedConfig& cfg) {
  if (cfg.nodes < 1 || cfg.reps < 1 || cfg.gap < 1 || cfg.noise_count < 0 ||
      cfg.noise_alphabet < 0)
    throw std::invalid_argument("gen_planted: nodes, reps, gap must be >= 1");
  if (cfg.noise_count > 0 && cfg.noise_alphabet == 0)
    throw std::invalid_argument("gen_planted: noise events need a non-empty noise alphabet");

  struct Draft {
    Timestamp ts;
    bool noise;
    Label label;
  };
  std::vector<Draft> drafts;
  drafts.reserve(static_cast<std::size_t>(2 * cfg.nodes * cfg.reps + cfg.noise_count));

  for (int r = 0; r < cfg.reps; ++r) {
    for (int k = 1; k <= cfg.nodes; ++k) {
      Timestamp ts = r * cfg.gap + k;
      drafts.push_back({ts, false, planted_label(2 * k - 1, cfg.nodes)});
      drafts.push_back({ts, false, planted_label(2 * k, cfg.nodes)});
    }
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> pick_label(1, std::max(cfg.noise_alphabet, 1));
  std::uniform_int_distribution<Timestamp> pick_ts(1, cfg.reps * cfg.gap);
  int width = digit_count(cfg.noise_alphabet);
  for (int i = 0; i < cfg.noise_count; ++i) {
    int label = pick_label(rng);
    Timestamp ts = pick_ts(rng);
    drafts.push_back({ts, true, "t" + pad_number(label, width)});
  }

  std::stable_sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
    if (a.ts != b.ts) return a.ts < b.ts;
    if (a.noise != b.noise) return !a.noise;
    return a.label < b.label;
  });

  std::vector<SequenceEvent> events;
  events.reserve(drafts.size());
  for (auto& d : drafts)
    events.push_back({static_cast<std::int64_t>(events.size() + 1), std::move(d.label), d.ts});
  return Sequence(std::move(events));
}

}  // namespace episodary
