#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace episodary {

using Label = std::string;
using Timestamp = std::int64_t;

struct SequenceEvent {
  std::int64_t id;
  Label label;
  Timestamp ts;

  friend bool operator==(const SequenceEvent&, const SequenceEvent&) = default;
};

/// Events ordered by id; a larger id never carries a smaller time stamp.
/// Several events may share a time stamp, including events with equal labels.
class Sequence {
 public:
  Sequence() = default;

  /// Throws std::invalid_argument if ids are not strictly increasing or time
  /// stamps decrease.
  explicit Sequence(std::vector<SequenceEvent> events);

  const std::vector<SequenceEvent>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const SequenceEvent& operator[](std::size_t i) const { return events_[i]; }

  /// Distinct labels in byte-lexicographic order.
  const std::vector<Label>& alphabet() const noexcept { return alphabet_; }

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.events_ == b.events_;
  }

 private:
  std::vector<SequenceEvent> events_;
  std::vector<Label> alphabet_;
};

/// Reads `<ts> <label>` lines; `#` lines and blank lines are skipped. Ids are
/// assigned 1..N in file order.
Sequence parse_sequence(std::istream& in);
Sequence parse_sequence(std::string_view text);

/// Inverse of parse_sequence (ids are not written).
std::string serialize_sequence(const Sequence& s);
void write_sequence(std::ostream& out, const Sequence& s);

/// All events with first <= ts <= last, ids and time stamps preserved.
Sequence subsequence(const Sequence& s, Timestamp first, Timestamp last);

/// Builds a sequence from the shorthand used for small fixtures: each
/// character is one event at the next time stamp, and a parenthesised group
/// shares a single time stamp. "(aa)ba" gives a@1 a@1 b@2 a@3.
Sequence sequence_from_shorthand(std::string_view shorthand);

struct PlantedConfig {
  int nodes = 1;
  int reps = 100;
  Timestamp gap = 50;
  int noise_count = 500;
  int noise_alphabet = 900;
  std::uint64_t seed = 1;
};

/// Repeats the pattern (s1 s2)(s3 s4)...(s_{2N-1} s_{2N}) `reps` times, node k
/// of repetition r at time r*gap + k, and scatters `noise_count` events with
/// labels t1..t_M uniformly over [1, reps*gap].
Sequence gen_planted(const PlantedConfig& cfg);

/// Label of the k-th planted pattern symbol (1-based), zero padded so that
/// byte order equals numeric order.
Label planted_label(int k, int nodes);

}  // namespace episodary
