#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hamsim/graph.hpp"
#include "hamsim/rng.hpp"

namespace hamsim {

/// Which pairs may be presented: pairs missing from the builder graph, or
/// pairs never presented before.
enum class SamplingMode { Missing, Unpresented };

std::string_view to_string(SamplingMode mode);
SamplingMode parse_sampling_mode(std::string_view text);

struct PresentedRound {
  std::uint64_t round = 0;
  std::vector<Edge> pairs;
};

struct Selection {
  std::uint64_t round = 0;
  Edge edge;

  friend bool operator==(const Selection&, const Selection&) = default;
};

/// Raised when fewer than K eligible pairs remain.
class ProcessExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Set of vertex pairs; a bitset over all C(n,2) pairs when that is small,
/// a hash set otherwise.
class PairSet {
 public:
  explicit PairSet(std::size_t n);
  bool contains(Edge e) const;
  void insert(Edge e);
  std::size_t size() const { return size_; }

 private:
  std::uint64_t index(Edge e) const;

  std::size_t n_;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> hashed_;
  bool dense_;
};

class ProcessState {
 public:
  ProcessState(std::size_t n, std::size_t k, SamplingMode mode,
               std::uint64_t seed);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  SamplingMode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t round() const { return round_; }
  const Graph& builder() const { return builder_; }
  const std::vector<Selection>& selected_log() const { return log_; }
  std::size_t presented_count() const { return presented_.size(); }

  /// Number of pairs currently eligible for presentation.
  std::uint64_t eligible_count() const;

  /// Queue a round to be presented verbatim ahead of random sampling.
  /// The pairs must be K distinct eligible pairs at presentation time.
  void push_scripted_round(std::vector<Edge> pairs);
  std::size_t scripted_rounds_pending() const { return script_.size(); }

 private:
  friend PresentedRound present_round(ProcessState& state);
  friend void select(ProcessState& state, const PresentedRound& round,
                     std::optional<Edge> choice);

  bool eligible(Edge e) const;

  std::size_t n_;
  std::size_t k_;
  SamplingMode mode_;
  std::uint64_t seed_;
  Rng rng_;
  std::uint64_t round_ = 0;
  std::uint64_t last_selection_round_ = 0;
  Graph builder_;
  PairSet presented_;
  std::vector<Selection> log_;
  std::deque<std::vector<Edge>> script_;
};

/// Advances the clock and presents K distinct pairs drawn uniformly from
/// the eligible set (or the next scripted round).
PresentedRound present_round(ProcessState& state);

/// Applies the strategy's decision for the round just presented.
/// Throws std::invalid_argument if the choice was not presented, is
/// already in the builder, or the round is stale.
void select(ProcessState& state, const PresentedRound& round,
            std::optional<Edge> choice);

/// Runs rounds until the clock reaches `end_round`; `choose` sees each
/// round and returns the index of the pair to select, if any. `on_select`
/// is called after a selection has been applied.
template <typename Choose, typename OnSelect>
std::size_t run_window(ProcessState& state, std::uint64_t end_round,
                       Choose&& choose, OnSelect&& on_select) {
  std::size_t selected = 0;
  while (state.round() < end_round) {
    PresentedRound r = present_round(state);
    std::optional<std::size_t> pick = choose(r);
    if (pick) {
      const Edge e = r.pairs[*pick];
      select(state, r, e);
      on_select(e);
      ++selected;
    }
  }
  return selected;
}

}  // namespace hamsim
