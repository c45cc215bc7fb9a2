#include "hamsim/process.hpp"

#include <algorithm>
#include <string>

namespace hamsim {

namespace {
constexpr std::uint64_t kDensePairLimit = std::uint64_t{1} << 27;

std::uint64_t pair_count(std::size_t n) {
  return static_cast<std::uint64_t>(n) * (n - (n > 0 ? 1 : 0)) / 2;
}
}  // namespace

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::Missing ? "missing" : "unpresented";
}

SamplingMode parse_sampling_mode(std::string_view text) {
  if (text == "missing") return SamplingMode::Missing;
  if (text == "unpresented") return SamplingMode::Unpresented;
  throw std::invalid_argument("unknown sampling mode: " + std::string(text));
}

PairSet::PairSet(std::size_t n) : n_(n), dense_(pair_count(n) <= kDensePairLimit) {
  if (dense_) bits_.assign((pair_count(n) + 63) / 64, 0);
}

std::uint64_t PairSet::index(Edge e) const {
  // Row-major rank of (u, v), u < v.
  const std::uint64_t u = e.u;
  return u * (2 * n_ - u - 1) / 2 + (e.v - u - 1);
}

bool PairSet::contains(Edge e) const {
  if (dense_) {
    const std::uint64_t i = index(e);
    return (bits_[i >> 6] >> (i & 63)) & 1;
  }
  return hashed_.contains(edge_key(e));
}

void PairSet::insert(Edge e) {
  if (dense_) {
    const std::uint64_t i = index(e);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (!(bits_[i >> 6] & mask)) {
      bits_[i >> 6] |= mask;
      ++size_;
    }
    return;
  }
  if (hashed_.insert(edge_key(e)).second) ++size_;
}

ProcessState::ProcessState(std::size_t n, std::size_t k, SamplingMode mode,
                           std::uint64_t seed)
    : n_(n),
      k_(k),
      mode_(mode),
      seed_(seed),
      rng_(derive_seed(seed, kProcessStream)),
      builder_(n),
      presented_(mode == SamplingMode::Unpresented ? n : 0) {
  if (n < 2) throw std::invalid_argument("process needs at least 2 vertices");
  if (k == 0) throw std::invalid_argument("K must be positive");
}

std::uint64_t ProcessState::eligible_count() const {
  const std::uint64_t total = pair_count(n_);
  const std::uint64_t taken =
      mode_ == SamplingMode::Missing ? builder_.num_edges() : presented_.size();
  return total - taken;
}

bool ProcessState::eligible(Edge e) const {
  if (e.u == e.v || e.v >= n_) return false;
  return mode_ == SamplingMode::Missing ? !builder_.has_edge(e.u, e.v)
                                        : !presented_.contains(e);
}

void ProcessState::push_scripted_round(std::vector<Edge> pairs) {
  for (Edge& e : pairs) e = make_edge(e.u, e.v);
  script_.push_back(std::move(pairs));
}

PresentedRound present_round(ProcessState& state) {
  PresentedRound r;
  r.pairs.reserve(state.k_);
  if (!state.script_.empty()) {
    r.pairs = std::move(state.script_.front());
    state.script_.pop_front();
    if (r.pairs.size() != state.k_) {
      throw std::invalid_argument("scripted round must present exactly K pairs");
    }
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
      const Edge e = r.pairs[i];
      if (!state.eligible(e) ||
          std::find(r.pairs.begin(), r.pairs.begin() + i, e) !=
              r.pairs.begin() + i) {
        throw std::invalid_argument("scripted round presents an ineligible pair");
      }
    }
  } else {
    if (state.eligible_count() < state.k_) {
      throw ProcessExhausted("fewer than K eligible pairs remain");
    }
    // Rejection against the eligible set and against pairs already drawn
    // this round gives a uniform K-subset in uniform random order.
    const auto n = static_cast<std::uint64_t>(state.n_);
    while (r.pairs.size() < state.k_) {
      const auto a = static_cast<Vertex>(state.rng_.below(n));
      auto b = static_cast<Vertex>(state.rng_.below(n - 1));
      if (b >= a) ++b;
      const Edge e = make_edge(a, b);
      if (!state.eligible(e)) continue;
      if (std::find(r.pairs.begin(), r.pairs.end(), e) != r.pairs.end()) continue;
      r.pairs.push_back(e);
    }
  }
  if (state.mode_ == SamplingMode::Unpresented) {
    for (Edge e : r.pairs) state.presented_.insert(e);
  }
  r.round = ++state.round_;
  return r;
}

void select(ProcessState& state, const PresentedRound& round,
            std::optional<Edge> choice) {
  if (!choice) return;
  if (round.round != state.round_) {
    throw std::invalid_argument("selection for a stale round");
  }
  if (state.last_selection_round_ == round.round) {
    throw std::invalid_argument("at most one selection per round");
  }
  const Edge e = make_edge(choice->u, choice->v);
  if (std::find(round.pairs.begin(), round.pairs.end(), e) == round.pairs.end()) {
    throw std::invalid_argument("choice was not presented this round");
  }
  if (!state.builder_.add_edge(e)) {
    throw std::invalid_argument("choice is already in the builder graph");
  }
  state.last_selection_round_ = round.round;
  state.log_.push_back({round.round, e});
}

}  // namespace hamsim
