#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "hamsim/process.hpp"

using namespace hamsim;

namespace {

double chi_square_p(const std::vector<double>& observed, double expected) {
  double stat = 0;
  for (double o : observed) stat += (o - expected) * (o - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

TEST_CASE("pair set indexes every pair once") {
  for (std::size_t n : {2u, 7u, 40u}) {
    PairSet s(n);
    std::size_t count = 0;
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) {
        CHECK_FALSE(s.contains({a, b}));
        s.insert({a, b});
        s.insert({a, b});
        CHECK(s.contains({a, b}));
        ++count;
      }
    }
    CHECK(s.size() == count);
  }
}

TEST_CASE("n=3, K=3 presents all three pairs") {
  ProcessState st(3, 3, SamplingMode::Missing, 1);
  const PresentedRound r = present_round(st);
  CHECK(r.round == 1);
  std::vector<Edge> pairs = r.pairs;
  std::sort(pairs.begin(), pairs.end());
  CHECK(pairs == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("rounds present K distinct eligible pairs") {
  ProcessState st(30, 4, SamplingMode::Missing, 8);
  for (int i = 0; i < 200; ++i) {
    const PresentedRound r = present_round(st);
    REQUIRE(r.pairs.size() == 4);
    std::set<Edge> distinct(r.pairs.begin(), r.pairs.end());
    CHECK(distinct.size() == 4);
    for (Edge e : r.pairs) {
      CHECK(e.u < e.v);
      CHECK(e.v < 30);
      CHECK_FALSE(st.builder().has_edge(e.u, e.v));
    }
    if (i % 3 == 0) select(st, r, r.pairs[1]);
  }
  CHECK(st.builder().num_edges() == 67);
  CHECK(st.eligible_count() == 435 - 67);
}

TEST_CASE("missing mode: uniform marginals from the empty builder") {
  ProcessState st(6, 2, SamplingMode::Missing, 2024);
  std::map<Edge, double> counts;
  const int rounds = 100000;
  for (int i = 0; i < rounds; ++i) {
    for (Edge e : present_round(st).pairs) counts[e] += 1;
  }
  REQUIRE(counts.size() == 15);
  std::vector<double> obs;
  for (const auto& [e, c] : counts) obs.push_back(c);
  const double p = chi_square_p(obs, 2.0 * rounds / 15.0);
  MESSAGE("chi-square p = " << p);
  CHECK(p > 0.001);
}

TEST_CASE("missing mode: marginals stay uniform over the shrinking eligible set") {
  ProcessState st(7, 3, SamplingMode::Missing, 77);
  // Put 6 edges in the builder, then sample from the remaining 15.
  for (int i = 0; i < 6; ++i) {
    const PresentedRound r = present_round(st);
    select(st, r, r.pairs[0]);
  }
  REQUIRE(st.eligible_count() == 15);
  std::map<Edge, double> counts;
  const int rounds = 60000;
  for (int i = 0; i < rounds; ++i) {
    for (Edge e : present_round(st).pairs) {
      CHECK_FALSE(st.builder().has_edge(e.u, e.v));
      counts[e] += 1;
    }
  }
  REQUIRE(counts.size() == 15);
  std::vector<double> obs;
  for (const auto& [e, c] : counts) obs.push_back(c);
  CHECK(chi_square_p(obs, 3.0 * rounds / 15.0) > 0.001);
}

TEST_CASE("unpresented mode exhausts K4 in six rounds") {
  ProcessState st(4, 1, SamplingMode::Unpresented, 5);
  std::set<Edge> seen;
  for (int i = 0; i < 6; ++i) {
    const PresentedRound r = present_round(st);
    REQUIRE(r.pairs.size() == 1);
    CHECK(seen.insert(r.pairs[0]).second);
  }
  CHECK(seen.size() == 6);
  CHECK(st.eligible_count() == 0);
  CHECK_THROWS_AS(present_round(st), ProcessExhausted);
}

TEST_CASE("unpresented mode never repeats a pair even when skipped") {
  ProcessState st(12, 3, SamplingMode::Unpresented, 9);
  std::set<Edge> seen;
  for (int i = 0; i < 22; ++i) {
    for (Edge e : present_round(st).pairs) CHECK(seen.insert(e).second);
  }
  CHECK(seen.size() == 66);
}

TEST_CASE("skipping leaves the builder unchanged") {
  ProcessState st(8, 2, SamplingMode::Missing, 3);
  const PresentedRound r = present_round(st);
  select(st, r, std::nullopt);
  CHECK(st.builder().num_edges() == 0);
  CHECK(st.selected_log().empty());
}

TEST_CASE("selecting the first pair on an empty builder") {
  ProcessState st(8, 2, SamplingMode::Missing, 3);
  const PresentedRound r = present_round(st);
  select(st, r, r.pairs[0]);
  CHECK(st.builder().num_edges() == 1);
  CHECK(st.selected_log() == std::vector<Selection>{{1, r.pairs[0]}});
}

TEST_CASE("selection contract violations") {
  ProcessState st(8, 2, SamplingMode::Missing, 3);
  const PresentedRound r1 = present_round(st);
  Edge absent{0, 1};
  while (std::find(r1.pairs.begin(), r1.pairs.end(), absent) != r1.pairs.end()) {
    absent.v += 1;
  }
  CHECK_THROWS_AS(select(st, r1, absent), std::invalid_argument);
  select(st, r1, r1.pairs[0]);
  // At most one selection per round.
  CHECK_THROWS_AS(select(st, r1, r1.pairs[1]), std::invalid_argument);
  const PresentedRound r2 = present_round(st);
  present_round(st);
  // r2 is stale once r3 has been presented.
  CHECK_THROWS_AS(select(st, r2, r2.pairs[0]), std::invalid_argument);
}

TEST_CASE("a pair skipped in one round can be selected when presented again") {
  ProcessState st(5, 2, SamplingMode::Missing, 1);
  st.push_scripted_round({{0, 1}, {2, 3}});
  st.push_scripted_round({{0, 1}, {1, 4}});
  st.push_scripted_round({{0, 1}, {1, 4}});
  const PresentedRound r1 = present_round(st);
  select(st, r1, std::nullopt);
  const PresentedRound r2 = present_round(st);
  select(st, r2, Edge{0, 1});
  CHECK(st.builder().has_edge(0, 1));
  // The third script is no longer valid: {0,1} is in the builder.
  CHECK_THROWS_AS(present_round(st), std::invalid_argument);
}

TEST_CASE("selecting a builder edge in unpresented mode is rejected") {
  // Unpresented mode never repeats a pair, so the only way to offer a
  // builder edge again is a script, which is refused.
  ProcessState st(5, 1, SamplingMode::Unpresented, 1);
  st.push_scripted_round({{0, 1}});
  select(st, present_round(st), Edge{0, 1});
  st.push_scripted_round({{0, 1}});
  CHECK_THROWS_AS(present_round(st), std::invalid_argument);
}

TEST_CASE("scripted rounds are validated") {
  ProcessState st(5, 2, SamplingMode::Missing, 1);
  st.push_scripted_round({{0, 1}});
  CHECK_THROWS_AS(present_round(st), std::invalid_argument);
  ProcessState dup(5, 2, SamplingMode::Missing, 1);
  dup.push_scripted_round({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(present_round(dup), std::invalid_argument);
}

TEST_CASE("identical inputs give identical logs") {
  auto run = [](std::uint64_t seed, SamplingMode mode) {
    ProcessState st(50, 3, mode, seed);
    for (int i = 0; i < 300; ++i) {
      const PresentedRound r = present_round(st);
      if (r.pairs[2].u % 2 == 0) select(st, r, r.pairs[2]);
    }
    return st.selected_log();
  };
  for (SamplingMode mode : {SamplingMode::Missing, SamplingMode::Unpresented}) {
    CHECK(run(17, mode) == run(17, mode));
    CHECK_FALSE(run(17, mode) == run(18, mode));
  }
}

TEST_CASE("run_window stops at the end round") {
  ProcessState st(20, 2, SamplingMode::Missing, 4);
  std::size_t seen = 0;
  const std::size_t selected = run_window(
      st, 30,
      [](const PresentedRound& r) -> std::optional<std::size_t> {
        return r.round % 2 == 0 ? std::optional<std::size_t>(0) : std::nullopt;
      },
      [&](Edge) { ++seen; });
  CHECK(st.round() == 30);
  CHECK(selected == 15);
  CHECK(seen == 15);
}

TEST_CASE("mode names") {
  CHECK(parse_sampling_mode("missing") == SamplingMode::Missing);
  CHECK(to_string(SamplingMode::Unpresented) == "unpresented");
  CHECK_THROWS_AS(parse_sampling_mode("other"), std::invalid_argument);
}
