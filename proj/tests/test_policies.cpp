#include <doctest.h>

#include <cmath>
#include <set>

#include "errors.hpp"
#include "policies.hpp"

using namespace hexb;

TEST_CASE("new_state zeroes everything and rejects zero children") {
  const PolicyState state = new_state(5);
  CHECK(state.num_children() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(state.counts[i] == 0);
    CHECK(state.sums[i] == 0.0);
  }
  CHECK(state.invocations == 0);
  CHECK_THROWS_AS(new_state(0), ConfigError);
}

TEST_CASE("ucb serves unplayed children in index order") {
  const PolicySpec ucb{PolicyKind::AlphaUCB, 3.0};
  PolicyState state = new_state(3);
  Rng rng(1);
  for (int t = 1; t <= 3; ++t) {
    const int child = select(ucb, state, t, rng);
    CHECK(child == t - 1);
    update(state, child, 0.5);
  }
}

TEST_CASE("single child shortcut") {
  const PolicySpec ucb{PolicyKind::AlphaUCB, 3.0};
  PolicyState state = new_state(1);
  Rng rng(2);
  for (int t = 1; t <= 10; ++t) {
    CHECK(select(ucb, state, t, rng) == 0);
    update(state, 0, 0.3);
  }
}

TEST_CASE("ucb index formula") {
  // alpha = 3, ln t = 2: 0.5 + sqrt(6/8) vs 0.9 + sqrt(6/2)
  CHECK(alpha_ucb_index(0.5, 3.0, 2.0, 4) == doctest::Approx(1.3660254038));
  CHECK(alpha_ucb_index(0.9, 3.0, 2.0, 1) == doctest::Approx(2.6320508076));

  PolicyState state = new_state(2);
  state.counts = {4, 1};
  state.sums = {2.0, 0.9};
  state.invocations = 5;
  const PolicySpec ucb{PolicyKind::AlphaUCB, 3.0};
  Rng rng(3);
  // at t = 8 the indices are 1.383 vs 2.666: the undersampled child wins
  CHECK(select(ucb, state, 8, rng) == 1);
}

TEST_CASE("ucb selection is deterministic with total tie-breaking") {
  PolicyState state = new_state(3);
  state.counts = {5, 5, 5};
  state.sums = {2.5, 2.5, 2.5};  // exact ties -> lowest index
  const PolicySpec ucb{PolicyKind::AlphaUCB, 2.5};
  Rng rng(4);
  CHECK(select(ucb, state, 100, rng) == 0);
  CHECK(select(ucb, state, 100, rng) == 0);
}

TEST_CASE("local clock option evaluates the bonus at the invocation count") {
  PolicyState state = new_state(2);
  state.counts = {10, 2};
  state.sums = {9.0, 0.2};
  state.invocations = 12;
  PolicySpec global{PolicyKind::AlphaUCB, 3.0};
  PolicySpec local = global;
  local.local_clock = true;
  Rng rng(5);
  // a huge global round inflates the bonus enough for the undersampled child
  // to overtake; the local clock stays at ln(13) where it does not
  CHECK(select(global, state, 4000000, rng) == 1);
  CHECK(select(local, state, 4000000, rng) == 0);
}

TEST_CASE("bad expert ignores statistics") {
  PolicySpec bad{PolicyKind::BadFixed};
  bad.target = 4;
  PolicyState state = new_state(5);
  state.counts = {100, 0, 0, 0, 3};
  state.sums = {90.0, 0.0, 0.0, 0.0, 0.1};
  Rng rng(6);
  for (int t = 1; t < 20; ++t) CHECK(select(bad, state, t, rng) == 4);
}

TEST_CASE("least pulls takes the lowest-indexed minimum") {
  PolicyState state = new_state(4);
  state.counts = {2, 1, 1, 3};
  const PolicySpec lp{PolicyKind::LeastPulls};
  Rng rng(7);
  CHECK(select(lp, state, 9, rng) == 1);
}

TEST_CASE("epsilon greedy explores and exploits") {
  PolicyState state = new_state(3);
  state.counts = {4, 4, 0};
  state.sums = {1.0, 3.0, 0.0};

  PolicySpec greedy{PolicyKind::EpsilonGreedy};
  greedy.epsilon = 0.0;
  Rng rng(8);
  // pure exploitation: child 2 has the best sample mean, unvisited counts as 0
  for (int i = 0; i < 10; ++i) CHECK(select(greedy, state, 50, rng) == 1);

  PolicySpec uniform{PolicyKind::EpsilonGreedy};
  uniform.epsilon = 1.0;
  std::set<int> seen;
  for (int i = 0; i < 200; ++i) seen.insert(select(uniform, state, 50, rng));
  CHECK(seen == std::set<int>{0, 1, 2});
}

TEST_CASE("epsilon greedy treats unvisited children as mean zero") {
  PolicyState state = new_state(2);
  state.counts = {3, 0};
  state.sums = {0.3, 0.0};  // sample mean 0.1 beats the pessimistic 0
  PolicySpec greedy{PolicyKind::EpsilonGreedy};
  greedy.epsilon = 0.0;
  Rng rng(9);
  CHECK(select(greedy, state, 10, rng) == 0);
}

TEST_CASE("update accumulates and validates") {
  PolicyState state = new_state(3);
  update(state, 1, 0.5);
  CHECK(state.counts == std::vector<std::int64_t>{0, 1, 0});
  CHECK(state.sums[1] == 0.5);
  CHECK(state.invocations == 1);
  CHECK_THROWS_AS(update(state, 0, 1.5), ConfigError);
  CHECK_THROWS_AS(update(state, 0, -0.1), ConfigError);
  CHECK_THROWS_AS(update(state, 3, 0.5), ConfigError);
}

TEST_CASE("boundary rewards keep sums equal to counts") {
  PolicyState state = new_state(2);
  const int n = 25;
  for (int i = 0; i < n; ++i) update(state, 0, 1.0);
  CHECK(state.counts[0] == n);
  CHECK(state.sums[0] == static_cast<double>(n));
}

TEST_CASE("selection never leaves the child range") {
  Rng rng(10);
  const PolicySpec specs[] = {
      {PolicyKind::AlphaUCB, 2.5},
      {PolicyKind::EpsilonGreedy, 0.0, 0.3},
      {PolicyKind::LeastPulls},
  };
  for (int it = 0; it < 2000; ++it) {
    const int n = static_cast<int>(rng.uniform_int(1, 12));
    PolicyState state = new_state(n);
    const std::int64_t rounds = rng.uniform_int(0, 40);
    for (std::int64_t r = 0; r < rounds; ++r) {
      update(state, static_cast<int>(rng.uniform_int(0, n - 1)), rng.uniform01());
    }
    for (const PolicySpec& spec : specs) {
      const int child = select(spec, state, rounds + 1, rng);
      REQUIRE(child >= 0);
      REQUIRE(child < n);
    }
  }
}

TEST_CASE("invocations always equal the total child count") {
  Rng rng(11);
  PolicyState state = new_state(6);
  for (int i = 0; i < 500; ++i) {
    update(state, static_cast<int>(rng.uniform_int(0, 5)), rng.uniform01());
  }
  std::int64_t total = 0;
  for (std::int64_t c : state.counts) total += c;
  CHECK(total == state.invocations);
}
