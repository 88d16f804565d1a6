#include <doctest.h>

#include <cmath>

#include "smlecam/array.hpp"
#include "smlecam/workload.hpp"

using namespace smle;

TEST_CASE("gen_words is deterministic and seed-sensitive") {
  const auto a = gen_words(256, 144, 42);
  const auto b = gen_words(256, 144, 42);
  const auto c = gen_words(256, 144, 43);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.size() == 256);
  for (const auto& w : a) CHECK(w.width() == 144);
  // Prefix of a longer run is the shorter run.
  const auto shorter = gen_words(10, 144, 42);
  CHECK(std::equal(shorter.begin(), shorter.end(), a.begin()));
}

TEST_CASE("gen_words per-bit mean") {
  const auto words = gen_words(1000, 100, 7);
  std::size_t ones = 0;
  for (const auto& w : words)
    for (std::size_t i = 0; i < 100; ++i) ones += w.bit(i);
  const double mean = double(ones) / 1e5;
  CHECK(mean >= 0.49);
  CHECK(mean <= 0.51);
  // Padding bits past the width stay clear so equality is exact.
  const auto odd = gen_words(50, 70, 7);
  for (const auto& w : odd) CHECK((w.blocks()[1] & ((std::uint64_t{1} << 58) - 1)) == 0);
}

TEST_CASE("gen_query is a pure function of its index") {
  const auto words = gen_words(16, 64, 1);
  for (auto kind : {WorkloadKind::Uniform, WorkloadKind::Planted, WorkloadKind::PrefixSkewed}) {
    WorkloadSpec spec;
    spec.kind = kind;
    spec.match_rate = 0.5;
    spec.bias = 0.8;
    spec.num_queries = 50;
    spec.seed = 9;
    const auto all = gen_queries(spec, words, 64);
    for (std::size_t i = 50; i-- > 0;) CHECK(gen_query(spec, words, 64, i) == all[i]);
  }
}

TEST_CASE("planted workloads") {
  const auto words = gen_words(64, 144, 3);
  const CamArray array = CamArray(CamConfig{64, 144, 3, 3}, Variant::Smle).write_all(words);
  WorkloadSpec spec;
  spec.kind = WorkloadKind::Planted;
  spec.num_queries = 500;
  spec.seed = 3;

  spec.match_rate = 1.0;
  for (const auto& q : gen_queries(spec, words, 144)) CHECK_FALSE(array.search(q).matches.empty());

  spec.match_rate = 0.0;
  for (const auto& q : gen_queries(spec, words, 144)) CHECK(array.search(q).matches.empty());

  spec.match_rate = 0.3;
  spec.num_queries = 20000;
  const auto small_words = gen_words(64, 32, 4);
  const CamArray small = CamArray(CamConfig{64, 32, 3, 4}, Variant::Smle).write_all(small_words);
  std::size_t hits = 0;
  for (const auto& q : gen_queries(spec, small_words, 32)) hits += !small.search(q).matches.empty();
  const double sd = std::sqrt(0.3 * 0.7 / 20000.0);
  CHECK(std::abs(double(hits) / 20000.0 - 0.3) <= 3 * sd);
}

TEST_CASE("prefix-skewed workload raises energization to the analytic mixture") {
  const std::size_t k = 3;
  const double bias = 0.99;
  WorkloadSpec spec;
  spec.kind = WorkloadKind::PrefixSkewed;
  spec.bias = bias;
  spec.prefix_bits = k;
  spec.num_queries = 4000;
  spec.seed = 8;

  // Store whose words all share words[0]'s prefix.
  auto words = gen_words(32, 48, 8);
  for (auto& w : words)
    for (std::size_t i = 0; i < k; ++i) w.set_bit(i, words[0].bit(i));
  CamArray array = CamArray(CamConfig{32, 48, k, 8}, Variant::Smle).write_all(words);
  std::size_t energized = 0;
  for (const auto& q : gen_queries(spec, words, 48)) energized += array.search(q).energized_count;
  const double measured = double(energized) / (4000.0 * 32);
  CHECK(measured > std::ldexp(1.0, -int(k)));
  // All 32 words move together, so the variance is that of 4000 queries.
  const double p = std::pow(bias, k);
  CHECK(std::abs(measured - p) <= 5 * std::sqrt(p * (1 - p) / 4000.0));

  // Uniform store: expected fraction is the per-word product mixture.
  words = gen_words(32, 48, 9);
  array = CamArray(CamConfig{32, 48, k, 9}, Variant::Smle).write_all(words);
  double expected = 0.0;
  for (const auto& w : words) {
    double pw = 1.0;
    for (std::size_t i = 0; i < k; ++i) pw *= (w.bit(i) == words[0].bit(i)) ? bias : 1 - bias;
    expected += pw / 32.0;
  }
  energized = 0;
  for (const auto& q : gen_queries(spec, words, 48)) energized += array.search(q).energized_count;
  CHECK(double(energized) / (4000.0 * 32) == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("workload validation") {
  WorkloadSpec spec;
  spec.kind = WorkloadKind::Planted;
  spec.match_rate = 1.5;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.match_rate = 0.5;
  try {
    (void)gen_queries(spec, {}, 16);
    FAIL("expected EmptyStore");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyStore);
  }
  spec.kind = WorkloadKind::PrefixSkewed;
  spec.bias = 1.0;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = WorkloadSpec{};
  spec.num_queries = 0;
  CHECK_THROWS_AS(spec.validate(), Error);
  CHECK(gen_queries(WorkloadSpec{}, {}, 16).size() == 1);
}

TEST_CASE("counter rng helpers") {
  const CounterRng rng(5);
  CHECK(rng.draw(1, 2, 3) == CounterRng(5).draw(1, 2, 3));
  CHECK(rng.draw(1, 2, 3) != rng.draw(1, 2, 4));
  CHECK(rng.draw(1, 2, 3) != rng.draw(1, 3, 3));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = rng.uniform(0, i, 0);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.below(7, 0, i, 1) < 7);
  }
}
