#include <doctest.h>

#include <cmath>
#include <vector>

#include "smlecam/mle.hpp"

using namespace smle;

namespace {

std::vector<bool> bits_of(unsigned value, std::size_t k) {
  std::vector<bool> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = (value >> (k - 1 - i)) & 1;
  return out;
}

MleTrace eval_str(std::string_view stored, std::string_view search) {
  return mle_eval(parse_word(stored, stored.size(), WordFormat::Bin),
                  parse_word(search, search.size(), WordFormat::Bin), stored.size());
}

}  // namespace

TEST_CASE("energizer cases") {
  // Prefixes match: M0 High, gate nodes Low, ML_EN pulled up.
  auto t = eval_str("110", "110");
  CHECK(t.m_nodes[0] == NodeLevel::High);
  CHECK(t.m_nodes[1] == NodeLevel::Low);
  CHECK(t.m_nodes[2] == NodeLevel::Low);
  CHECK(t.ml_en == NodeLevel::High);

  // First bit mismatch removes the source.
  t = eval_str("110", "010");
  CHECK(t.m_nodes[0] == NodeLevel::Low);
  CHECK(t.ml_en == NodeLevel::Low);

  // Second bit mismatch.
  t = eval_str("110", "100");
  CHECK(t.m_nodes[0] == NodeLevel::High);
  CHECK(t.m_nodes[1] == NodeLevel::High);
  CHECK(t.m_nodes[2] == NodeLevel::Low);
  CHECK(t.ml_en == NodeLevel::Low);

  // Third bit mismatch.
  t = eval_str("110", "111");
  CHECK(t.m_nodes[2] == NodeLevel::High);
  CHECK(t.ml_en == NodeLevel::Low);
}

TEST_CASE("k=3: exactly 8 of 64 prefix pairs energize") {
  int high = 0;
  for (unsigned s = 0; s < 8; ++s) {
    for (unsigned q = 0; q < 8; ++q) {
      const auto stored = bits_of(s, 3);
      const auto search = bits_of(q, 3);
      bool sb[3], qb[3];
      for (int i = 0; i < 3; ++i) sb[i] = stored[i], qb[i] = search[i];
      if (is_high(mle_eval(std::span<const bool>(sb, 3), std::span<const bool>(qb, 3)).ml_en)) ++high;
    }
  }
  CHECK(high == 8);
}

TEST_CASE("energizer output equals prefix match, exhaustive for k = 2..6") {
  for (std::size_t k = 2; k <= 6; ++k) {
    for (unsigned s = 0; s < (1u << k); ++s) {
      for (unsigned q = 0; q < (1u << k); ++q) {
        BitWord stored(k), query(k);
        for (std::size_t i = 0; i < k; ++i) {
          stored.set_bit(i, (s >> i) & 1);
          query.set_bit(i, (q >> i) & 1);
        }
        const MleTrace t = mle_eval(stored, query, k);
        REQUIRE(is_high(t.ml_en) == hamming_prefix_match(stored, query, k));
        REQUIRE(t.m_nodes.count == k);
        // Node invariant: ML_EN High iff M0 High and all gate nodes Low.
        bool expect = is_high(t.m_nodes[0]);
        for (std::size_t i = 1; i < k; ++i) expect = expect && !is_high(t.m_nodes[i]);
        REQUIRE(is_high(t.ml_en) == expect);
      }
    }
  }
}

TEST_CASE("mismatched source with matching gates resolves Low") {
  const auto t = eval_str("0000", "1000");
  CHECK(t.m_nodes[0] == NodeLevel::Low);
  for (std::size_t i = 1; i < 4; ++i) CHECK(t.m_nodes[i] == NodeLevel::Low);
  CHECK(t.ml_en == NodeLevel::Low);
}

TEST_CASE("prefix width bounds") {
  bool one[1] = {true};
  try {
    (void)mle_eval(std::span<const bool>(one, 1), std::span<const bool>(one, 1));
    FAIL("expected PrefixTooShort");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrefixTooShort);
  }
  CHECK_THROWS_AS(expected_energized_fraction(1), Error);
  CHECK_THROWS_AS(expected_energized_fraction(7), Error);
}

TEST_CASE("expected energized fraction") {
  CHECK(expected_energized_fraction(3) == 0.125);
  CHECK(1.0 - expected_energized_fraction(3) == 0.875);
  CHECK(expected_energized_fraction(2) == 0.25);
  CHECK(1.0 - expected_energized_fraction(2) == 0.75);

  // Enumeration oracle for k = 2..6: matching pairs / all pairs.
  for (std::size_t k = 2; k <= 6; ++k) {
    const unsigned space = 1u << k;
    unsigned matching = 0;
    for (unsigned s = 0; s < space; ++s)
      for (unsigned q = 0; q < space; ++q) matching += (s == q);
    CHECK(expected_energized_fraction(k) == doctest::Approx(double(matching) / (space * space)));
  }
  CHECK(expected_energized_fraction(4) == 16.0 / 256.0);
}
