#pragma once

// Oracle-equivalence harness: exhaustive small arrays plus randomized trials
// at full geometry, each compared against the linear-scan oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smlecam/array.hpp"

namespace smle {

struct VerifyOptions {
  bool exhaustive = true;
  std::size_t min_width = 4;
  std::size_t max_width = 6;
  std::vector<std::size_t> exhaustive_k{2, 3};
  std::size_t max_words = 32;
  /// Extra duplicate-heavy random stores per (width, k).
  std::size_t duplicate_stores = 16;

  std::size_t random_trials = 100000;
  std::size_t random_words = 256;
  std::size_t random_width = 144;
  std::size_t random_k = 3;
  /// Trials sharing one stored data set before it is regenerated.
  std::size_t trials_per_store = 1000;

  std::uint64_t seed = 1;
  Fault fault = Fault::None;
  unsigned workers = 1;
};

struct Counterexample {
  std::string phase;
  CamConfig config;
  Variant variant = Variant::Smle;
  std::vector<BitWord> stored;
  BitWord query;
  std::vector<std::size_t> expected;
  std::vector<std::size_t> got;
  std::string detail;
};

struct VerifyResult {
  std::uint64_t exhaustive_searches = 0;
  /// (stored word, query) comparisons covered by the exhaustive phase.
  std::uint64_t exhaustive_cases = 0;
  std::uint64_t random_trials = 0;
  std::optional<Counterexample> failure;

  bool passed() const noexcept { return !failure.has_value(); }
};

VerifyResult run_verification(const VerifyOptions& options);

/// Checks one search against the oracle and the per-trace invariants.
/// Returns a description of the first violation.
std::optional<std::string> check_search(const CamArray& array, const BitWord& query,
                                        const SearchReport& report);

}  // namespace smle
