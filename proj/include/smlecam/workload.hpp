#pragma once

// Counter-based workload generation. Every random value is a pure function of
// (seed, stream, index, lane), so sharded and sequential runs see identical
// data.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "smlecam/core.hpp"

namespace smle {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t draw(std::uint64_t stream, std::uint64_t index, std::uint64_t lane) const noexcept;
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform(std::uint64_t stream, std::uint64_t index, std::uint64_t lane) const noexcept;
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound, std::uint64_t stream, std::uint64_t index,
                      std::uint64_t lane) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

enum class WorkloadKind : std::uint8_t { Uniform, Planted, PrefixSkewed };

std::string_view to_string(WorkloadKind kind);
std::optional<WorkloadKind> parse_workload_kind(std::string_view name);

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::Uniform;
  /// Planted: probability that a query copies a stored word.
  double match_rate = 0.0;
  /// PrefixSkewed: probability each prefix bit equals the bit of words[0].
  double bias = 0.5;
  /// PrefixSkewed: number of leading bits that are skewed.
  std::size_t prefix_bits = 3;
  std::size_t num_queries = 1;
  std::uint64_t seed = 1;

  /// Throws Error{InvalidWorkload}.
  void validate() const;
};

/// `count` words of `width` independent uniform bits.
std::vector<BitWord> gen_words(std::size_t count, std::size_t width, std::uint64_t seed);

/// The query at position `index` of the stream described by `spec`.
BitWord gen_query(const WorkloadSpec& spec, std::span<const BitWord> words, std::size_t width,
                  std::size_t index);

/// Throws EmptyStore for Planted/PrefixSkewed with no stored words.
std::vector<BitWord> gen_queries(const WorkloadSpec& spec, std::span<const BitWord> words,
                                 std::size_t width);

}  // namespace smle
