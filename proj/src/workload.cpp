#include "smlecam/workload.hpp"

#include <algorithm>
#include <string>

namespace smle {

namespace {

constexpr std::uint64_t kStreamWords = 0x5744'5354'4f52'4501ULL;
constexpr std::uint64_t kStreamQueries = 0x5155'4552'5953'0002ULL;

constexpr std::uint64_t kLaneCoin = 0;
constexpr std::uint64_t kLanePick = 1;
constexpr std::uint64_t kLaneBits = 2;
constexpr std::uint64_t kLaneSkew = 1024;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

BitWord random_word(const CounterRng& rng, std::uint64_t stream, std::uint64_t index,
                    std::size_t width) {
  BitWord word(width);
  auto blocks = word.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b] = rng.draw(stream, index, kLaneBits + b);
  }
  // Bits beyond the width must stay zero so equality is value equality.
  if (const std::size_t tail = width % 64; tail != 0) {
    blocks.back() &= ~std::uint64_t{0} << (64 - tail);
  }
  return word;
}

}  // namespace

std::uint64_t CounterRng::draw(std::uint64_t stream, std::uint64_t index,
                               std::uint64_t lane) const noexcept {
  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t h = mix64(seed_ + kGolden);
  h = mix64(h ^ (stream + kGolden));
  h = mix64(h ^ (index + 2 * kGolden));
  return mix64(h ^ (lane + 3 * kGolden));
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t index,
                           std::uint64_t lane) const noexcept {
  return static_cast<double>(draw(stream, index, lane) >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t bound, std::uint64_t stream, std::uint64_t index,
                                std::uint64_t lane) const noexcept {
  __extension__ using Wide = unsigned __int128;
  const Wide wide = static_cast<Wide>(draw(stream, index, lane)) * bound;
  return static_cast<std::uint64_t>(wide >> 64);
}

std::string_view to_string(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::Uniform: return "uniform";
    case WorkloadKind::Planted: return "planted";
    case WorkloadKind::PrefixSkewed: return "skewed";
  }
  return "unknown";
}

std::optional<WorkloadKind> parse_workload_kind(std::string_view name) {
  if (name == "uniform") return WorkloadKind::Uniform;
  if (name == "planted") return WorkloadKind::Planted;
  if (name == "skewed" || name == "prefix-skewed") return WorkloadKind::PrefixSkewed;
  return std::nullopt;
}

void WorkloadSpec::validate() const {
  if (num_queries < 1) {
    throw Error(ErrorKind::InvalidWorkload, "num_queries must be at least 1");
  }
  if (kind == WorkloadKind::Planted && !(match_rate >= 0.0 && match_rate <= 1.0)) {
    throw Error(ErrorKind::InvalidWorkload, "match_rate must lie in [0, 1]");
  }
  if (kind == WorkloadKind::PrefixSkewed) {
    if (!(bias > 0.0 && bias < 1.0)) {
      throw Error(ErrorKind::InvalidWorkload, "bias must lie in (0, 1)");
    }
    if (prefix_bits < 1) {
      throw Error(ErrorKind::InvalidWorkload, "prefix_bits must be at least 1");
    }
  }
}

std::vector<BitWord> gen_words(std::size_t count, std::size_t width, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<BitWord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_word(rng, kStreamWords, i, width));
  return out;
}

BitWord gen_query(const WorkloadSpec& spec, std::span<const BitWord> words, std::size_t width,
                  std::size_t index) {
  const CounterRng rng(spec.seed);
  switch (spec.kind) {
    case WorkloadKind::Uniform:
      return random_word(rng, kStreamQueries, index, width);
    case WorkloadKind::Planted: {
      if (words.empty()) throw Error(ErrorKind::EmptyStore, "planted workload needs stored words");
      if (rng.uniform(kStreamQueries, index, kLaneCoin) < spec.match_rate) {
        return words[rng.below(words.size(), kStreamQueries, index, kLanePick)];
      }
      return random_word(rng, kStreamQueries, index, width);
    }
    case WorkloadKind::PrefixSkewed: {
      if (words.empty()) throw Error(ErrorKind::EmptyStore, "skewed workload needs stored words");
      BitWord query = random_word(rng, kStreamQueries, index, width);
      const BitWord& anchor = words.front();
      const std::size_t skewed = std::min(spec.prefix_bits, width);
      for (std::size_t i = 0; i < skewed; ++i) {
        const bool agree = rng.uniform(kStreamQueries, index, kLaneSkew + i) < spec.bias;
        query.set_bit(i, agree ? anchor.bit(i) : !anchor.bit(i));
      }
      return query;
    }
  }
  throw Error(ErrorKind::InvalidWorkload, "unknown workload kind");
}

std::vector<BitWord> gen_queries(const WorkloadSpec& spec, std::span<const BitWord> words,
                                 std::size_t width) {
  spec.validate();
  if (spec.kind != WorkloadKind::Uniform && words.empty()) {
    throw Error(ErrorKind::EmptyStore,
                std::string(to_string(spec.kind)) + " workload needs stored words");
  }
  std::vector<BitWord> out;
  out.reserve(spec.num_queries);
  for (std::size_t q = 0; q < spec.num_queries; ++q) out.push_back(gen_query(spec, words, width, q));
  return out;
}

}  // namespace smle
