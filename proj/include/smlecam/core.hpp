#pragma once

// Shared vocabulary for the SMLE-CAM simulator: configuration, bit words,
// node levels, per-word traces and the error type every module throws.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smle {

enum class ErrorKind {
  WidthMismatch,
  BadDigit,
  InvalidConfig,
  PrefixTooShort,
  WriteInSearchMode,
  SearchInWriteMode,
  AddressOutOfRange,
  UnknownEventClass,
  ZeroSearches,
  EmptyStore,
  InvalidWorkload,
  BadModelFile,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline constexpr std::size_t kMinMleBits = 2;
inline constexpr std::size_t kMaxMleBits = 6;
inline constexpr std::size_t kMinWordBits = 3;

/// Array geometry: N words of n bits, the first k of which feed the
/// match-line energizer.
struct CamConfig {
  std::size_t num_words = 256;
  std::size_t word_bits = 144;
  std::size_t mle_bits = 3;
  std::uint64_t seed = 1;

  /// Throws Error{InvalidConfig} naming the violated bound.
  void validate() const;

  std::size_t nor_bits() const noexcept { return word_bits - mle_bits; }
};

enum class NodeLevel : std::uint8_t { Low = 0, High = 1 };

inline constexpr NodeLevel level_of(bool high) noexcept {
  return high ? NodeLevel::High : NodeLevel::Low;
}
inline constexpr bool is_high(NodeLevel l) noexcept { return l == NodeLevel::High; }

std::string_view to_string(NodeLevel level);

/// Write/SL_EN driven high selects Write; low selects Search.
enum class DriverMode : std::uint8_t { Write, Search };

std::string_view to_string(DriverMode mode);

enum class WordFormat { Bin, Hex };

/// Fixed-width bit vector. Bit 0 is the bit that enters the XNOR cell and is
/// rendered leftmost. Bits are packed MSB-first into 64-bit blocks so that the
/// lowest differing index is the leading zero count of a block XOR.
class BitWord {
 public:
  BitWord() = default;
  explicit BitWord(std::size_t width);

  static BitWord from_bits(std::span<const bool> bits);

  std::size_t width() const noexcept { return width_; }
  bool bit(std::size_t index) const;
  void set_bit(std::size_t index, bool value);

  /// Lowest index in [from, width) where the words differ, if any.
  std::optional<std::size_t> first_difference(const BitWord& other,
                                              std::size_t from = 0) const;

  std::span<const std::uint64_t> blocks() const noexcept { return blocks_; }
  std::span<std::uint64_t> blocks() noexcept { return blocks_; }

  friend bool operator==(const BitWord&, const BitWord&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> blocks_;
};

/// Parses a fixed-width word. Binary needs exactly `width` digits. Hex needs
/// exactly ceil(width/4) digits; padding bits of the last digit must be zero.
BitWord parse_word(std::string_view text, std::size_t width, WordFormat format);

/// Canonical text (hex digits are uppercase). parse_word inverts it.
std::string render_word(const BitWord& word, WordFormat format);

std::optional<WordFormat> parse_word_format(std::string_view name);

/// True iff bits 0..k-1 of a and b are pairwise equal.
bool hamming_prefix_match(const BitWord& a, const BitWord& b, std::size_t k);

/// Up to kMaxMleBits node levels held inline.
struct MNodes {
  std::array<NodeLevel, kMaxMleBits> levels{};
  std::size_t count = 0;

  std::span<const NodeLevel> view() const noexcept { return {levels.data(), count}; }
  NodeLevel operator[](std::size_t i) const { return levels.at(i); }
};

// Per-search transition counts attributed to one word. Each search cycle is
// return-to-zero: a node driven High in the cycle counts one charge.
struct WordTransitions {
  std::uint32_t ml_en_charges = 0;
  std::uint32_t ml_charges = 0;
  std::uint32_t ml_discharges = 0;
  std::uint32_t sl_toggles = 0;
};

struct WordTrace {
  std::size_t addr = 0;
  MNodes m_nodes;
  NodeLevel ml_en = NodeLevel::Low;
  bool ml_precharged = false;
  NodeLevel ml_final = NodeLevel::Low;
  std::optional<std::size_t> discharging_bit;
  WordTransitions transitions;

  /// Checks the precharge/discharge consistency rules between fields.
  bool consistent() const noexcept;
};

}  // namespace smle
