#include "smlecam/core.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace smle {

namespace {

constexpr std::size_t kBlockBits = 64;

constexpr std::uint64_t bit_mask(std::size_t index) {
  return std::uint64_t{1} << (kBlockBits - 1 - index % kBlockBits);
}

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::BadDigit: return "BadDigit";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::PrefixTooShort: return "PrefixTooShort";
    case ErrorKind::WriteInSearchMode: return "WriteInSearchMode";
    case ErrorKind::SearchInWriteMode: return "SearchInWriteMode";
    case ErrorKind::AddressOutOfRange: return "AddressOutOfRange";
    case ErrorKind::UnknownEventClass: return "UnknownEventClass";
    case ErrorKind::ZeroSearches: return "ZeroSearches";
    case ErrorKind::EmptyStore: return "EmptyStore";
    case ErrorKind::InvalidWorkload: return "InvalidWorkload";
    case ErrorKind::BadModelFile: return "BadModelFile";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(NodeLevel level) {
  return level == NodeLevel::High ? "High" : "Low";
}

std::string_view to_string(DriverMode mode) {
  return mode == DriverMode::Write ? "Write" : "Search";
}

void CamConfig::validate() const {
  if (num_words < 1) {
    throw Error(ErrorKind::InvalidConfig, "num_words must be at least 1");
  }
  if (word_bits < kMinWordBits) {
    throw Error(ErrorKind::InvalidConfig, "word_bits must be at least 3");
  }
  if (mle_bits < kMinMleBits) {
    throw Error(ErrorKind::InvalidConfig,
                "mle_bits must be at least 2 (one bit sources the energizer, "
                "at least one more gates it); got " + std::to_string(mle_bits));
  }
  if (mle_bits > kMaxMleBits) {
    throw Error(ErrorKind::InvalidConfig,
                "mle_bits must be at most 6; got " + std::to_string(mle_bits));
  }
  if (mle_bits >= word_bits) {
    throw Error(ErrorKind::InvalidConfig,
                "mle_bits (" + std::to_string(mle_bits) +
                    ") must be smaller than word_bits (" + std::to_string(word_bits) + ")");
  }
}

BitWord::BitWord(std::size_t width)
    : width_(width), blocks_((width + kBlockBits - 1) / kBlockBits, 0) {}

BitWord BitWord::from_bits(std::span<const bool> bits) {
  BitWord w(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) w.set_bit(i, bits[i]);
  return w;
}

bool BitWord::bit(std::size_t index) const {
  if (index >= width_) throw std::out_of_range("BitWord::bit index");
  return (blocks_[index / kBlockBits] & bit_mask(index)) != 0;
}

void BitWord::set_bit(std::size_t index, bool value) {
  if (index >= width_) throw std::out_of_range("BitWord::set_bit index");
  auto& block = blocks_[index / kBlockBits];
  if (value) {
    block |= bit_mask(index);
  } else {
    block &= ~bit_mask(index);
  }
}

std::optional<std::size_t> BitWord::first_difference(const BitWord& other,
                                                     std::size_t from) const {
  if (other.width_ != width_) {
    throw Error(ErrorKind::WidthMismatch, "first_difference: widths differ");
  }
  if (from >= width_) return std::nullopt;
  std::size_t block = from / kBlockBits;
  // Clear bits below `from` in the first block.
  std::uint64_t diff = (blocks_[block] ^ other.blocks_[block]) &
                       (~std::uint64_t{0} >> (from % kBlockBits));
  while (true) {
    if (diff != 0) {
      std::size_t index = block * kBlockBits + std::countl_zero(diff);
      return index < width_ ? std::optional<std::size_t>(index) : std::nullopt;
    }
    if (++block == blocks_.size()) return std::nullopt;
    diff = blocks_[block] ^ other.blocks_[block];
  }
}

BitWord parse_word(std::string_view text, std::size_t width, WordFormat format) {
  text = trim(text);
  if (text.empty()) {
    throw Error(ErrorKind::WidthMismatch, "empty word text");
  }
  BitWord word(width);
  if (format == WordFormat::Bin) {
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw Error(ErrorKind::BadDigit,
                    std::string("invalid binary digit '") + c + "'");
      }
    }
    if (text.size() != width) {
      throw Error(ErrorKind::WidthMismatch,
                  "expected " + std::to_string(width) + " binary digits, got " +
                      std::to_string(text.size()));
    }
    for (std::size_t i = 0; i < width; ++i) word.set_bit(i, text[i] == '1');
    return word;
  }

  for (char c : text) {
    if (hex_value(c) < 0) {
      throw Error(ErrorKind::BadDigit, std::string("invalid hex digit '") + c + "'");
    }
  }
  const std::size_t digits = (width + 3) / 4;
  if (text.size() != digits) {
    throw Error(ErrorKind::WidthMismatch,
                "expected " + std::to_string(digits) + " hex digits for width " +
                    std::to_string(width) + ", got " + std::to_string(text.size()));
  }
  for (std::size_t d = 0; d < digits; ++d) {
    const int v = hex_value(text[d]);
    for (std::size_t b = 0; b < 4; ++b) {
      const bool set = (v >> (3 - b)) & 1;
      const std::size_t index = d * 4 + b;
      if (index < width) {
        word.set_bit(index, set);
      } else if (set) {
        throw Error(ErrorKind::WidthMismatch,
                    "hex text encodes more than " + std::to_string(width) + " bits");
      }
    }
  }
  return word;
}

std::string render_word(const BitWord& word, WordFormat format) {
  std::string out;
  if (format == WordFormat::Bin) {
    out.reserve(word.width());
    for (std::size_t i = 0; i < word.width(); ++i) out.push_back(word.bit(i) ? '1' : '0');
    return out;
  }
  static constexpr char kDigits[] = "0123456789ABCDEF";
  const std::size_t digits = (word.width() + 3) / 4;
  out.reserve(digits);
  for (std::size_t d = 0; d < digits; ++d) {
    int v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t index = d * 4 + b;
      if (index < word.width() && word.bit(index)) v |= 1 << (3 - b);
    }
    out.push_back(kDigits[v]);
  }
  return out;
}

std::optional<WordFormat> parse_word_format(std::string_view name) {
  if (name == "bin") return WordFormat::Bin;
  if (name == "hex") return WordFormat::Hex;
  return std::nullopt;
}

bool hamming_prefix_match(const BitWord& a, const BitWord& b, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    if (a.bit(i) != b.bit(i)) return false;
  }
  return true;
}

bool WordTrace::consistent() const noexcept {
  if (ml_precharged != is_high(ml_en)) return false;
  if (is_high(ml_final) && (!ml_precharged || discharging_bit.has_value())) return false;
  if (discharging_bit && (!ml_precharged || is_high(ml_final))) return false;
  return true;
}

}  // namespace smle
