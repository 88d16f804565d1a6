#pragma once

// The N x n SMLE-CAM array and an all-NOR baseline, with the two-phase
// (precharge, evaluate) search protocol.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "smlecam/core.hpp"

namespace smle {

enum class Variant : std::uint8_t { Smle, BaselineNor };

std::string_view to_string(Variant variant);
std::optional<Variant> parse_variant(std::string_view name);

/// Test hook used to prove the verification harness can fail.
enum class Fault : std::uint8_t { None, FlipMleOutput };

struct EventTotals {
  std::uint64_t ml_en_transitions = 0;
  std::uint64_t ml_precharges = 0;
  std::uint64_t ml_discharges = 0;
  /// Searchline columns toggled; each column drives one cell in every word.
  std::uint64_t sl_toggles = 0;
  std::uint64_t mle_evaluations = 0;

  EventTotals& operator+=(const EventTotals& o) noexcept;
  friend bool operator==(const EventTotals&, const EventTotals&) = default;
};

struct SearchReport {
  Variant variant = Variant::Smle;
  BitWord query;
  std::vector<std::size_t> matches;
  std::vector<WordTrace> traces;
  std::size_t energized_count = 0;
  EventTotals events;
  // Filled by aggregate().
  double energy_total = 0.0;
  double delay = 0.0;
};

class CamArray {
 public:
  /// All words zero, mode Search. Throws InvalidConfig.
  CamArray(const CamConfig& config, Variant variant);

  const CamConfig& config() const noexcept { return config_; }
  Variant variant() const noexcept { return variant_; }
  DriverMode mode() const noexcept { return mode_; }
  Fault fault() const noexcept { return fault_; }
  std::span<const BitWord> words() const noexcept { return words_; }

  CamArray with_mode(DriverMode mode) const;
  CamArray with_fault(Fault fault) const;

  /// One write cycle: Write/SL_EN is raised for the cycle, the word's latches
  /// are written and the array returns in its previous mode. No search events
  /// are produced. Throws AddressOutOfRange, WidthMismatch.
  CamArray write_word(std::size_t addr, const BitWord& word) const;

  /// Writes words[0..size) starting at address 0.
  CamArray write_all(std::span<const BitWord> words) const;

  /// Runs precharge then evaluation for every word. `previous_query` is the
  /// value left on the searchlines by the prior search; when absent every
  /// column counts as toggled. Throws WidthMismatch, SearchInWriteMode.
  SearchReport search(const BitWord& query,
                      const std::optional<BitWord>& previous_query = std::nullopt) const;

 private:
  WordTrace evaluate_word(std::size_t addr, const BitWord& query) const;

  CamConfig config_;
  Variant variant_;
  DriverMode mode_ = DriverMode::Search;
  Fault fault_ = Fault::None;
  std::vector<BitWord> words_;
};

/// Reference linear scan: every address whose word equals the query.
std::vector<std::size_t> oracle_search(std::span<const BitWord> words, const BitWord& query);

/// Number of searchline columns whose driven value differs between queries.
std::size_t searchline_toggles(const BitWord& query, const std::optional<BitWord>& previous);

}  // namespace smle
