#include "smlecam/array.hpp"

#include <bit>
#include <string>

#include "smlecam/cells.hpp"
#include "smlecam/mle.hpp"

namespace smle {

std::string_view to_string(Variant variant) {
  return variant == Variant::Smle ? "smle" : "baseline";
}

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "smle") return Variant::Smle;
  if (name == "baseline" || name == "nor") return Variant::BaselineNor;
  return std::nullopt;
}

EventTotals& EventTotals::operator+=(const EventTotals& o) noexcept {
  ml_en_transitions += o.ml_en_transitions;
  ml_precharges += o.ml_precharges;
  ml_discharges += o.ml_discharges;
  sl_toggles += o.sl_toggles;
  mle_evaluations += o.mle_evaluations;
  return *this;
}

CamArray::CamArray(const CamConfig& config, Variant variant)
    : config_(config), variant_(variant) {
  config_.validate();
  words_.assign(config_.num_words, BitWord(config_.word_bits));
}

CamArray CamArray::with_mode(DriverMode mode) const {
  CamArray copy = *this;
  copy.mode_ = mode;
  return copy;
}

CamArray CamArray::with_fault(Fault fault) const {
  CamArray copy = *this;
  copy.fault_ = fault;
  return copy;
}

CamArray CamArray::write_word(std::size_t addr, const BitWord& word) const {
  if (addr >= config_.num_words) {
    throw Error(ErrorKind::AddressOutOfRange,
                "address " + std::to_string(addr) + " outside [0, " +
                    std::to_string(config_.num_words) + ")");
  }
  if (word.width() != config_.word_bits) {
    throw Error(ErrorKind::WidthMismatch,
                "word width " + std::to_string(word.width()) + " != array width " +
                    std::to_string(config_.word_bits));
  }
  CamArray next = *this;
  const DriverMode mode = driver_select(NodeLevel::High);
  BitWord& latches = next.words_[addr];
  for (std::size_t i = 0; i < config_.word_bits; ++i) {
    CellKind kind = CellKind::Nor;
    if (variant_ == Variant::Smle && i < config_.mle_bits) {
      kind = i == 0 ? CellKind::Xnor : CellKind::Xor;
    }
    const CellState written = cell_write({latches.bit(i), kind}, word.bit(i), mode);
    latches.set_bit(i, written.stored);
  }
  return next;
}

CamArray CamArray::write_all(std::span<const BitWord> words) const {
  CamArray next = *this;
  for (std::size_t addr = 0; addr < words.size(); ++addr) {
    next = next.write_word(addr, words[addr]);
  }
  return next;
}

WordTrace CamArray::evaluate_word(std::size_t addr, const BitWord& query) const {
  const BitWord& stored = words_[addr];
  WordTrace trace;
  trace.addr = addr;

  // Precharge phase (Pre low).
  std::size_t nor_from = 0;
  if (variant_ == Variant::Smle) {
    const MleTrace mle = mle_eval(stored, query, config_.mle_bits);
    trace.m_nodes = mle.m_nodes;
    trace.ml_en = mle.ml_en;
    if (fault_ == Fault::FlipMleOutput) {
      trace.ml_en = level_of(!is_high(trace.ml_en));
    }
    trace.transitions.ml_en_charges = is_high(trace.ml_en) ? 1 : 0;
    nor_from = config_.mle_bits;
  } else {
    trace.ml_en = NodeLevel::High;
  }
  trace.ml_precharged = is_high(trace.ml_en);

  // Evaluation phase (Pre high).
  if (!trace.ml_precharged) {
    trace.ml_final = NodeLevel::Low;
    return trace;
  }
  trace.transitions.ml_charges = 1;
  // Word-parallel form of nor_cell_pulls_down over bits [nor_from, n): the
  // lowest differing index is the first cell with a pull-down path.
  trace.discharging_bit = stored.first_difference(query, nor_from);
  if (trace.discharging_bit) {
    trace.ml_final = NodeLevel::Low;
    trace.transitions.ml_discharges = 1;
  } else {
    trace.ml_final = NodeLevel::High;
  }
  return trace;
}

SearchReport CamArray::search(const BitWord& query,
                              const std::optional<BitWord>& previous_query) const {
  if (mode_ != DriverMode::Search) {
    throw Error(ErrorKind::SearchInWriteMode, "search issued while Write/SL_EN is high");
  }
  if (query.width() != config_.word_bits) {
    throw Error(ErrorKind::WidthMismatch,
                "query width " + std::to_string(query.width()) + " != array width " +
                    std::to_string(config_.word_bits));
  }
  const auto toggles = static_cast<std::uint32_t>(searchline_toggles(query, previous_query));

  SearchReport report;
  report.variant = variant_;
  report.query = query;
  report.traces.reserve(words_.size());
  report.events.sl_toggles = toggles;
  for (std::size_t addr = 0; addr < words_.size(); ++addr) {
    WordTrace trace = evaluate_word(addr, query);
    trace.transitions.sl_toggles = toggles;
    if (trace.ml_precharged) ++report.energized_count;
    if (is_high(trace.ml_final)) report.matches.push_back(addr);
    report.events.ml_en_transitions += trace.transitions.ml_en_charges;
    report.events.ml_precharges += trace.transitions.ml_charges;
    report.events.ml_discharges += trace.transitions.ml_discharges;
    report.traces.push_back(std::move(trace));
  }
  if (variant_ == Variant::Smle) report.events.mle_evaluations = words_.size();
  return report;
}

std::vector<std::size_t> oracle_search(std::span<const BitWord> words, const BitWord& query) {
  std::vector<std::size_t> out;
  for (std::size_t addr = 0; addr < words.size(); ++addr) {
    if (words[addr].width() != query.width()) {
      throw Error(ErrorKind::WidthMismatch, "oracle_search: widths differ");
    }
    if (words[addr] == query) out.push_back(addr);
  }
  return out;
}

std::size_t searchline_toggles(const BitWord& query, const std::optional<BitWord>& previous) {
  if (!previous) return query.width();
  if (previous->width() != query.width()) {
    throw Error(ErrorKind::WidthMismatch, "previous query width differs");
  }
  std::size_t count = 0;
  auto a = query.blocks();
  auto b = previous->blocks();
  for (std::size_t i = 0; i < a.size(); ++i) count += std::popcount(a[i] ^ b[i]);
  return count;
}

}  // namespace smle
