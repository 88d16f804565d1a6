#include "smlecam/mle.hpp"

#include <cmath>
#include <string>

#include "smlecam/cells.hpp"

namespace smle {

namespace {

void check_prefix_width(std::size_t k) {
  if (k < kMinMleBits) {
    throw Error(ErrorKind::PrefixTooShort,
                "energizer needs at least 2 prefix bits; got " + std::to_string(k));
  }
  if (k > kMaxMleBits) {
    throw Error(ErrorKind::InvalidConfig,
                "energizer supports at most 6 prefix bits; got " + std::to_string(k));
  }
}

template <typename StoredBit, typename SearchBit>
MleTrace evaluate(std::size_t k, StoredBit stored, SearchBit search) {
  MleTrace trace;
  trace.m_nodes.count = k;
  trace.m_nodes.levels[0] = xnor_cell_eval({stored(0), CellKind::Xnor}, search(0));
  bool gates_open = true;
  for (std::size_t i = 1; i < k; ++i) {
    trace.m_nodes.levels[i] = xor_cell_eval({stored(i), CellKind::Xor}, search(i));
    // A High gate node turns its series PMOS off and its NMOS pulls ML_EN low.
    gates_open = gates_open && !is_high(trace.m_nodes.levels[i]);
  }
  trace.ml_en = level_of(is_high(trace.m_nodes.levels[0]) && gates_open);
  return trace;
}

}  // namespace

MleTrace mle_eval(std::span<const bool> stored_prefix, std::span<const bool> search_prefix) {
  if (stored_prefix.size() != search_prefix.size()) {
    throw Error(ErrorKind::InvalidConfig, "stored and search prefixes differ in length");
  }
  check_prefix_width(stored_prefix.size());
  return evaluate(
      stored_prefix.size(), [&](std::size_t i) { return stored_prefix[i]; },
      [&](std::size_t i) { return search_prefix[i]; });
}

MleTrace mle_eval(const BitWord& stored, const BitWord& query, std::size_t k) {
  check_prefix_width(k);
  if (k > stored.width() || k > query.width()) {
    throw Error(ErrorKind::WidthMismatch, "prefix wider than word");
  }
  return evaluate(
      k, [&](std::size_t i) { return stored.bit(i); },
      [&](std::size_t i) { return query.bit(i); });
}

double expected_energized_fraction(std::size_t k) {
  check_prefix_width(k);
  return std::ldexp(1.0, -static_cast<int>(k));
}

}  // namespace smle
