#pragma once

// Truth-level models of the three CAM cell types and the shared
// write/search driver. All evaluation functions are pure.

#include "smlecam/core.hpp"

namespace smle {

enum class CellKind : std::uint8_t { Xnor, Xor, Nor };

struct CellState {
  bool stored = false;
  CellKind kind = CellKind::Nor;

  friend bool operator==(const CellState&, const CellState&) = default;
};

/// Write/SL_EN high opens the pass devices (Write); low preserves the latch
/// and enables the search path (Search).
DriverMode driver_select(NodeLevel write_sl_en) noexcept;

/// First-stage source node M0: High when the search bit equals the latch.
NodeLevel xnor_cell_eval(const CellState& state, bool search_bit) noexcept;

/// First-stage gate node M_i (i >= 1): High when the search bit differs.
NodeLevel xor_cell_eval(const CellState& state, bool search_bit) noexcept;

/// Second-stage cell: true when it opens a pull-down path on the match line.
bool nor_cell_pulls_down(const CellState& state, bool search_bit) noexcept;

/// Throws Error{WriteInSearchMode} unless the driver is in Write mode.
CellState cell_write(const CellState& state, bool bit, DriverMode mode);

}  // namespace smle
