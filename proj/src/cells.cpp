#include "smlecam/cells.hpp"

namespace smle {

DriverMode driver_select(NodeLevel write_sl_en) noexcept {
  return is_high(write_sl_en) ? DriverMode::Write : DriverMode::Search;
}

NodeLevel xnor_cell_eval(const CellState& state, bool search_bit) noexcept {
  // Sb = D = 1 conducts through P2, Sb = D = 0 through P1; otherwise held low.
  return level_of(state.stored == search_bit);
}

NodeLevel xor_cell_eval(const CellState& state, bool search_bit) noexcept {
  return level_of(state.stored != search_bit);
}

bool nor_cell_pulls_down(const CellState& state, bool search_bit) noexcept {
  return state.stored != search_bit;
}

CellState cell_write(const CellState& state, bool bit, DriverMode mode) {
  if (mode != DriverMode::Write) {
    throw Error(ErrorKind::WriteInSearchMode,
                "cell write attempted while the driver is in Search mode");
  }
  return CellState{bit, state.kind};
}

}  // namespace smle
