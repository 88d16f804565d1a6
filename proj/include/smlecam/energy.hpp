#pragma once

// Switching-activity energy accounting (E = C * V_DD * V_s per node swing,
// with activity taken from simulated event counts), an abstract series-device
// delay model and the energizer-width sweep.
//
// All outputs are in model-calibrated arbitrary units.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smlecam/array.hpp"
#include "smlecam/core.hpp"
#include "smlecam/workload.hpp"

namespace smle {

inline constexpr std::string_view kUnitsNote =
    "energy and delay are in model-calibrated arbitrary units; they are not "
    "technology-level measurements (fJ/bit/search, ps) and are not comparable "
    "to circuit-simulation results";

inline constexpr std::string_view kUpsizeNote =
    "energizer upsizing growth c_mle_node * k * upsize_base^(k-3) is a surrogate "
    "cost law, not a measured device sizing";

struct EnergyModel {
  double c_ml_per_cell = 1.0;
  double c_sl_per_cell = 0.5;
  double c_mle_node = 4.0;
  double v_dd = 1.0;
  double v_swing_ml = 1.0;
  double v_swing_sl = 1.0;
  double f = 1.0;
  double upsize_base = 2.0;
  double delay_per_series_device = 1.0;
  double delay_nor_discharge = 1.0;

  /// Throws InvalidConfig when a value is non-positive or a swing exceeds V_DD.
  void validate() const;

  friend bool operator==(const EnergyModel&, const EnergyModel&) = default;
};

/// Field names and accessors in declaration order, shared by the model-file
/// reader and the report writers.
struct ModelField {
  std::string_view name;
  double EnergyModel::*member;
};
std::span<const ModelField> model_fields();

enum class EventClass : std::uint8_t { MlPrecharge, MlDischarge, SearchlineToggle, MleEvaluation };

std::string_view to_string(EventClass event);
/// Throws UnknownEventClass.
EventClass parse_event_class(std::string_view name);

/// NOR cells hanging on one match line.
std::size_t nor_cells_per_ml(const CamConfig& config, Variant variant);

/// Energy of `multiplicity` events of one class.
double event_energy(const EnergyModel& model, EventClass event, std::uint64_t multiplicity,
                    const CamConfig& config, Variant variant = Variant::Smle);

/// Energy of a full set of event totals.
double events_energy(const EnergyModel& model, const EventTotals& events, const CamConfig& config,
                     Variant variant);

/// Energy of the match-line events only.
double ml_energy(const EnergyModel& model, const EventTotals& events, const CamConfig& config,
                 Variant variant);

/// Series devices on the precharge path: 2 in the XNOR cell, k-1 in the
/// energizer and the precharge device. The baseline has only the device.
std::size_t precharge_series_depth(const CamConfig& config, Variant variant);

double search_delay(const EnergyModel& model, const CamConfig& config, Variant variant);

/// Returns the report with energy_total and delay filled in.
SearchReport aggregate(SearchReport report, const EnergyModel& model, const CamConfig& config);

/// total / (word_bits * num_searches). Throws ZeroSearches.
double energy_metric(double total_energy, const CamConfig& config, std::size_t num_searches);

// --- query streams ---------------------------------------------------------

struct QuerySummary {
  std::size_t index = 0;
  std::vector<std::size_t> matches;
  std::size_t energized_count = 0;
  EventTotals events;
  double energy = 0.0;
};

struct StreamResult {
  Variant variant = Variant::Smle;
  std::vector<QuerySummary> queries;
  EventTotals totals;
  std::uint64_t energized_total = 0;
  double energy_total = 0.0;
  double delay = 0.0;

  double mean_energized_fraction(std::size_t num_words) const;
};

/// Searches every query in order; query i sees query i-1 on the searchlines.
/// Work is split into contiguous shards across `workers` threads; the result
/// does not depend on the worker count.
StreamResult simulate_stream(const CamArray& array, std::span<const BitWord> queries,
                             const EnergyModel& model, unsigned workers = 1);

struct SweepRow {
  std::size_t k = 0;
  double mean_energized_fraction = 0.0;
  double energy_metric = 0.0;
  double mean_delay = 0.0;
};

/// Replays the same stored data and query stream for each energizer width.
SweepRow sweep_row(std::size_t k, const CamConfig& base, const EnergyModel& model,
                   std::span<const BitWord> words, std::span<const BitWord> queries,
                   unsigned workers = 1);

std::vector<SweepRow> sweep_mle_bits(const CamConfig& base, const EnergyModel& model,
                                     const WorkloadSpec& workload,
                                     std::span<const std::size_t> k_values, unsigned workers = 1);

/// k with the smallest energy metric; ties go to the smaller k.
std::optional<std::size_t> argmin_k(std::span<const SweepRow> rows);

}  // namespace smle
