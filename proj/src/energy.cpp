#include "smlecam/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <thread>

namespace smle {

namespace {

constexpr std::array<ModelField, 10> kModelFields{{
    {"c_ml_per_cell", &EnergyModel::c_ml_per_cell},
    {"c_sl_per_cell", &EnergyModel::c_sl_per_cell},
    {"c_mle_node", &EnergyModel::c_mle_node},
    {"v_dd", &EnergyModel::v_dd},
    {"v_swing_ml", &EnergyModel::v_swing_ml},
    {"v_swing_sl", &EnergyModel::v_swing_sl},
    {"f", &EnergyModel::f},
    {"upsize_base", &EnergyModel::upsize_base},
    {"delay_per_series_device", &EnergyModel::delay_per_series_device},
    {"delay_nor_discharge", &EnergyModel::delay_nor_discharge},
}};

QuerySummary summarize(std::size_t index, SearchReport report, const EnergyModel& model,
                       const CamConfig& config) {
  report = aggregate(std::move(report), model, config);
  QuerySummary s;
  s.index = index;
  s.matches = std::move(report.matches);
  s.energized_count = report.energized_count;
  s.events = report.events;
  s.energy = report.energy_total;
  return s;
}

}  // namespace

void EnergyModel::validate() const {
  for (const auto& field : kModelFields) {
    const double v = this->*field.member;
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidConfig,
                  "model parameter " + std::string(field.name) + " must be positive and finite");
    }
  }
  if (v_swing_ml > v_dd || v_swing_sl > v_dd) {
    throw Error(ErrorKind::InvalidConfig, "voltage swing cannot exceed v_dd");
  }
}

std::span<const ModelField> model_fields() { return kModelFields; }

std::string_view to_string(EventClass event) {
  switch (event) {
    case EventClass::MlPrecharge: return "ml_precharge";
    case EventClass::MlDischarge: return "ml_discharge";
    case EventClass::SearchlineToggle: return "searchline_toggle";
    case EventClass::MleEvaluation: return "mle_evaluation";
  }
  return "unknown";
}

EventClass parse_event_class(std::string_view name) {
  for (auto e : {EventClass::MlPrecharge, EventClass::MlDischarge, EventClass::SearchlineToggle,
                 EventClass::MleEvaluation}) {
    if (to_string(e) == name) return e;
  }
  throw Error(ErrorKind::UnknownEventClass, "unknown event class '" + std::string(name) + "'");
}

std::size_t nor_cells_per_ml(const CamConfig& config, Variant variant) {
  return variant == Variant::Smle ? config.word_bits - config.mle_bits : config.word_bits;
}

double event_energy(const EnergyModel& model, EventClass event, std::uint64_t multiplicity,
                    const CamConfig& config, Variant variant) {
  double capacitance = 0.0;
  double swing = 0.0;
  switch (event) {
    case EventClass::MlPrecharge:
    case EventClass::MlDischarge:
      capacitance = model.c_ml_per_cell * static_cast<double>(nor_cells_per_ml(config, variant));
      swing = model.v_swing_ml;
      break;
    case EventClass::SearchlineToggle:
      capacitance = model.c_sl_per_cell * static_cast<double>(config.num_words);
      swing = model.v_swing_sl;
      break;
    case EventClass::MleEvaluation: {
      const double k = static_cast<double>(config.mle_bits);
      capacitance = model.c_mle_node * k * std::pow(model.upsize_base, k - 3.0);
      swing = model.v_dd;
      break;
    }
    default:
      throw Error(ErrorKind::UnknownEventClass, "unknown event class");
  }
  return capacitance * model.v_dd * swing * static_cast<double>(multiplicity);
}

double ml_energy(const EnergyModel& model, const EventTotals& events, const CamConfig& config,
                 Variant variant) {
  return event_energy(model, EventClass::MlPrecharge, events.ml_precharges, config, variant) +
         event_energy(model, EventClass::MlDischarge, events.ml_discharges, config, variant);
}

double events_energy(const EnergyModel& model, const EventTotals& events, const CamConfig& config,
                     Variant variant) {
  return ml_energy(model, events, config, variant) +
         event_energy(model, EventClass::SearchlineToggle, events.sl_toggles, config, variant) +
         event_energy(model, EventClass::MleEvaluation, events.mle_evaluations, config, variant);
}

std::size_t precharge_series_depth(const CamConfig& config, Variant variant) {
  return variant == Variant::Smle ? config.mle_bits + 2 : 1;
}

double search_delay(const EnergyModel& model, const CamConfig& config, Variant variant) {
  return static_cast<double>(precharge_series_depth(config, variant)) *
             model.delay_per_series_device +
         model.delay_nor_discharge;
}

SearchReport aggregate(SearchReport report, const EnergyModel& model, const CamConfig& config) {
  report.energy_total = events_energy(model, report.events, config, report.variant);
  report.delay = search_delay(model, config, report.variant);
  return report;
}

double energy_metric(double total_energy, const CamConfig& config, std::size_t num_searches) {
  if (num_searches == 0) {
    throw Error(ErrorKind::ZeroSearches, "energy metric needs at least one search");
  }
  return total_energy /
         (static_cast<double>(config.word_bits) * static_cast<double>(num_searches));
}

double StreamResult::mean_energized_fraction(std::size_t num_words) const {
  if (queries.empty() || num_words == 0) return 0.0;
  return static_cast<double>(energized_total) /
         (static_cast<double>(queries.size()) * static_cast<double>(num_words));
}

StreamResult simulate_stream(const CamArray& array, std::span<const BitWord> queries,
                             const EnergyModel& model, unsigned workers) {
  const CamConfig& config = array.config();
  StreamResult result;
  result.variant = array.variant();
  result.queries.resize(queries.size());

  auto run_shard = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::optional<BitWord> previous;
      if (i > 0) previous = queries[i - 1];
      result.queries[i] = summarize(i, array.search(queries[i], previous), model, config);
    }
  };

  const std::size_t shards =
      std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(queries.size(), 1));
  if (shards == 1) {
    run_shard(0, queries.size());
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (queries.size() + shards - 1) / shards;
    for (std::size_t s = 0; s < shards; ++s) {
      const std::size_t begin = std::min(queries.size(), s * chunk);
      const std::size_t end = std::min(queries.size(), begin + chunk);
      threads.emplace_back(run_shard, begin, end);
    }
    for (auto& t : threads) t.join();
  }

  for (const auto& q : result.queries) {
    result.totals += q.events;
    result.energized_total += q.energized_count;
  }
  result.energy_total = events_energy(model, result.totals, config, result.variant);
  result.delay = search_delay(model, config, result.variant);
  return result;
}

SweepRow sweep_row(std::size_t k, const CamConfig& base, const EnergyModel& model,
                   std::span<const BitWord> words, std::span<const BitWord> queries,
                   unsigned workers) {
  CamConfig config = base;
  config.mle_bits = k;
  const CamArray array = CamArray(config, Variant::Smle).write_all(words);
  const StreamResult run = simulate_stream(array, queries, model, workers);
  SweepRow row;
  row.k = k;
  row.mean_energized_fraction = run.mean_energized_fraction(config.num_words);
  row.energy_metric = energy_metric(run.energy_total, config, queries.size());
  row.mean_delay = run.delay;
  return row;
}

std::vector<SweepRow> sweep_mle_bits(const CamConfig& base, const EnergyModel& model,
                                     const WorkloadSpec& workload,
                                     std::span<const std::size_t> k_values, unsigned workers) {
  model.validate();
  const std::vector<BitWord> words = gen_words(base.num_words, base.word_bits, base.seed);
  const std::vector<BitWord> queries = gen_queries(workload, words, base.word_bits);
  std::vector<SweepRow> rows;
  rows.reserve(k_values.size());
  for (std::size_t k : k_values) rows.push_back(sweep_row(k, base, model, words, queries, workers));
  return rows;
}

std::optional<std::size_t> argmin_k(std::span<const SweepRow> rows) {
  const SweepRow* best = nullptr;
  for (const auto& row : rows) {
    if (best == nullptr || row.energy_metric < best->energy_metric ||
        (row.energy_metric == best->energy_metric && row.k < best->k)) {
      best = &row;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->k;
}

}  // namespace smle
