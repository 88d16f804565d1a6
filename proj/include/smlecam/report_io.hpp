#pragma once

// Text formats: word lists, the flat key/value model file, and JSON/CSV
// reports. Writers are byte-deterministic for identical inputs.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "smlecam/core.hpp"
#include "smlecam/energy.hpp"
#include "smlecam/workload.hpp"

namespace smle {

using Json = nlohmann::ordered_json;

/// One word per line; blank lines and lines starting with '#' are skipped.
/// Parse errors keep their kind and name the 1-based line number.
std::vector<BitWord> load_words(std::istream& in, std::size_t width, WordFormat format);
std::vector<BitWord> load_words_file(const std::filesystem::path& path, std::size_t width,
                                     WordFormat format);

void write_words(std::ostream& out, std::span<const BitWord> words, WordFormat format);

/// Reads `key = value` lines over the defaults; keys are EnergyModel field
/// names. Throws BadModelFile on unknown keys or malformed numbers.
EnergyModel load_model(std::istream& in, EnergyModel base = {});
EnergyModel load_model_file(const std::filesystem::path& path, EnergyModel base = {});

/// Applies one `key=value` override.
void set_model_param(EnergyModel& model, std::string_view assignment);

Json to_json(const CamConfig& config);
Json to_json(const EnergyModel& model);
Json to_json(const WorkloadSpec& workload);
Json to_json(const EventTotals& events);
Json to_json(const SweepRow& row);

/// Per-query summaries plus aggregate statistics for one stream run.
Json stream_to_json(const StreamResult& run, const CamConfig& config);

/// Header `k,energized_fraction,energy_metric,mean_delay`, values printed with
/// 6 significant digits.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Writes `doc.dump(2)` plus a trailing newline. Throws Error{Io}.
void write_json_file(const std::filesystem::path& path, const Json& doc);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// %.6g formatting.
std::string format_g6(double value);

}  // namespace smle
