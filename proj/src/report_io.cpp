#include "smlecam/report_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "smlecam/mle.hpp"

namespace smle {

namespace {

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for reading");
  return in;
}

double parse_decimal(std::string_view text, std::string_view key) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw Error(ErrorKind::BadModelFile,
                "value for '" + std::string(key) + "' is not a decimal number: '" +
                    std::string(text) + "'");
  }
  return value;
}

void assign_field(EnergyModel& model, std::string_view key, std::string_view value) {
  for (const auto& field : model_fields()) {
    if (field.name == key) {
      model.*field.member = parse_decimal(value, key);
      return;
    }
  }
  throw Error(ErrorKind::BadModelFile, "unknown model parameter '" + std::string(key) + "'");
}

}  // namespace

std::vector<BitWord> load_words(std::istream& in, std::size_t width, WordFormat format) {
  std::vector<BitWord> words;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    try {
      words.push_back(parse_word(text, width, format));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return words;
}

std::vector<BitWord> load_words_file(const std::filesystem::path& path, std::size_t width,
                                     WordFormat format) {
  auto in = open_input(path);
  return load_words(in, width, format);
}

void write_words(std::ostream& out, std::span<const BitWord> words, WordFormat format) {
  for (const auto& w : words) out << render_word(w, format) << '\n';
}

EnergyModel load_model(std::istream& in, EnergyModel base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::BadModelFile,
                  "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      assign_field(base, trim(text.substr(0, eq)), text.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

EnergyModel load_model_file(const std::filesystem::path& path, EnergyModel base) {
  auto in = open_input(path);
  return load_model(in, base);
}

void set_model_param(EnergyModel& model, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorKind::BadModelFile,
                "parameter override must be key=value: '" + std::string(assignment) + "'");
  }
  assign_field(model, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

Json to_json(const CamConfig& config) {
  Json j;
  j["num_words"] = config.num_words;
  j["word_bits"] = config.word_bits;
  j["mle_bits"] = config.mle_bits;
  j["seed"] = config.seed;
  return j;
}

Json to_json(const EnergyModel& model) {
  Json j;
  for (const auto& field : model_fields()) j[std::string(field.name)] = model.*field.member;
  return j;
}

Json to_json(const WorkloadSpec& workload) {
  Json j;
  j["kind"] = std::string(to_string(workload.kind));
  if (workload.kind == WorkloadKind::Planted) j["match_rate"] = workload.match_rate;
  if (workload.kind == WorkloadKind::PrefixSkewed) {
    j["bias"] = workload.bias;
    j["prefix_bits"] = workload.prefix_bits;
  }
  j["num_queries"] = workload.num_queries;
  j["seed"] = workload.seed;
  return j;
}

Json to_json(const EventTotals& events) {
  Json j;
  j["ml_en_transitions"] = events.ml_en_transitions;
  j["ml_precharges"] = events.ml_precharges;
  j["ml_discharges"] = events.ml_discharges;
  j["searchline_toggles"] = events.sl_toggles;
  j["mle_evaluations"] = events.mle_evaluations;
  return j;
}

Json to_json(const SweepRow& row) {
  Json j;
  j["k"] = row.k;
  j["energized_fraction"] = row.mean_energized_fraction;
  j["energy_metric"] = row.energy_metric;
  j["mean_delay"] = row.mean_delay;
  return j;
}

Json stream_to_json(const StreamResult& run, const CamConfig& config) {
  Json j;
  j["variant"] = std::string(to_string(run.variant));
  Json queries = Json::array();
  std::size_t with_match = 0;
  for (const auto& q : run.queries) {
    if (!q.matches.empty()) ++with_match;
    Json e;
    e["index"] = q.index;
    e["matches"] = q.matches;
    e["energized_count"] = q.energized_count;
    e["ml_discharges"] = q.events.ml_discharges;
    e["searchline_toggles"] = q.events.sl_toggles;
    e["energy"] = q.energy;
    queries.push_back(std::move(e));
  }
  Json agg;
  agg["num_searches"] = run.queries.size();
  agg["queries_with_match"] = with_match;
  agg["energized_total"] = run.energized_total;
  agg["mean_energized_fraction"] = run.mean_energized_fraction(config.num_words);
  if (run.variant == Variant::Smle) {
    agg["expected_energized_fraction_uniform"] = expected_energized_fraction(config.mle_bits);
  }
  agg["events"] = to_json(run.totals);
  agg["energy_total"] = run.energy_total;
  agg["energy_metric"] =
      run.queries.empty() ? 0.0 : energy_metric(run.energy_total, config, run.queries.size());
  agg["precharge_series_depth"] = precharge_series_depth(config, run.variant);
  agg["delay_per_search"] = run.delay;
  j["aggregate"] = std::move(agg);
  j["queries"] = std::move(queries);
  return j;
}

std::string format_g6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "k,energized_fraction,energy_metric,mean_delay\n";
  for (const auto& r : rows) {
    out << r.k << ',' << format_g6(r.mean_energized_fraction) << ','
        << format_g6(r.energy_metric) << ',' << format_g6(r.mean_delay) << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace smle
