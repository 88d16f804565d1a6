#include "smlecam/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "smlecam/array.hpp"
#include "smlecam/energy.hpp"
#include "smlecam/mle.hpp"
#include "smlecam/report_io.hpp"
#include "smlecam/verify.hpp"
#include "smlecam/workload.hpp"

namespace smle::cli {

namespace {

constexpr std::string_view kTool = "smle_cam";

struct Flags {
  std::size_t words = 256;
  std::size_t width = 144;
  std::size_t mle_bits = 3;
  std::uint64_t seed = 1;
  std::size_t queries = 10000;
  std::string workload = "uniform";
  double match_rate = 0.5;
  double bias = 0.9;
  std::size_t skew_bits = 0;
  std::string model_file;
  std::vector<std::string> params;
  std::string variant = "smle";
  std::string format;
  std::string out;
  unsigned workers = 1;
  std::string data;
  std::string query_file;
  std::string data_format = "bin";
  double tolerance = 0.005;
  std::vector<std::size_t> k_values{2, 3, 4, 5, 6};

  bool no_exhaustive = false;
  std::size_t random_trials = 100000;
  std::size_t random_words = 256;
  std::size_t random_width = 144;
  std::size_t random_k = 3;
  bool inject_fault = false;
};

// Everything a run needs, resolved and validated before any simulation.
struct Context {
  CamConfig config;
  EnergyModel model;
  WorkloadSpec workload;
  std::vector<BitWord> words;
  std::vector<BitWord> queries;
  Json inputs;
};

void add_geometry(CLI::App& cmd, Flags& f) {
  cmd.add_option("--words", f.words, "Number of stored words N")->capture_default_str();
  cmd.add_option("--width", f.width, "Word width n in bits")->capture_default_str();
  cmd.add_option("--seed", f.seed, "Seed for stored data and queries")->capture_default_str();
}

void add_workload(CLI::App& cmd, Flags& f) {
  cmd.add_option("--queries", f.queries, "Number of queries")->capture_default_str();
  cmd.add_option("--workload", f.workload, "uniform | planted | skewed")->capture_default_str();
  cmd.add_option("--match-rate", f.match_rate, "Planted workload match rate")->capture_default_str();
  cmd.add_option("--bias", f.bias, "Skewed workload per-bit agreement bias")->capture_default_str();
  cmd.add_option("--skew-bits", f.skew_bits, "Skewed prefix length (default: --mle-bits)");
  cmd.add_option("--data", f.data, "Stored words file (one word per line)");
  cmd.add_option("--query-file", f.query_file, "Query words file");
  cmd.add_option("--data-format", f.data_format, "bin | hex")->capture_default_str();
}

void add_model(CLI::App& cmd, Flags& f) {
  cmd.add_option("--model-file", f.model_file, "Energy model parameters (key = value lines)");
  cmd.add_option("--param", f.params, "Model parameter override key=value (repeatable)");
}

void add_output(CLI::App& cmd, Flags& f) {
  cmd.add_option("--format", f.format, "json | csv");
  cmd.add_option("--out", f.out, "Report file (default: standard output)");
  cmd.add_option("--workers", f.workers, "Worker threads for query evaluation")->capture_default_str();
}

Json report_header(std::string_view command) {
  Json j;
  j["tool"] = std::string(kTool);
  j["command"] = std::string(command);
  j["units"] = std::string(kUnitsNote);
  j["model_note"] = std::string(kUpsizeNote);
  return j;
}

void emit(const Flags& f, const std::string& text, std::ostream& out) {
  if (f.out.empty()) {
    out << text;
  } else {
    write_text_file(f.out, text);
  }
}

EnergyModel resolve_model(const Flags& f) {
  EnergyModel model;
  if (!f.model_file.empty()) model = load_model_file(f.model_file, model);
  for (const auto& p : f.params) set_model_param(model, p);
  model.validate();
  return model;
}

Context resolve(const Flags& f, std::size_t mle_bits) {
  Context ctx;
  ctx.model = resolve_model(f);

  const auto format = parse_word_format(f.data_format);
  if (!format) throw Error(ErrorKind::InvalidConfig, "--data-format must be bin or hex");

  ctx.config.word_bits = f.width;
  ctx.config.mle_bits = mle_bits;
  ctx.config.seed = f.seed;
  ctx.config.num_words = f.words;
  if (!f.data.empty()) {
    ctx.words = load_words_file(f.data, f.width, *format);
    if (ctx.words.empty()) throw Error(ErrorKind::EmptyStore, "--data file holds no words");
    ctx.config.num_words = ctx.words.size();
    ctx.inputs["data_file"] = f.data;
  }
  ctx.config.validate();
  if (f.data.empty()) ctx.words = gen_words(ctx.config.num_words, ctx.config.word_bits, f.seed);

  const auto kind = parse_workload_kind(f.workload);
  if (!kind) throw Error(ErrorKind::InvalidWorkload, "--workload must be uniform, planted or skewed");
  ctx.workload.kind = *kind;
  ctx.workload.match_rate = f.match_rate;
  ctx.workload.bias = f.bias;
  ctx.workload.prefix_bits = f.skew_bits == 0 ? mle_bits : f.skew_bits;
  ctx.workload.num_queries = f.queries;
  ctx.workload.seed = f.seed;

  if (!f.query_file.empty()) {
    ctx.queries = load_words_file(f.query_file, f.width, *format);
    if (ctx.queries.empty()) throw Error(ErrorKind::InvalidWorkload, "--query-file holds no words");
    ctx.workload.num_queries = ctx.queries.size();
    ctx.inputs["query_file"] = f.query_file;
  } else {
    ctx.queries = gen_queries(ctx.workload, ctx.words, ctx.config.word_bits);
    ctx.inputs["workload"] = to_json(ctx.workload);
  }
  if (!f.data.empty() || !f.query_file.empty()) ctx.inputs["data_format"] = f.data_format;
  return ctx;
}

bool uniform_generated(const Flags& f) {
  return f.data.empty() && f.query_file.empty() && f.workload == "uniform";
}

Json fraction_check(double measured, double expected, double tolerance) {
  Json j;
  j["expected"] = expected;
  j["measured"] = measured;
  j["tolerance"] = tolerance;
  j["pass"] = std::abs(measured - expected) <= tolerance;
  return j;
}

void require_format(const Flags& f, std::initializer_list<std::string_view> allowed) {
  if (f.format.empty()) return;
  for (auto a : allowed) {
    if (f.format == a) return;
  }
  throw Error(ErrorKind::InvalidConfig, "--format " + f.format + " is not supported by this command");
}

int cmd_search(const Flags& f, std::ostream& out) {
  require_format(f, {"json"});
  const auto variant = parse_variant(f.variant);
  if (!variant) throw Error(ErrorKind::InvalidConfig, "--variant must be smle or baseline");
  const Context ctx = resolve(f, f.mle_bits);
  const CamArray array = CamArray(ctx.config, *variant).write_all(ctx.words);
  const StreamResult run = simulate_stream(array, ctx.queries, ctx.model, f.workers);

  Json doc = report_header("search");
  doc["config"] = to_json(ctx.config);
  doc["variant"] = std::string(to_string(*variant));
  doc["inputs"] = ctx.inputs;
  doc["model"] = to_json(ctx.model);
  const double fraction = run.mean_energized_fraction(ctx.config.num_words);
  if (uniform_generated(f) && *variant == Variant::Smle) {
    doc["checks"]["energized_fraction"] =
        fraction_check(fraction, expected_energized_fraction(ctx.config.mle_bits), f.tolerance);
  }
  doc["result"] = stream_to_json(run, ctx.config);
  emit(f, doc.dump(2) + "\n", out);
  if (!f.out.empty()) {
    out << "searches: " << run.queries.size() << "\n"
        << "mean energized fraction: " << format_g6(fraction) << "\n"
        << "energy metric: " << format_g6(energy_metric(run.energy_total, ctx.config, run.queries.size()))
        << " (arbitrary units)\n";
  }
  return kExitOk;
}

int cmd_compare(const Flags& f, std::ostream& out) {
  require_format(f, {"json"});
  const Context ctx = resolve(f, f.mle_bits);
  const CamArray smle_array = CamArray(ctx.config, Variant::Smle).write_all(ctx.words);
  const CamArray base_array = CamArray(ctx.config, Variant::BaselineNor).write_all(ctx.words);
  const StreamResult smle = simulate_stream(smle_array, ctx.queries, ctx.model, f.workers);
  const StreamResult base = simulate_stream(base_array, ctx.queries, ctx.model, f.workers);

  std::size_t differing = 0;
  for (std::size_t i = 0; i < ctx.queries.size(); ++i) {
    if (smle.queries[i].matches != base.queries[i].matches) ++differing;
  }
  const auto ratio = [](double a, double b) { return b == 0.0 ? 0.0 : a / b; };
  const double precharge_ratio = ratio(static_cast<double>(smle.totals.ml_precharges),
                                       static_cast<double>(base.totals.ml_precharges));

  Json doc = report_header("compare");
  doc["config"] = to_json(ctx.config);
  doc["inputs"] = ctx.inputs;
  doc["model"] = to_json(ctx.model);
  Json cmp;
  cmp["matches_identical"] = differing == 0;
  cmp["queries_with_differing_matches"] = differing;
  cmp["ml_precharge_event_ratio"] = precharge_ratio;
  cmp["ml_energy_ratio"] = ratio(ml_energy(ctx.model, smle.totals, ctx.config, Variant::Smle),
                                 ml_energy(ctx.model, base.totals, ctx.config, Variant::BaselineNor));
  cmp["energy_ratio"] = ratio(smle.energy_total, base.energy_total);
  cmp["delay_ratio"] = ratio(smle.delay, base.delay);
  doc["comparison"] = std::move(cmp);
  if (uniform_generated(f)) {
    doc["checks"]["ml_precharge_event_ratio"] =
        fraction_check(precharge_ratio, expected_energized_fraction(ctx.config.mle_bits), f.tolerance);
  }
  auto summary = [&](const StreamResult& run) {
    Json j = stream_to_json(run, ctx.config);
    j.erase("queries");
    return j;
  };
  doc["smle"] = summary(smle);
  doc["baseline"] = summary(base);
  emit(f, doc.dump(2) + "\n", out);
  if (!f.out.empty()) {
    out << "ml precharge event ratio (smle/baseline): " << format_g6(precharge_ratio) << "\n"
        << "match sets identical: " << (differing == 0 ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const Flags& f, std::ostream& out) {
  require_format(f, {"csv", "json"});
  if (f.k_values.empty()) throw Error(ErrorKind::InvalidConfig, "--k-values is empty");
  for (std::size_t k : f.k_values) {
    CamConfig probe;
    probe.num_words = f.words;
    probe.word_bits = f.width;
    probe.mle_bits = k;
    probe.validate();
  }
  // Sweeps replay one stored set and query stream, generated at the template
  // width with the skew prefix pinned to the template energizer width.
  const Context ctx = resolve(f, f.mle_bits);
  std::vector<SweepRow> rows;
  for (std::size_t k : f.k_values) {
    rows.push_back(sweep_row(k, ctx.config, ctx.model, ctx.words, ctx.queries, f.workers));
  }
  const auto best = argmin_k(rows);

  std::ostringstream text;
  if (f.format == "json") {
    Json doc = report_header("sweep");
    CamConfig tmpl = ctx.config;
    Json config = to_json(tmpl);
    config.erase("mle_bits");
    doc["config"] = std::move(config);
    doc["k_values"] = f.k_values;
    doc["inputs"] = ctx.inputs;
    doc["model"] = to_json(ctx.model);
    Json jrows = Json::array();
    for (const auto& r : rows) jrows.push_back(to_json(r));
    doc["rows"] = std::move(jrows);
    doc["argmin_k"] = *best;
    text << doc.dump(2) << "\n";
  } else {
    write_sweep_csv(text, rows);
  }
  emit(f, text.str(), out);
  out << "argmin_k=" << *best << "\n"
      << "energy_metric units: model-calibrated arbitrary units per bit per search\n";
  return kExitOk;
}

void print_counterexample(const Counterexample& c, std::ostream& err) {
  auto list = [](const std::vector<std::size_t>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
  };
  err << "counterexample (" << c.phase << ", variant " << to_string(c.variant)
      << ", N=" << c.config.num_words << " n=" << c.config.word_bits << " k=" << c.config.mle_bits
      << "): " << c.detail << "\n";
  err << "  query:    " << render_word(c.query, WordFormat::Bin) << "\n";
  err << "  expected: " << list(c.expected) << "\n";
  err << "  got:      " << list(c.got) << "\n";
  err << "  stored:\n";
  for (std::size_t a = 0; a < c.stored.size(); ++a) {
    err << "    [" << a << "] " << render_word(c.stored[a], WordFormat::Bin) << "\n";
  }
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream& err) {
  require_format(f, {"json"});
  VerifyOptions options;
  options.exhaustive = !f.no_exhaustive;
  options.random_trials = f.random_trials;
  options.random_words = f.random_words;
  options.random_width = f.random_width;
  options.random_k = f.random_k;
  options.seed = f.seed;
  options.workers = f.workers;
  options.fault = f.inject_fault ? Fault::FlipMleOutput : Fault::None;
  CamConfig probe;
  probe.num_words = f.random_words;
  probe.word_bits = f.random_width;
  probe.mle_bits = f.random_k;
  probe.validate();

  const VerifyResult result = run_verification(options);
  out << "exhaustive searches: " << result.exhaustive_searches << "\n"
      << "exhaustive cases (word x query): " << result.exhaustive_cases << "\n"
      << "random trials: " << result.random_trials << "\n"
      << (result.passed() ? "PASS" : "FAIL") << "\n";
  if (!f.out.empty()) {
    Json doc = report_header("verify");
    doc["seed"] = f.seed;
    doc["exhaustive_searches"] = result.exhaustive_searches;
    doc["exhaustive_cases"] = result.exhaustive_cases;
    doc["random_trials"] = result.random_trials;
    doc["random_geometry"] = to_json(probe);
    doc["passed"] = result.passed();
    if (result.failure) {
      const auto& c = *result.failure;
      Json cj;
      cj["phase"] = c.phase;
      cj["detail"] = c.detail;
      cj["config"] = to_json(c.config);
      cj["variant"] = std::string(to_string(c.variant));
      cj["query"] = render_word(c.query, WordFormat::Bin);
      cj["expected"] = c.expected;
      cj["got"] = c.got;
      Json stored = Json::array();
      for (const auto& w : c.stored) stored.push_back(render_word(w, WordFormat::Bin));
      cj["stored"] = std::move(stored);
      doc["counterexample"] = std::move(cj);
    }
    write_json_file(f.out, doc);
  }
  if (result.failure) {
    print_counterexample(*result.failure, err);
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Behavioral simulator for a selective match-line energizer CAM", std::string(kTool)};
  app.require_subcommand(1);
  Flags f;

  auto* search = app.add_subcommand("search", "Run a query stream and report matches and energy");
  add_geometry(*search, f);
  search->add_option("--mle-bits", f.mle_bits, "Energizer prefix width k (2..6)")->capture_default_str();
  add_workload(*search, f);
  add_model(*search, f);
  search->add_option("--variant", f.variant, "smle | baseline")->capture_default_str();
  search->add_option("--tolerance", f.tolerance, "Energized-fraction tolerance")->capture_default_str();
  add_output(*search, f);

  auto* sweep = app.add_subcommand("sweep", "Sweep the energizer width and emit the energy curve");
  add_geometry(*sweep, f);
  sweep->add_option("--mle-bits", f.mle_bits, "Template energizer width (sets the skew prefix)")
      ->capture_default_str();
  sweep->add_option("--k-values", f.k_values, "Energizer widths to sweep")->delimiter(',');
  add_workload(*sweep, f);
  add_model(*sweep, f);
  add_output(*sweep, f);

  auto* compare = app.add_subcommand("compare", "Run one workload on SMLE and all-NOR arrays");
  add_geometry(*compare, f);
  compare->add_option("--mle-bits", f.mle_bits, "Energizer prefix width k (2..6)")->capture_default_str();
  add_workload(*compare, f);
  add_model(*compare, f);
  compare->add_option("--tolerance", f.tolerance, "Precharge-ratio tolerance")->capture_default_str();
  add_output(*compare, f);

  auto* verify = app.add_subcommand("verify", "Check search results against the linear-scan oracle");
  verify->add_option("--seed", f.seed, "Seed")->capture_default_str();
  verify->add_flag("--no-exhaustive", f.no_exhaustive, "Skip the exhaustive small-array phase");
  verify->add_option("--random-trials", f.random_trials, "Randomized trials")->capture_default_str();
  verify->add_option("--random-words", f.random_words, "Words per randomized array")->capture_default_str();
  verify->add_option("--random-width", f.random_width, "Width of randomized arrays")->capture_default_str();
  verify->add_option("--random-k", f.random_k, "Energizer width of randomized arrays")->capture_default_str();
  verify->add_flag("--inject-fault", f.inject_fault, "Invert the energizer output (harness self-test)")
      ->group("");
  add_output(*verify, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (f.workers < 1) throw Error(ErrorKind::InvalidConfig, "--workers must be at least 1");
    if (*search) return cmd_search(f, out);
    if (*sweep) return cmd_sweep(f, out);
    if (*compare) return cmd_compare(f, out);
    return cmd_verify(f, out, err);
  } catch (const Error& e) {
    err << kTool << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::Io ? kExitFailure : kExitUsage;
  } catch (const std::exception& e) {
    err << kTool << ": " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace smle::cli
