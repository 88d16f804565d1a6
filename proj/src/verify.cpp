#include "smlecam/verify.hpp"

#include <algorithm>
#include <thread>

#include "smlecam/workload.hpp"

namespace smle {

namespace {

constexpr std::uint64_t kStreamDupStores = 0x4455'5053'0000'0003ULL;
constexpr std::uint64_t kStreamTrials = 0x5452'4941'4c53'0004ULL;

BitWord word_from_value(std::uint64_t value, std::size_t width) {
  BitWord w(width);
  for (std::size_t i = 0; i < width; ++i) w.set_bit(i, (value >> (width - 1 - i)) & 1);
  return w;
}

Counterexample make_counterexample(std::string phase, const CamArray& array, const BitWord& query,
                                   const SearchReport& report, std::string detail) {
  Counterexample c;
  c.phase = std::move(phase);
  c.config = array.config();
  c.variant = array.variant();
  c.stored.assign(array.words().begin(), array.words().end());
  c.query = query;
  c.expected = oracle_search(array.words(), query);
  c.got = report.matches;
  c.detail = std::move(detail);
  return c;
}

// Searches every value of the word space against one store, both variants.
std::optional<Counterexample> sweep_all_queries(const CamArray& smle, const CamArray& baseline,
                                                VerifyResult& result) {
  const std::size_t width = smle.config().word_bits;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v) {
    const BitWord query = word_from_value(v, width);
    for (const CamArray* array : {&smle, &baseline}) {
      const SearchReport report = array->search(query);
      ++result.exhaustive_searches;
      result.exhaustive_cases += array->words().size();
      if (auto problem = check_search(*array, query, report)) {
        return make_counterexample("exhaustive", *array, query, report, *problem);
      }
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> run_exhaustive(const VerifyOptions& options, VerifyResult& result) {
  for (std::size_t width = options.min_width; width <= options.max_width; ++width) {
    for (std::size_t k : options.exhaustive_k) {
      CamConfig config;
      config.word_bits = width;
      config.mle_bits = k;
      config.seed = options.seed;

      // Every distinct word stored once, split into arrays of max_words.
      const std::uint64_t space = std::uint64_t{1} << width;
      for (std::uint64_t first = 0; first < space; first += options.max_words) {
        const std::uint64_t count = std::min<std::uint64_t>(options.max_words, space - first);
        config.num_words = count;
        std::vector<BitWord> words;
        for (std::uint64_t v = first; v < first + count; ++v) words.push_back(word_from_value(v, width));
        const CamArray smle =
            CamArray(config, Variant::Smle).with_fault(options.fault).write_all(words);
        const CamArray baseline = CamArray(config, Variant::BaselineNor).write_all(words);
        if (auto c = sweep_all_queries(smle, baseline, result)) return c;
      }

      // Duplicate-heavy stores drawn from a small pool of values.
      const CounterRng rng(options.seed);
      config.num_words = options.max_words;
      for (std::size_t s = 0; s < options.duplicate_stores; ++s) {
        const std::uint64_t pool = 1 + rng.below(8, kStreamDupStores, s, 0);
        std::vector<std::uint64_t> values(pool);
        for (std::uint64_t p = 0; p < pool; ++p) {
          values[p] = rng.below(space, kStreamDupStores, s, 1 + p);
        }
        std::vector<BitWord> words;
        for (std::size_t a = 0; a < config.num_words; ++a) {
          words.push_back(word_from_value(values[rng.below(pool, kStreamDupStores, s, 64 + a)], width));
        }
        const CamArray smle =
            CamArray(config, Variant::Smle).with_fault(options.fault).write_all(words);
        const CamArray baseline = CamArray(config, Variant::BaselineNor).write_all(words);
        if (auto c = sweep_all_queries(smle, baseline, result)) return c;
      }
    }
  }
  return std::nullopt;
}

// Trial t: a query that copies a stored word, copies one with a single bit
// flipped, or is uniform, in rotation.
BitWord trial_query(const CounterRng& rng, std::span<const BitWord> words, std::size_t t) {
  const std::size_t width = words.front().width();
  switch (t % 3) {
    case 0:
      return words[rng.below(words.size(), kStreamTrials, t, 0)];
    case 1: {
      BitWord q = words[rng.below(words.size(), kStreamTrials, t, 0)];
      const std::size_t flip = rng.below(width, kStreamTrials, t, 1);
      q.set_bit(flip, !q.bit(flip));
      return q;
    }
    default: {
      WorkloadSpec uniform;
      uniform.seed = rng.draw(kStreamTrials, t, 2);
      return gen_query(uniform, words, width, t);
    }
  }
}

struct TrialFailure {
  std::size_t trial;
  Counterexample example;
};

std::optional<TrialFailure> run_trials(const VerifyOptions& options, std::size_t begin,
                                       std::size_t end) {
  CamConfig config;
  config.num_words = options.random_words;
  config.word_bits = options.random_width;
  config.mle_bits = options.random_k;
  const CounterRng rng(options.seed);
  const std::size_t per_store = std::max<std::size_t>(options.trials_per_store, 1);

  std::optional<std::size_t> loaded_store;
  std::optional<CamArray> array;
  for (std::size_t t = begin; t < end; ++t) {
    const std::size_t store = t / per_store;
    if (loaded_store != store) {
      config.seed = rng.draw(kStreamTrials, store, 999);
      const auto words = gen_words(config.num_words, config.word_bits, config.seed);
      array = CamArray(config, Variant::Smle).with_fault(options.fault).write_all(words);
      loaded_store = store;
    }
    const BitWord query = trial_query(rng, array->words(), t);
    const SearchReport report = array->search(query);
    if (auto problem = check_search(*array, query, report)) {
      return TrialFailure{t, make_counterexample("random", *array, query, report, *problem)};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> check_search(const CamArray& array, const BitWord& query,
                                        const SearchReport& report) {
  const auto expected = oracle_search(array.words(), query);
  if (report.matches != expected) return "match set differs from oracle";
  const std::size_t k = array.config().mle_bits;
  std::size_t energized = 0;
  for (const auto& trace : report.traces) {
    if (!trace.consistent()) {
      return "inconsistent trace at address " + std::to_string(trace.addr);
    }
    const bool should_energize = array.variant() == Variant::BaselineNor ||
                                 hamming_prefix_match(array.words()[trace.addr], query, k);
    if (trace.ml_precharged != should_energize) {
      return "energization differs from prefix match at address " + std::to_string(trace.addr);
    }
    if (!trace.ml_precharged && trace.transitions.ml_discharges != 0) {
      return "discharge counted on a non-energized match line at address " +
             std::to_string(trace.addr);
    }
    if (trace.ml_precharged) ++energized;
  }
  if (energized != report.energized_count) return "energized_count disagrees with traces";
  return std::nullopt;
}

VerifyResult run_verification(const VerifyOptions& options) {
  VerifyResult result;
  if (options.exhaustive) {
    if (auto c = run_exhaustive(options, result)) {
      result.failure = std::move(c);
      return result;
    }
  }

  const std::size_t trials = options.random_trials;
  const std::size_t shards = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(trials, 1));
  std::vector<std::optional<TrialFailure>> failures(shards);
  const std::size_t chunk = (trials + shards - 1) / std::max<std::size_t>(shards, 1);
  auto shard = [&](std::size_t s) {
    const std::size_t begin = std::min(trials, s * chunk);
    failures[s] = run_trials(options, begin, std::min(trials, begin + chunk));
  };
  if (shards == 1) {
    shard(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t s = 0; s < shards; ++s) threads.emplace_back(shard, s);
    for (auto& t : threads) t.join();
  }
  // Shards are contiguous, so the first failing shard holds the earliest trial.
  for (auto& f : failures) {
    if (f) {
      result.random_trials = f->trial + 1;
      result.failure = std::move(f->example);
      return result;
    }
  }
  result.random_trials = trials;
  return result;
}

}  // namespace smle
