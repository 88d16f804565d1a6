#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "smlecam/cli.hpp"
#include "smlecam/report_io.hpp"

namespace fs = std::filesystem;
using smle::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"smle_cam"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = smle::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("smlecam_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json load(const fs::path& p) { return Json::parse(slurp(p)); }

}  // namespace

TEST_CASE("search: uniform paper geometry energizes about 1/8 of match lines") {
  const auto out = scratch() / "search.json";
  const Run r = run({"search", "--queries", "1000", "--out", out.string()});
  REQUIRE(r.code == 0);
  const Json j = load(out);
  CHECK(j["config"]["num_words"] == 256);
  CHECK(j["config"]["word_bits"] == 144);
  CHECK(j["config"]["mle_bits"] == 3);
  CHECK(j["model"]["upsize_base"] == 2.0);
  CHECK(j["units"].get<std::string>().find("arbitrary units") != std::string::npos);
  const double frac = j["result"]["aggregate"]["mean_energized_fraction"];
  CHECK(std::abs(frac - 0.125) < 0.01);
  CHECK(j["result"]["queries"].size() == 1000);
  CHECK(j["result"]["aggregate"]["precharge_series_depth"] == 5);
}

TEST_CASE("search: planted match rate 1 matches every query") {
  const Run r = run({"search", "--words", "64", "--queries", "200", "--workload", "planted",
                     "--match-rate", "1"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  for (const auto& q : j["result"]["queries"]) CHECK_FALSE(q["matches"].empty());
  CHECK(j["result"]["aggregate"]["queries_with_match"] == 200);
}

TEST_CASE("search: k=1 is a usage error citing the minimum") {
  const Run r = run({"search", "--mle-bits", "1", "--queries", "1"});
  CHECK(r.code == smle::cli::kExitUsage);
  CHECK(r.err.find("at least 2") != std::string::npos);
}

TEST_CASE("flag and I/O errors map to exit codes") {
  CHECK(run({"search", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"search", "--workload", "zipf"}).code == 2);
  CHECK(run({"search", "--variant", "nand"}).code == 2);
  CHECK(run({"search", "--format", "csv"}).code == 2);
  CHECK(run({"search", "--param", "c_leak=1"}).code == 2);
  CHECK(run({"search", "--workers", "0"}).code == 2);
  CHECK(run({"sweep", "--k-values", "2,7"}).code == 2);
  CHECK(run({"search", "--data", (scratch() / "missing.txt").string()}).code == 1);
  CHECK(run({"search", "--queries", "1", "--out", "/nonexistent-dir/r.json"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("search: data and query files") {
  const auto data = scratch() / "data.txt";
  const auto queries = scratch() / "queries.txt";
  {
    std::ofstream d(data);
    d << "# stored\n1010\n0110\n1010\n";
    std::ofstream q(queries);
    q << "1010\n1111\n0110\n";
  }
  const Run r = run({"search", "--width", "4", "--mle-bits", "2", "--data", data.string(),
                     "--query-file", queries.string()});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["config"]["num_words"] == 3);
  CHECK(j["result"]["queries"][0]["matches"] == Json::parse("[0,2]"));
  CHECK(j["result"]["queries"][1]["matches"].empty());
  CHECK(j["result"]["queries"][2]["matches"] == Json::parse("[1]"));

  const auto bad = scratch() / "bad.txt";
  {
    std::ofstream b(bad);
    b << "1010\n\n10\n";
  }
  const Run rb = run({"search", "--width", "4", "--mle-bits", "2", "--data", bad.string()});
  CHECK(rb.code == 2);
  CHECK(rb.err.find("line 3") != std::string::npos);
}

TEST_CASE("sweep: default argmin and subsets") {
  const auto csv = scratch() / "sweep.csv";
  const Run r = run({"sweep", "--queries", "2000", "--out", csv.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("argmin_k=3") != std::string::npos);
  CHECK(r.out.find("arbitrary units") != std::string::npos);
  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "k,energized_fraction,energy_metric,mean_delay");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 5);

  const Run two = run({"sweep", "--queries", "200", "--k-values", "2,3"});
  REQUIRE(two.code == 0);
  CHECK(two.out.rfind("k,energized_fraction,energy_metric,mean_delay\n2,", 0) == 0);
  CHECK(two.out.find("\n3,") != std::string::npos);
  CHECK(two.out.find("\n4,") == std::string::npos);

  const Run flat = run({"sweep", "--queries", "2000", "--param", "upsize_base=1"});
  REQUIRE(flat.code == 0);
  CHECK(flat.out.find("argmin_k=6") != std::string::npos);

  const auto js = scratch() / "sweep.json";
  REQUIRE(run({"sweep", "--queries", "300", "--format", "json", "--out", js.string()}).code == 0);
  const Json j = load(js);
  CHECK(j["rows"].size() == 5);
  CHECK(j["units"].get<std::string>().find("model-calibrated") != std::string::npos);
}

TEST_CASE("sweep: model file") {
  const auto model = scratch() / "model.cfg";
  {
    std::ofstream m(model);
    m << "# flat growth\nupsize_base = 1\n";
  }
  const Run r = run({"sweep", "--queries", "2000", "--model-file", model.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("argmin_k=6") != std::string::npos);
}

TEST_CASE("compare: uniform and adversarial workloads") {
  const Run r = run({"compare", "--queries", "1000"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["comparison"]["matches_identical"] == true);
  const double ratio = j["comparison"]["ml_precharge_event_ratio"];
  CHECK(std::abs(ratio - 0.125) < 0.01);
  CHECK(j["checks"]["ml_precharge_event_ratio"]["tolerance"] == 0.005);

  // Every stored word shares the query prefix: no savings.
  const auto data = scratch() / "shared_prefix.txt";
  {
    std::ofstream d(data);
    for (int i = 0; i < 16; ++i) {
      std::string w = "101";
      for (int b = 0; b < 5; ++b) w += ((i >> b) & 1) ? '1' : '0';
      d << w << "\n";
    }
  }
  const auto queries = scratch() / "shared_q.txt";
  {
    std::ofstream q(queries);
    q << "10100000\n10111111\n10101010\n";
  }
  const Run adv = run({"compare", "--width", "8", "--data", data.string(), "--query-file",
                       queries.string()});
  REQUIRE(adv.code == 0);
  const Json a = Json::parse(adv.out);
  CHECK(a["comparison"]["ml_precharge_event_ratio"] == 1.0);
  CHECK(a["comparison"]["matches_identical"] == true);
}

TEST_CASE("verify: passes and catches an injected fault") {
  const Run ok = run({"verify", "--random-trials", "3000"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);

  const Run bad = run({"verify", "--random-trials", "10", "--inject-fault"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("counterexample") != std::string::npos);
  CHECK(bad.err.find("expected") != std::string::npos);

  const auto out = scratch() / "verify_fault.json";
  const Run noexh = run({"verify", "--no-exhaustive", "--random-trials", "50", "--inject-fault",
                         "--out", out.string()});
  CHECK(noexh.code == 1);
  const Json j = load(out);
  CHECK(j["passed"] == false);
  CHECK(j["counterexample"]["phase"] == "random");
  CHECK(j["counterexample"]["stored"].size() == 256);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  const auto a = scratch() / "det_a.json";
  const auto b = scratch() / "det_b.json";
  REQUIRE(run({"search", "--queries", "300", "--workload", "planted", "--seed", "77", "--out",
               a.string()}).code == 0);
  REQUIRE(run({"search", "--queries", "300", "--workload", "planted", "--seed", "77", "--workers",
               "3", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));

  const auto c = scratch() / "det_c.csv";
  const auto d = scratch() / "det_d.csv";
  REQUIRE(run({"sweep", "--queries", "300", "--out", c.string()}).code == 0);
  REQUIRE(run({"sweep", "--queries", "300", "--workers", "4", "--out", d.string()}).code == 0);
  CHECK(slurp(c) == slurp(d));

  const auto other = scratch() / "det_other.json";
  REQUIRE(run({"search", "--queries", "300", "--workload", "planted", "--seed", "78", "--out",
               other.string()}).code == 0);
  CHECK(slurp(a) != slurp(other));
}
