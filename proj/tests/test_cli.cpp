#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ietlab/cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("ietlab_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run(std::initializer_list<std::string> args) {
  return ietlab::run_cli(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("induct writes a trace and a manifest") {
  TempDir dir("induct");
  // aperiodic rational lengths so depth 5 completes
  int rc = run({"induct", "--lengths", "603/1000,397/1000", "--perm", "2,1",
                "--depth", "5", "--out", dir.str()});
  CHECK(rc == 0);
  std::string csv = slurp(dir.path / "trace.csv");
  CHECK(csv.rfind("m,rule,total,p1_b,p2_min_ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv.find("0,A,") != std::string::npos);  // first rule A
  auto manifest = ordered_json::parse(slurp(dir.path / "manifest.json"));
  CHECK(manifest["complete"] == true);
  CHECK(manifest["iet"]["lengths"][0] == "603/1000");
}

TEST_CASE("induct depth zero emits a header-only csv") {
  TempDir dir("induct0");
  int rc = run({"induct", "--lengths", "3/5,2/5", "--perm", "2,1", "--depth", "0", "--out", dir.str()});
  CHECK(rc == 0);
  CHECK(slurp(dir.path / "trace.csv") == "m,rule,total,p1_b,p2_min_ratio\n");
  CHECK(slurp(dir.path / "trace.jsonl").empty());
}

TEST_CASE("induct on a tie reports degeneracy with exit 3") {
  TempDir dir("induct_tie");
  int rc = run({"induct", "--lengths", "1/2,1/2", "--perm", "2,1", "--depth", "3", "--out", dir.str()});
  CHECK(rc == 3);
  auto manifest = ordered_json::parse(slurp(dir.path / "manifest.json"));
  CHECK(manifest["complete"] == false);
  CHECK(manifest["degenerate_at"] == 0);
  CHECK(manifest["steps"] == 0);
}

TEST_CASE("validation errors exit with code 1") {
  TempDir dir("bad");
  CHECK(run({"induct", "--lengths", "1/2,-1/2", "--perm", "2,1", "--out", dir.str()}) == 1);
  CHECK(run({"induct", "--lengths", "1/2,1/2", "--perm", "1,2", "--out", dir.str()}) == 1);
  CHECK(run({"induct", "--lengths", "1/2,1/2", "--out", dir.str()}) == 1);  // missing --perm
  CHECK(run({"scan", "--backend", "su2", "--rep", "spin:1/2", "--out", dir.str()}) == 1);  // d != 1
  CHECK(run({"nonsense"}) == 1);
}

TEST_CASE("verify passes exactly in rational u1 mode and fails under fault injection") {
  TempDir dir("verify");
  int rc = run({"verify", "--random-n", "4", "--backend", "u1", "--seed", "7",
                "--samples", "25", "--depth", "3", "--M", "4000", "--out", dir.str()});
  CHECK(rc == 0);
  auto report = ordered_json::parse(slurp(dir.path / "report.json"));
  CHECK(report["max_base_err"] == 0.0);
  CHECK(report["max_fiber_dist"] == 0.0);
  CHECK(report["consistency_ok"] == true);
  CHECK(report["haar_ok"] == true);

  TempDir dir2("verify_fault");
  int rc2 = run({"verify", "--random-n", "4", "--backend", "u1", "--seed", "7",
                 "--samples", "25", "--depth", "3", "--M", "4000", "--inject-fault", "--out", dir2.str()});
  CHECK(rc2 == 2);
}

TEST_CASE("verify su2 float stays within 1e-9") {
  TempDir dir("verify_su2");
  int rc = run({"verify", "--arith", "float", "--random-n", "4", "--backend", "su2", "--seed", "11",
                "--samples", "25", "--depth", "5", "--M", "4000", "--out", dir.str()});
  CHECK(rc == 0);
  auto report = ordered_json::parse(slurp(dir.path / "report.json"));
  CHECK(report["tolerance"] == 1e-9);
  CHECK(report["max_fiber_dist"].get<double>() <= 1e-9);
}

TEST_CASE("diagnose identity tuple reports an all-zero defect column") {
  TempDir dir("diag_id");
  int rc = run({"diagnose", "--lengths", "5741/10000,4259/10000", "--perm", "2,1",
                "--backend", "su2", "--tuple", "identity", "--depth", "20",
                "--N", "200", "--M", "50", "--out", dir.str()});
  CHECK(rc == 0);
  std::string csv = slurp(dir.path / "trajectory.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    auto comma = line.find(',');
    CHECK(std::stod(line.substr(comma + 1)) <= 1e-12);
  }
  auto report = ordered_json::parse(slurp(dir.path / "report.json"));
  CHECK(report["min_defect"].get<double>() <= 1e-12);
}

TEST_CASE("scan finds the predicted peak for rotation + constant cocycle") {
  TempDir dir("scan_rot");
  // theta = 0.5858 (float approximation of sqrt(2)-1 scale), constant 3/10
  int rc = run({"scan", "--arith", "float", "--lengths", "0.5857864376269049,0.4142135623730951",
                "--perm", "2,1", "--backend", "u1", "--tuple", "3/10;3/10", "--rep", "char:1",
                "--N", "1000", "--A", "2048", "--M", "40", "--out", dir.str()});
  CHECK(rc == 0);
  auto report = ordered_json::parse(slurp(dir.path / "report.json"));
  // predicted: (theta - 0.3) * 2048 = 233.9 -> index 234
  CHECK(report["peak_index"] == 234);
  CHECK(report["peak_value"].get<double>() > 0.9);
}

TEST_CASE("sweep aggregates quantiles over seeds") {
  TempDir dir("sweep");
  int rc = run({"sweep", "--seeds", "4", "--random-n", "4", "--backend", "su2",
                "--depth", "30", "--N", "300", "--M", "40", "--jobs", "2", "--out", dir.str()});
  CHECK(rc == 0);
  auto sweep = ordered_json::parse(slurp(dir.path / "sweep.json"));
  CHECK(sweep["trials"] == 4);
  CHECK(sweep["failed"] == 0);
  CHECK(sweep["per_trial"].size() == 4);
  CHECK(sweep["min_defect_quantiles"].contains("q50"));
}

TEST_CASE("fixed seed reproduces byte-identical outputs for every command") {
  auto files_of = [](const fs::path& dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
  };
  auto run_twice = [&](const std::string& tag, std::vector<std::string> args) {
    TempDir d1(tag + "_1");
    TempDir d2(tag + "_2");
    auto with_out = [&](const std::string& out) {
      std::vector<std::string> full = args;
      full.push_back("--out");
      full.push_back(out);
      return full;
    };
    const int rc1 = ietlab::run_cli(with_out(d1.str()));
    const int rc2 = ietlab::run_cli(with_out(d2.str()));
    CHECK(rc1 == rc2);
    auto f1 = files_of(d1.path);
    auto f2 = files_of(d2.path);
    REQUIRE(f1.size() == f2.size());
    for (std::size_t i = 0; i < f1.size(); ++i) {
      CHECK(f1[i].filename() == f2[i].filename());
      CHECK(slurp(f1[i]) == slurp(f2[i]));
    }
  };

  run_twice("det_induct", {"induct", "--seed", "42", "--random-n", "4", "--depth", "25", "--epsilon", "1/100"});
  run_twice("det_verify", {"verify", "--seed", "42", "--random-n", "3", "--backend", "su2",
                           "--arith", "float", "--samples", "10", "--depth", "2", "--M", "500"});
  run_twice("det_diagnose", {"diagnose", "--seed", "42", "--random-n", "4", "--backend", "su2",
                             "--depth", "15", "--N", "150", "--M", "30"});
  run_twice("det_scan", {"scan", "--seed", "42", "--random-n", "4", "--backend", "u1",
                         "--N", "300", "--A", "128", "--M", "20"});
  run_twice("det_sweep", {"sweep", "--seed", "42", "--seeds", "3", "--random-n", "4", "--backend", "su2",
                          "--depth", "10", "--N", "100", "--M", "20", "--jobs", "3"});
}

TEST_CASE("config file supplies options") {
  TempDir dir("config");
  const fs::path cfg = dir.path / "run.ini";
  {
    std::ofstream f(cfg);
    f << "lengths=\"603/1000,397/1000\"\n";
    f << "perm=\"2,1\"\n";
    f << "[induct]\n";
    f << "depth=4\n";
  }
  int rc = run({"induct", "--config", cfg.string(), "--out", dir.str()});
  CHECK(rc == 0);
  std::string csv = slurp(dir.path / "trace.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows
}
