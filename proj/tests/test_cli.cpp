// Runs the command-line tool end to end on temporary files.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "tomoci/counts_io.hpp"
#include "tomoci/gamma.hpp"

using namespace tomoci;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tomoci_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

// Exit status of the tool run with `args`; stderr goes to `err` if given.
int run(const std::string& args, const std::string& err = "/dev/null") {
  const std::string cmd = std::string(TOMOCI_CLI_PATH) + " " + args + " 2>" + err;
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

json load(const std::string& path) { return json::parse(read_text_file(path)); }

}  // namespace

TEST_CASE("simulate, estimate and ci for GHZ-3") {
  TempDir dir;
  const std::string counts = dir / "ghz.json";
  REQUIRE(run("simulate --kind qst --state ghz3 --readout mub --shots 10000 --seed 7 --out " + counts) == 0);
  const CountsFile f = parse_counts(counts);
  CHECK(f.qubits == 3);
  CHECK(f.blocks.size() == 27);

  REQUIRE(run("estimate --counts " + counts + " --out " + (dir / "est.json")) == 0);
  const json est = load(dir / "est.json");
  CHECK(est["estimate"]["rows"] == 8);
  CHECK(std::abs(est["trace"].get<double>() - 1.0) < 1e-12);

  REQUIRE(run("ci --counts " + counts + " --level 0.5,0.95 --out " + (dir / "ci.json")) == 0);
  const json ci = load(dir / "ci.json");
  REQUIRE(ci["regions"].size() == 2);
  const GammaParams g{ci["moments"]["mean"].get<double>(), ci["moments"]["variance"].get<double>()};
  const double delta = ci["regions"][1]["radius"].get<double>();
  CHECK(std::abs(gamma_cdf(g, 2 * delta * delta / 8) - 0.95) < 1e-9);
  CHECK(ci["regions"][0]["radius"].get<double>() < delta);

  REQUIRE(run("ci --counts " + counts + " --radius 0 --out " + (dir / "ci0.json")) == 0);
  CHECK(load(dir / "ci0.json")["regions"][0]["level"].get<double>() == 0.0);

  // same seed, same bytes
  REQUIRE(run("simulate --kind qst --state ghz3 --shots 10000 --seed 7 --out " + (dir / "again.json")) == 0);
  CHECK(read_text_file(counts) == read_text_file(dir / "again.json"));
}

TEST_CASE("affine-ci for the identity channel") {
  TempDir dir;
  const std::string counts = dir / "id.json";
  REQUIRE(run("simulate --kind qpt --channel identity1 --shots 8192 --seed 1 --out " + counts) == 0);
  REQUIRE(run("affine-ci --counts " + counts + " --functional fidelity:identity1 --level 0.95 --clamp --out " +
              (dir / "a.json")) == 0);
  const json a = load(dir / "a.json");
  const double lo = a["interval"]["lo"].get<double>(), hi = a["interval"]["hi"].get<double>();
  CHECK(lo <= 1.0);
  CHECK(hi == 1.0);
  CHECK(hi - lo <= 0.1);
}

TEST_CASE("verify-coverage for |0> at 0.9") {
  TempDir dir;
  REQUIRE(run("verify-coverage --subject qubit0 --levels 0.9 --shots 10000 --reps 2000 --seed 3 --out " +
              (dir / "cov.csv")) == 0);
  std::istringstream in(read_text_file(dir / "cov.csv"));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::vector<std::string> cells;
  std::istringstream rs(row);
  for (std::string c; std::getline(rs, c, ',');) cells.push_back(c);
  REQUIRE(cells.size() == 9);
  const double f_in = std::stod(cells[5]);
  CHECK(std::abs(f_in - 0.9) <= 0.03);
}

TEST_CASE("mc-compare columns are monotone") {
  TempDir dir;
  const std::string counts = dir / "b.json";
  REQUIRE(run("simulate --kind qst --state bell2 --shots 5000 --seed 2 --out " + counts) == 0);
  REQUIRE(run("mc-compare --counts " + counts + " --samples 400 --points 41 --out " + (dir / "mc.csv")) == 0);
  std::istringstream in(read_text_file(dir / "mc.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "delta,gamma_cdf,mc_cdf");
  double pg = -1, pm = -1;
  int rows = 0;
  while (std::getline(in, line)) {
    double d, g, m;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &d, &g, &m) == 3);
    CHECK(g >= pg);
    CHECK(m >= pm);
    pg = g;
    pm = m;
    ++rows;
  }
  CHECK(rows == 41);
}

TEST_CASE("import of a generic export") {
  TempDir dir;
  write_text_file(dir / "gen.json",
                  R"({"qubits": 1, "circuits": [
                       {"basis": "x", "counts": {"0": 6, "1": 4}},
                       {"basis": "y", "counts": {"0x1": 10}},
                       {"basis": "z", "counts": {"0": 5, "1": 5}}]})");
  REQUIRE(run("import --from generic-counts --in " + (dir / "gen.json") + " --out " + (dir / "c.json")) == 0);
  CHECK(parse_counts(dir / "c.json").shots_per_block == 10);
  CHECK(run("estimate --counts " + (dir / "c.json") + " --out " + (dir / "e.json")) == 0);
}

TEST_CASE("exit codes and structured errors") {
  TempDir dir;
  write_text_file(dir / "bad.json", R"({"format_version": "1", "kind": "qst", "qubits": 1, "readout": "mub",
    "inputs": "none", "shots_per_block": 10, "blocks": [
    {"basis": "x", "counts": {"0": 5, "1": 5}},
    {"basis": "y", "counts": {"0": 4, "1": 5}},
    {"basis": "z", "counts": {"0": 10}}]})");
  CHECK(run("estimate --counts " + (dir / "bad.json"), dir / "err.txt") == 1);
  const json err = json::parse(read_text_file(dir / "err.txt"));
  CHECK(err["error"] == "schema");
  CHECK(err["path"] == "blocks[1].counts");

  CHECK(run("estimate --counts " + (dir / "missing.json")) == 1);
  CHECK(run("simulate --state nosuchstate") == 1);
  CHECK(run("ci --counts " + (dir / "bad.json") + " --level 1.5") == 1);

  // every block concentrated: moments vanish
  write_text_file(dir / "point.json", R"({"format_version": "1", "kind": "qst", "qubits": 1, "readout": "mub",
    "inputs": "none", "shots_per_block": 10, "blocks": [
    {"basis": "x", "counts": {"0": 10}},
    {"basis": "y", "counts": {"0": 10}},
    {"basis": "z", "counts": {"0": 10}}]})");
  CHECK(run("estimate --counts " + (dir / "point.json")) == 0);
  CHECK(run("ci --counts " + (dir / "point.json") + " --level 0.9", dir / "err2.txt") == 2);
  CHECK(json::parse(read_text_file(dir / "err2.txt"))["error"] == "degenerate-data");
}
