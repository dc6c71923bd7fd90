#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "intstab/cli.hpp"
#include "intstab/parser.hpp"

using namespace intstab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "intstab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("intstab_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("config and box parsing") {
  const cli::Settings s = cli::parse_config("# comment\nscenario = logistic   # trailing\n\n  N=4\nbox = [[0.5, 0.6]]\n");
  CHECK(s.at("scenario") == "logistic");
  CHECK(s.at("N") == "4");
  CHECK(s.at("box") == "[[0.5, 0.6]]");
  CHECK_THROWS_AS(cli::resolve(cli::parse_config("scenario = logistic\ncolour = blue\n")), Error);
  CHECK_THROWS_AS(cli::parse_config("no equals sign here\n"), Error);

  const Box b = cli::parse_box("[[0.577, 0.585], [-pi/6, 1]]");
  REQUIRE(b.size() == 2);
  CHECK(b[0].lo() <= 0.577);
  CHECK(b[0].hi() >= 0.585);
  CHECK(b[1].lo() <= -0.5235987755982988);
  CHECK_THROWS_AS(cli::parse_box("[[1, 0]]"), Error);
  CHECK_THROWS_AS(cli::parse_box("[0, 1]"), Error);
  CHECK_THROWS_AS(cli::parse_box("[[0, 1]"), Error);

  const Box c = cli::parse_point("[7/12, 0]");
  REQUIRE(c.size() == 2);
  CHECK(c[0] == parse_constant("7/12"));
  CHECK(c[1] == Interval(0));
}

TEST_CASE("scenario defaults") {
  const cli::RunConfig l = cli::resolve({{"scenario", "logistic"}});
  CHECK(subset(Box{Interval(0.577, 0.585)}, l.box));  // decimal bounds are enclosed outward
  CHECK(width(l.box) < 0.0080001);
  CHECK(l.options.max_iterations == 10);
  const cli::RunConfig r = cli::resolve({{"scenario", "rot3d"}, {"N", "4"}});
  CHECK(r.box == Box::cube(3, 0.004));
  CHECK(r.options.max_iterations == 4);
  const cli::RunConfig c = cli::resolve({{"scenario", "cycle"}});
  CHECK(c.mode == Mode::invariance);
  CHECK(c.stages.size() == 4);
  CHECK(c.disturbance.drift.contains(0.05));
  CHECK_THROWS_AS(cli::resolve({{"scenario", "nope"}}), Error);
  CHECK_THROWS_AS(cli::resolve({}), Error);
  CHECK_THROWS_AS(cli::resolve({{"scenario", "rot3d"}, {"box", "[[0, 1]]"}}), Error);
  CHECK_THROWS_AS(cli::resolve({{"scenario", "rot3d"}, {"N", "0"}}), Error);
  CHECK_THROWS_AS(cli::resolve({{"scenario", "rot3d"}, {"mode", "sideways"}}), Error);
}

TEST_CASE("prove") {
  const Result l = run_cli({"prove", "--scenario", "logistic"});
  CHECK(l.code == cli::kProven);
  CHECK(l.out.find("q: 2\n") != std::string::npos);
  CHECK(l.out.find("verdict: ProvenStable") != std::string::npos);
  CHECK(l.out.find("beta: ") != std::string::npos);

  const Result r = run_cli({"prove", "--scenario", "rot3d", "--eps", "0.004"});
  CHECK(r.code == cli::kProven);
  CHECK(r.out.find("q: 3\n") != std::string::npos);

  const Result c = run_cli({"prove", "--scenario", "cycle"});
  CHECK(c.code == cli::kProven);
  CHECK(c.out.find("q: 1\n") != std::string::npos);

  const Result u = run_cli({"prove", "--scenario", "rot3d", "-N", "2"});
  CHECK(u.code == cli::kUndetermined);
  CHECK(u.out.find("Undetermined") != std::string::npos);
  CHECK(u.out.find("certificate") == std::string::npos);
  CHECK(u.out.find("ProvenStable") == std::string::npos);

  const Result d = run_cli({"prove", "--scenario", "cycle", "--drift", "10"});
  CHECK(d.code == cli::kUndetermined);
}

TEST_CASE("expression files") {
  TempDir dir;
  const Result bad = run_cli({"prove", "--expr", dir.file("bad.txt", "2*x1 +"), "--box", "[[-1, 1]]"});
  CHECK(bad.code == cli::kInputError);
  CHECK_FALSE(bad.err.empty());

  const Result grow = run_cli({"prove", "--expr", dir.file("grow.txt", "2*x1"), "--box", "[[-1, 1]]"});
  CHECK(grow.code == cli::kUndetermined);

  const Result half =
      run_cli({"prove", "--expr", dir.file("half.txt", "0.5*x1 + 0.1*sin(x2); 0.25*x2"), "--eps", "0.1"});
  CHECK(half.code == cli::kProven);

  const Result missing = run_cli({"prove", "--expr", dir / "does-not-exist.txt", "--eps", "1"});
  CHECK(missing.code == cli::kInputError);

  const Result both = run_cli({"prove", "--expr", dir / "half.txt", "--scenario", "rot3d"});
  CHECK(both.code == cli::kInputError);
}

TEST_CASE("config files and flag overrides") {
  TempDir dir;
  const std::string cfg = dir.file("r.cfg", "scenario = rot3d\neps = 0.004\nN = 2\n");
  CHECK(run_cli({"prove", "--config", cfg}).code == cli::kUndetermined);
  CHECK(run_cli({"prove", "--config", cfg, "-N", "10"}).code == cli::kProven);
  const std::string bad = dir.file("bad.cfg", "scenario = rot3d\nflavour = mint\n");
  CHECK(run_cli({"prove", "--config", bad}).code == cli::kInputError);
  CHECK(run_cli({"prove", "--config", dir / "none.cfg"}).code == cli::kInputError);
}

TEST_CASE("region") {
  TempDir dir;
  const Result r = run_cli({"region", "--scenario", "localisation", "--csv", dir / "cells.csv", "--svg", dir / "cells.svg"});
  CHECK(r.code == 0);
  CHECK(count_lines(slurp(dir / "cells.csv")) == 401);
  const std::string svg = slurp(dir / "cells.svg");
  CHECK(svg.find("#2ca02c") != std::string::npos);

  const Result wide = run_cli({"region", "--scenario", "localisation", "--domain", "[[-0.525, 0.525], [-0.5, 0.5]]",
                               "--svg", dir / "wide.svg"});
  CHECK(wide.code == 0);
  CHECK(slurp(dir / "wide.svg").find("#d62728") != std::string::npos);

  CHECK(run_cli({"region", "--scenario", "localisation", "--cell-width", "0"}).code == cli::kInputError);
  CHECK(run_cli({"region", "--scenario", "logistic", "--domain", "[[0, 1]]"}).code == cli::kInputError);
  // no proven cell at all
  CHECK(run_cli({"region", "--scenario", "localisation", "--domain", "[[-0.01, 0.01], [-0.01, 0.01]]", "--cell-width",
                 "0.02"})
            .code == cli::kUndetermined);
}

TEST_CASE("trace and plot") {
  TempDir dir;
  const Result t = run_cli({"trace", "--scenario", "logistic"});
  CHECK(t.code == 0);
  CHECK(count_lines(t.out) == 4);  // header + k = 0, 1, 2
  CHECK(t.out.rfind("k,z1_lo,z1_hi,fc1_lo,fc1_hi\n", 0) == 0);

  const Result p = run_cli({"plot", "--scenario", "cycle", "--out", dir / "cycle.svg"});
  CHECK(p.code == 0);
  CHECK(slurp(dir / "cycle.svg").rfind("<svg", 0) == 0);

  const Result pr = run_cli({"plot", "--scenario", "rot3d", "--proj", "1,3"});
  CHECK(pr.code == 0);
  CHECK(pr.out.rfind("<svg", 0) == 0);
  CHECK(run_cli({"plot", "--scenario", "rot3d", "--proj", "1,4"}).code == cli::kInputError);
  CHECK(run_cli({"plot", "--scenario", "rot3d", "--proj", "2,2"}).code == cli::kInputError);

  CHECK(run_cli({"trace", "--scenario", "logistic", "--out", dir / "missing/x.csv"}).code == cli::kInputError);
}

TEST_CASE("outputs are byte-deterministic") {
  TempDir dir;
  for (int i = 0; i < 2; ++i) {
    const std::string s = std::to_string(i);
    REQUIRE(run_cli({"trace", "--scenario", "rot3d", "--out", dir / ("t" + s + ".csv")}).code == 0);
    REQUIRE(run_cli({"plot", "--scenario", "cycle", "--out", dir / ("p" + s + ".svg")}).code == 0);
    REQUIRE(run_cli({"region", "--scenario", "localisation", "--csv", dir / ("r" + s + ".csv"), "--svg",
                     dir / ("r" + s + ".svg")})
                .code == 0);
    REQUIRE(run_cli({"prove", "--scenario", "logistic", "--out", dir / ("c" + s + ".txt")}).code == 0);
  }
  for (const char* stem : {"t", "p", "r", "c"}) {
    for (const char* ext : {".csv", ".svg", ".txt"}) {
      const std::string a = dir / (std::string(stem) + "0" + ext), b = dir / (std::string(stem) + "1" + ext);
      if (fs::exists(a)) CHECK(slurp(a) == slurp(b));
    }
  }
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == cli::kInputError);
  CHECK(run_cli({"frobnicate"}).code == cli::kInputError);
  CHECK(run_cli({"prove", "--bogus"}).code == cli::kInputError);
  CHECK(run_cli({"prove", "--help"}).code == 0);
}
