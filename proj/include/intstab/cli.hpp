#pragma once

// Command-line front end. The command functions take a resolved RunConfig
// and stream their report, so tests can call them without a process.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "intstab/box.hpp"
#include "intstab/expr.hpp"
#include "intstab/stability.hpp"

namespace intstab::cli {

enum ExitCode { kProven = 0, kUndetermined = 1, kInputError = 2 };

/// Raw key -> value settings, as read from a config file or flags.
using Settings = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment. Unknown keys are an
/// InvalidArgument error.
Settings parse_config(const std::string& text);
Settings load_config(const std::string& path);

/// "[[lo, hi], [lo, hi]]"; bounds are constant expressions ("7/12", "-pi/6").
Box parse_box(const std::string& text);
/// "[c1, c2]" -> thin enclosure of each expression.
Box parse_point(const std::string& text);

struct RunConfig {
  std::string system_name;  // scenario name or expression file
  VectorFunc f;             // the system (cycle: the composed map)
  std::vector<VectorFunc> stages;  // cycle stages, invariance mode
  Mode mode = Mode::equilibrium;
  Box centre;
  Box box;
  Box params;
  StabilityOptions options;
  Disturbance disturbance;
  std::optional<Box> domain;
  std::optional<double> cell_width;
  unsigned threads = 0;
  std::string csv, svg, out;
  std::pair<std::size_t, std::size_t> proj{0, 1};  // zero-based
};

/// Applies scenario defaults and typed parsing. Throws Error on bad input.
RunConfig resolve(const Settings& settings);

int cmd_prove(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_region(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_plot(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: subcommand, flags, config file. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace intstab::cli
