#include "intstab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "intstab/eval.hpp"
#include "intstab/export.hpp"
#include "intstab/paving.hpp"
#include "intstab/parser.hpp"
#include "intstab/scenarios.hpp"

namespace intstab::cli {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "scenario", "expr",   "centre", "box", "eps", "params",  "N",       "mode",  "drift",
      "speed",    "domain", "cell-width", "csv", "svg", "out", "proj", "threads", "residual-tolerance"};
  return keys;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Splits "[a, b, [c, d]]" into its top-level elements.
std::vector<std::string> split_list(const std::string& text) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw Error(ErrorCode::invalid_argument, "expected a bracketed list, got '" + text + "'");
  }
  std::vector<std::string> items;
  int depth = 0;
  std::string cur;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const char c = t[i];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (depth < 0) throw Error(ErrorCode::invalid_argument, "unbalanced brackets in '" + text + "'");
    if (c == ',' && depth == 0) {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw Error(ErrorCode::invalid_argument, "unbalanced brackets in '" + text + "'");
  if (!trim(cur).empty() || !items.empty()) items.push_back(trim(cur));
  for (const std::string& item : items) {
    if (item.empty()) throw Error(ErrorCode::invalid_argument, "empty list element in '" + text + "'");
  }
  return items;
}

double parse_positive(const std::string& key, const std::string& text) {
  const Interval v = parse_constant(text);
  if (!(v.lo() > 0.0) || !std::isfinite(v.hi())) {
    throw Error(key == "cell-width" ? ErrorCode::invalid_domain : ErrorCode::invalid_argument,
                key + " must be a positive number");
  }
  return v.mid();
}

std::size_t parse_count(const std::string& key, const std::string& text, std::size_t min) {
  std::size_t pos = 0;
  long long v = -1;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || v < static_cast<long long>(min)) {
    throw Error(ErrorCode::invalid_argument, key + " must be an integer >= " + std::to_string(min));
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> numeric_fixed_point(const VectorFunc& f, std::vector<double> x) {
  for (int it = 0; it < 10000; ++it) {
    const std::vector<double> y = eval_point(f, x);
    double step = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) step = std::max(step, std::abs(y[i] - x[i]));
    x = y;
    if (step <= 1e-13) break;
  }
  return x;
}

}  // namespace

Settings parse_config(const std::string& text) {
  Settings s;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::invalid_argument, "config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (!known_keys().count(key)) {
      throw Error(ErrorCode::invalid_argument, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    s[key] = trim(line.substr(eq + 1));
  }
  return s;
}

Settings load_config(const std::string& path) { return parse_config(read_file(path)); }

Box parse_box(const std::string& text) {
  Box b;
  std::vector<Interval> comps;
  for (const std::string& item : split_list(text)) {
    const std::vector<std::string> bounds = split_list(item);
    if (bounds.size() != 2) throw Error(ErrorCode::invalid_argument, "box component needs [lo, hi]: " + item);
    const double lo = parse_constant(bounds[0]).lo();
    const double hi = parse_constant(bounds[1]).hi();
    if (!(lo <= hi)) throw Error(ErrorCode::invalid_argument, "box component with lo > hi: " + item);
    comps.emplace_back(lo, hi);
  }
  return Box(std::move(comps));
}

Box parse_point(const std::string& text) {
  std::vector<Interval> comps;
  for (const std::string& item : split_list(text)) comps.push_back(parse_constant(item));
  return Box(std::move(comps));
}

RunConfig resolve(const Settings& input) {
  for (const auto& [k, v] : input) {
    if (!known_keys().count(k)) throw Error(ErrorCode::invalid_argument, "unknown setting '" + k + "'");
  }
  Settings s = input;
  auto has = [&](const char* k) { return s.count(k) && !s.at(k).empty(); };
  auto fallback = [&](const char* k, const char* v) {
    if (!has(k)) s[k] = v;
  };

  RunConfig c;
  if (has("scenario") == has("expr")) {
    throw Error(ErrorCode::invalid_argument, "give exactly one of --scenario or --expr");
  }

  bool numeric_centre = false;
  if (has("scenario")) {
    const std::string name = s["scenario"];
    c.system_name = name;
    if (name == "logistic") {
      c.f = scenarios::logistic();
      fallback("centre", "[7/12]");
      fallback("box", "[[0.577, 0.585]]");
    } else if (name == "rot3d") {
      c.f = scenarios::rot3d();
      fallback("centre", "[0, 0, 0]");
      fallback("eps", "0.004");
    } else if (name == "cycle") {
      fallback("speed", "1");
      fallback("drift", "0.05");
      fallback("mode", "invariance");
      fallback("box", "[[1.5, 6.5], [9.5, 15.5]]");
      c.stages = scenarios::cycle_stages(s["speed"]);
      c.f = scenarios::cycle(s["speed"]);
      numeric_centre = !has("centre");
    } else if (name == "localisation") {
      c.f = scenarios::newton_localisation();
      fallback("centre", "[0, 0]");
      fallback("params", "[[1, 1], [0, 0]]");
      fallback("eps", "sqrt(0.05)");
      fallback("domain", "[[0.5, 1.5], [-0.5, 0.5]]");
      fallback("cell-width", "0.05");
    } else {
      throw Error(ErrorCode::invalid_argument,
                  "unknown scenario '" + name + "' (logistic, rot3d, cycle, localisation)");
    }
  } else {
    c.system_name = s["expr"];
    std::optional<std::size_t> p;
    if (has("params")) p = parse_box(s["params"]).size();
    c.f = parse(read_file(s["expr"]), ParseOptions{std::nullopt, p});
    c.stages = {c.f};
  }

  const std::size_t n = c.f.state_dim();
  if (c.f.output_dim() != n) throw Error(ErrorCode::dimension_mismatch, "the system must map R^n to R^n");

  c.params = has("params") ? parse_box(s["params"]) : Box();
  if (c.params.size() != c.f.param_dim() && !(has("domain") && c.params.empty())) {
    require_same_size(c.params.size(), c.f.param_dim(), "parameter box (--params)");
  }

  if (has("centre")) {
    c.centre = parse_point(s["centre"]);
  } else if (numeric_centre && has("box")) {
    c.centre = Box::point(numeric_fixed_point(c.f, parse_box(s["box"]).midpoint()));
  } else {
    c.centre = Box(n);
  }
  require_same_size(c.centre.size(), n, "centre");

  if (has("box")) {
    c.box = parse_box(s["box"]);
  } else if (has("eps")) {
    const double e = parse_positive("eps", s["eps"]);
    c.box = c.centre + Box::cube(n, e);
  } else {
    throw Error(ErrorCode::invalid_argument, "no initial box (--box or --eps)");
  }
  require_same_size(c.box.size(), n, "initial box");

  if (has("N")) c.options.max_iterations = parse_count("N", s["N"], 1);
  if (has("residual-tolerance")) c.options.residual_tolerance = parse_positive("residual-tolerance", s["residual-tolerance"]);

  if (has("mode")) {
    if (s["mode"] == "equilibrium") {
      c.mode = Mode::equilibrium;
    } else if (s["mode"] == "invariance") {
      c.mode = Mode::invariance;
      if (c.stages.empty()) c.stages = {c.f};
    } else {
      throw Error(ErrorCode::invalid_argument, "mode must be equilibrium or invariance");
    }
  }
  if (has("drift")) {
    c.disturbance.drift = parse_constant(s["drift"]);
    if (c.disturbance.drift.lo() < 0.0) throw Error(ErrorCode::invalid_argument, "drift must be >= 0");
  }
  if (has("speed")) {
    c.disturbance.speed = parse_constant(s["speed"]);
    if (!(c.disturbance.speed.lo() > 0.0)) throw Error(ErrorCode::invalid_argument, "speed must be > 0");
  }
  if (has("domain")) c.domain = parse_box(s["domain"]);
  if (has("cell-width")) c.cell_width = parse_positive("cell-width", s["cell-width"]);
  if (has("threads")) c.threads = static_cast<unsigned>(parse_count("threads", s["threads"], 0));

  if (has("proj")) {
    const std::string t = s["proj"];
    const auto comma = t.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::bad_projection, "--proj expects i,j");
    const std::size_t i = parse_count("proj", trim(t.substr(0, comma)), 1);
    const std::size_t j = parse_count("proj", trim(t.substr(comma + 1)), 1);
    c.proj = {i - 1, j - 1};
  }
  c.csv = s.count("csv") ? s["csv"] : "";
  c.svg = s.count("svg") ? s["svg"] : "";
  c.out = s.count("out") ? s["out"] : "";
  return c;
}

// ---------------------------------------------------------------------------

namespace {

StabilityReport run_check(const RunConfig& c) {
  if (c.mode == Mode::invariance) return check_invariance(c.stages, c.box, c.disturbance, c.options);
  return check_stability(c.f, c.centre, c.box, c.options, c.params);
}

void print_report(const RunConfig& c, const StabilityReport& r, std::ostream& out) {
  out << "system: " << c.system_name << '\n'
      << "mode: " << to_string(r.mode) << '\n'
      << "verdict: " << to_string(r.verdict) << '\n'
      << "initial box: " << r.initial_box << '\n'
      << "centre: " << r.xbar << '\n';
  if (!r.proven()) {
    out << "cause: " << to_string(r.cause) << '\n';
    if (!r.detail.empty()) out << "detail: " << r.detail << '\n';
    out << "steps run: " << (r.trace.steps.empty() ? 0 : r.trace.steps.size() - 1) << '\n';
    return;
  }
  char buf[64];
  out << "q: " << r.q << '\n';
  if (std::isnan(r.alpha)) {
    out << "alpha: n/a\n";
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", r.alpha);
    out << "alpha: " << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", r.beta);
    out << "beta: " << buf << '\n';
  }
  out << "delta box (centred): " << r.delta_box << '\n';
  out << "image: " << r.trace.steps.back().fc + r.xbar << '\n';
  if (r.mode == Mode::equilibrium) {
    out << "certificate: " << exponential_certificate(r).description << '\n';
  } else {
    out << "certificate: every trajectory of the disturbed cycle starting in the initial box stays in it\n";
  }
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

}  // namespace

int cmd_prove(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const StabilityReport r = run_check(c);
    print_report(c, r, out);
    if (!c.csv.empty()) write_file(c.csv, trace_csv(r.trace));
    if (!c.out.empty()) {
      std::ostringstream text;
      print_report(c, r, text);
      write_file(c.out, text.str());
    }
    return r.proven() ? kProven : kUndetermined;
  });
}

int cmd_region(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!c.domain) throw Error(ErrorCode::invalid_domain, "region needs --domain");
    if (!c.cell_width) throw Error(ErrorCode::invalid_domain, "region needs --cell-width");
    PavingOptions o;
    o.cell_width = *c.cell_width;
    o.stability = c.options;
    o.threads = c.threads;
    const PavingResult res = pave(c.f, *c.domain, o);
    std::map<std::string, std::size_t> causes;
    for (const ParamCell& cell : res.cells) {
      if (cell.status != Verdict::proven_stable) ++causes[to_string(cell.cause)];
    }
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.1f",
                  100.0 * static_cast<double>(res.proven_count()) / static_cast<double>(res.cells.size()));
    out << "system: " << c.system_name << '\n'
        << "domain: " << res.domain << '\n'
        << "cell width: " << res.cell_width << '\n'
        << "epsilon: " << res.epsilon << " (" << res.epsilon_rule << ")\n"
        << "cells: " << res.cells.size() << '\n'
        << "proven: " << res.proven_count() << " (" << pct << "%)\n";
    for (const auto& [cause, count] : causes) out << "undetermined (" << cause << "): " << count << '\n';
    if (!c.csv.empty()) write_file(c.csv, paving_csv(res));
    if (!c.svg.empty()) write_file(c.svg, paving_svg(res));
    return res.proven_count() > 0 ? kProven : kUndetermined;
  });
}

int cmd_trace(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const StabilityReport r = run_check(c);
    emit(c.csv.empty() ? c.out : c.csv, trace_csv(r.trace), out);
    return 0;
  });
}

int cmd_plot(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const StabilityReport r = run_check(c);
    emit(c.svg.empty() ? c.out : c.svg, trace_svg(r, c.proj), out);
    return 0;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interval centred-form stability prover"};
  app.require_subcommand(1);

  struct Flag {
    const char* key;
    const char* names;
    const char* help;
  };
  static const Flag flags[] = {
      {"scenario", "--scenario", "built-in system: logistic, rot3d, cycle, localisation"},
      {"expr", "--expr", "file with the system as expressions (see docs/grammar.md)"},
      {"centre", "--centre", "centre point, e.g. [7/12]"},
      {"box", "--box", "initial box, e.g. [[0.577,0.585]]"},
      {"eps", "--eps", "initial box = centre + [-eps,eps]^n (when --box is absent)"},
      {"params", "--params", "parameter box for parametrised systems"},
      {"N", "-N,--N", "maximum number of iterations (default 10)"},
      {"mode", "--mode", "equilibrium or invariance"},
      {"drift", "--drift", "invariance: speed at which the position gets lost"},
      {"speed", "--speed", "invariance: cruising speed"},
      {"domain", "--domain", "region: parameter domain"},
      {"cell-width", "--cell-width", "region: parameter cell width"},
      {"csv", "--csv", "CSV output file"},
      {"svg", "--svg", "SVG output file"},
      {"out", "--out", "output file (report for prove, CSV for trace, SVG for plot)"},
      {"proj", "--proj", "plot: coordinate pair, 1-based, e.g. 1,3"},
      {"threads", "--threads", "region: worker threads (0 = all cores)"},
      {"residual-tolerance", "--residual-tolerance", "equilibrium: relative tolerance on |f(centre)-centre|"},
  };

  std::map<std::string, std::string> values;
  std::string config_path;
  struct Sub {
    CLI::App* app;
    int (*cmd)(const RunConfig&, std::ostream&, std::ostream&);
    std::vector<std::pair<std::string, CLI::Option*>> options;
  };
  std::vector<Sub> subs;
  for (auto [name, help, cmd] : {
           std::tuple{"prove", "run the stability check and print the certificate", &cmd_prove},
           std::tuple{"region", "pave a parameter domain", &cmd_region},
           std::tuple{"trace", "write the centred-form trace as CSV", &cmd_trace},
           std::tuple{"plot", "draw the nested boxes as SVG", &cmd_plot},
       }) {
    Sub sub{app.add_subcommand(name, help), cmd, {}};
    sub.app->add_option("--config", config_path, "key = value configuration file");
    for (const Flag& f : flags) sub.options.emplace_back(f.key, sub.app->add_option(f.names, values[f.key], f.help));
    subs.push_back(std::move(sub));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  for (const Sub& sub : subs) {
    if (!sub.app->parsed()) continue;
    return guarded(err, [&] {
      Settings settings = config_path.empty() ? Settings{} : load_config(config_path);
      for (const auto& [key, opt] : sub.options) {
        if (opt->count() > 0) settings[key] = values[key];
      }
      // An explicit system on the command line replaces the file's.
      if (settings.count("scenario") && sub.app->get_option("--expr")->count() > 0) settings.erase("scenario");
      if (settings.count("expr") && sub.app->get_option("--scenario")->count() > 0) settings.erase("expr");
      const RunConfig config = resolve(settings);
      return sub.cmd(config, out, err);
    });
  }
  return kInputError;
}

}  // namespace intstab::cli
