#include "intstab/paving.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace intstab {

std::size_t PavingResult::proven_count() const {
  std::size_t n = 0;
  for (const ParamCell& c : cells) n += c.status == Verdict::proven_stable;
  return n;
}

namespace {

ParamCell check_cell(const VectorFunc& f, const Box& m, double eps, const StabilityOptions& options) {
  ParamCell cell;
  cell.m_box = m;
  const std::size_t n = f.state_dim();
  try {
    const StabilityReport r = check_stability(f, Box(n), Box::cube(n, eps), options, m);
    cell.status = r.verdict;
    cell.q = r.q;
    cell.alpha = r.alpha;
    cell.cause = r.cause;
    cell.detail = r.detail;
  } catch (const Error& e) {
    cell.cause = e.code() == ErrorCode::division_by_zero_interval ? Cause::singular_jacobian
                 : e.code() == ErrorCode::domain_error           ? Cause::domain_error
                                                                 : Cause::evaluation_error;
    cell.detail = e.what();
  }
  return cell;
}

}  // namespace

PavingResult pave(const VectorFunc& f, const Box& domain, const PavingOptions& options) {
  if (!(options.cell_width > 0.0) || !std::isfinite(options.cell_width)) {
    throw Error(ErrorCode::invalid_domain, "cell width must be positive");
  }
  if (f.param_dim() == 0) throw Error(ErrorCode::invalid_argument, "paving needs a parametrised system");
  require_same_size(domain.size(), f.param_dim(), "paving domain");
  for (const Interval& d : domain) {
    if (d.is_empty() || !(d.hi() > d.lo()) || !std::isfinite(d.lo()) || !std::isfinite(d.hi())) {
      throw Error(ErrorCode::invalid_domain, "every domain side must have a finite positive width");
    }
  }

  PavingResult result;
  result.domain = domain;
  result.cell_width = options.cell_width;
  result.epsilon = options.radius_rule(options.cell_width);
  result.epsilon_rule = options.radius_rule_name;
  if (!(result.epsilon > 0.0) || !std::isfinite(result.epsilon)) {
    throw Error(ErrorCode::invalid_argument, "initial-box radius must be positive");
  }

  std::size_t total = 1;
  for (const Interval& d : domain) {
    const double cells = std::ceil((d.hi() - d.lo()) / options.cell_width - 1e-9);
    result.shape.push_back(cells < 1.0 ? 1 : static_cast<std::size_t>(cells));
    total *= result.shape.back();
  }

  // Cell edges: lo_i = domain.lo + i * w, neighbours share the same double,
  // and the last edge is the domain bound itself.
  auto cell_box = [&](std::size_t index) {
    Box m(domain.size());
    for (std::size_t a = domain.size(); a-- > 0;) {
      const std::size_t i = index % result.shape[a];
      index /= result.shape[a];
      const double lo = domain[a].lo() + static_cast<double>(i) * options.cell_width;
      const double hi = i + 1 == result.shape[a] ? domain[a].hi()
                                                 : domain[a].lo() + static_cast<double>(i + 1) * options.cell_width;
      m[a] = Interval(lo, hi);
    }
    return m;
  };

  result.cells.resize(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      result.cells[i] = check_cell(f, cell_box(i), result.epsilon, options.stability);
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  if (threads > total) threads = static_cast<unsigned>(total);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return result;
}

}  // namespace intstab
