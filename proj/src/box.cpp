#include "intstab/box.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "intstab/kernels.hpp"

namespace intstab {

Box Box::cube(std::size_t n, double radius) {
  if (!(radius >= 0.0)) throw Error(ErrorCode::invalid_argument, "cube radius must be >= 0");
  return Box(n, Interval(-radius, radius));
}

Box Box::point(std::span<const double> x) {
  Box b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) b[i] = Interval(x[i]);
  return b;
}

std::vector<double> Box::midpoint() const {
  std::vector<double> m(size());
  for (std::size_t i = 0; i < size(); ++i) m[i] = c_[i].mid();
  return m;
}

bool Box::contains(std::span<const double> x) const {
  require_same_size(size(), x.size(), "Box::contains");
  for (std::size_t i = 0; i < size(); ++i) {
    if (!c_[i].contains(x[i])) return false;
  }
  return true;
}

bool Box::contains_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Interval& x) { return x.contains_zero(); });
}

bool Box::has_empty_component() const {
  return std::any_of(c_.begin(), c_.end(), [](const Interval& x) { return x.is_empty(); });
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

Box operator+(const Box& a, const Box& b) {
  require_same_size(a.size(), b.size(), "box +");
  Box out(a.size());
  kernels::add(a.span(), b.span(), out.span());
  return out;
}

Box operator-(const Box& a, const Box& b) {
  require_same_size(a.size(), b.size(), "box -");
  Box out(a.size());
  kernels::sub(a.span(), b.span(), out.span());
  return out;
}

Box scalar_mul(double lambda, const Box& x) {
  Box out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = scalar_mul(lambda, x[i]);
  return out;
}

double width(const Box& x) {
  double w = 0.0;
  for (const Interval& c : x) w = std::max(w, width(c));
  return w;
}

double norm(const Box& x) {
  double n = 0.0;
  for (const Interval& c : x) n = std::max(n, abs(c));
  return n;
}

bool subset(const Box& a, const Box& b) {
  require_same_size(a.size(), b.size(), "subset");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!subset(a[i], b[i])) return false;
  }
  return true;
}

bool interior_subset(const Box& a, const Box& b) {
  require_same_size(a.size(), b.size(), "interior_subset");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!interior_subset(a[i], b[i])) return false;
  }
  return true;
}

Box hull(const Box& a, const Box& b) {
  require_same_size(a.size(), b.size(), "hull");
  Box out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = hull(a[i], b[i]);
  return out;
}

Box intersect(const Box& a, const Box& b) {
  require_same_size(a.size(), b.size(), "intersect");
  Box out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = intersect(a[i], b[i]);
    if (out[i].is_empty()) return Box(a.size(), Interval::empty());
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Box& x) {
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  return os << ')';
}

IntervalMatrix::IntervalMatrix(std::size_t rows, std::size_t cols, std::vector<Interval> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require_same_size(data_.size(), rows * cols, "IntervalMatrix data");
}

IntervalMatrix IntervalMatrix::identity(std::size_t n) {
  IntervalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Interval(1.0);
  return m;
}

IntervalMatrix mat_mul(const IntervalMatrix& a, const IntervalMatrix& b) {
  require_same_size(a.cols(), b.rows(), "mat_mul");
  IntervalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) kernels::scale_add(a(i, l), b.row(l), c.row(i));
  }
  return c;
}

Box mat_mul(const IntervalMatrix& a, const Box& x) {
  require_same_size(a.cols(), x.size(), "mat_mul");
  Box y(a.rows());
  std::vector<Interval> products(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    kernels::mul(a.row(i), x.span(), products);
    Interval acc;
    for (const Interval& p : products) acc = acc + p;
    y[i] = acc;
  }
  return y;
}

std::ostream& operator<<(std::ostream& os, const IntervalMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << ']';
}

}  // namespace intstab
