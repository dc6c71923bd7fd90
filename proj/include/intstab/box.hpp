#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "intstab/interval.hpp"

namespace intstab {

/// Interval vector (axis-aligned box).
class Box {
 public:
  Box() = default;
  explicit Box(std::size_t n, const Interval& fill = Interval()) : c_(n, fill) {}
  Box(std::initializer_list<Interval> init) : c_(init) {}
  explicit Box(std::vector<Interval> components) : c_(std::move(components)) {}

  /// [-r, r]^n around the origin.
  static Box cube(std::size_t n, double radius);
  /// Degenerate box at a point.
  static Box point(std::span<const double> x);

  std::size_t size() const noexcept { return c_.size(); }
  bool empty() const noexcept { return c_.empty(); }

  Interval& operator[](std::size_t i) { return c_[i]; }
  const Interval& operator[](std::size_t i) const { return c_[i]; }

  auto begin() { return c_.begin(); }
  auto end() { return c_.end(); }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  std::span<Interval> span() { return c_; }
  std::span<const Interval> span() const { return c_; }

  std::vector<double> midpoint() const;
  bool contains(std::span<const double> x) const;
  bool contains_zero() const;
  bool has_empty_component() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> c_;
};

void require_same_size(std::size_t a, std::size_t b, const char* what);

Box operator+(const Box& a, const Box& b);
Box operator-(const Box& a, const Box& b);
Box scalar_mul(double lambda, const Box& x);

/// max component width.
double width(const Box& x);
/// max component absolute value.
double norm(const Box& x);

bool subset(const Box& a, const Box& b);
bool interior_subset(const Box& a, const Box& b);

Box hull(const Box& a, const Box& b);
/// Componentwise intersection; any empty component makes the result empty.
Box intersect(const Box& a, const Box& b);

std::ostream& operator<<(std::ostream& os, const Box& x);

/// Row-major interval matrix.
class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t rows, std::size_t cols, const Interval& fill = Interval())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  IntervalMatrix(std::size_t rows, std::size_t cols, std::vector<Interval> data);

  static IntervalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Interval& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Interval& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Interval> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Interval> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const Interval> data() const { return data_; }

  friend bool operator==(const IntervalMatrix&, const IntervalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Interval> data_;
};

IntervalMatrix mat_mul(const IntervalMatrix& a, const IntervalMatrix& b);
Box mat_mul(const IntervalMatrix& a, const Box& x);

std::ostream& operator<<(std::ostream& os, const IntervalMatrix& m);

}  // namespace intstab
