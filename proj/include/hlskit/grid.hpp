#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "hlskit/exponent.hpp"

namespace hlskit {

enum class Execution { Serial, Parallel };

/// Uniform midpoint grid on [lo, hi] with `cells` cells.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t cells = 1;

  double width() const noexcept { return (hi - lo) / static_cast<double>(cells); }
  double midpoint(std::size_t i) const noexcept {
    return lo + (static_cast<double>(i) + 0.5) * width();
  }
  void validate() const;
};

/// Same grid shifted right by half a cell.
Axis staggered(const Axis& axis);
std::vector<Axis> staggered(const std::vector<Axis>& axes);

/// Grid of x -> a x (a > 0): same cell count, endpoints scaled.
Axis dilated(const Axis& axis, double a);
std::vector<Axis> dilated(const std::vector<Axis>& axes, double a);

/// Nonnegative samples of a function of m scalar variables on a product of
/// midpoint grids. Storage is dense with x_1 varying fastest, i.e. row-major
/// over the index tuple (i_m, ..., i_1).
class GridFunction {
 public:
  /// Throws input_error on a bad axis, a size mismatch, or a negative or
  /// non-finite value.
  GridFunction(std::vector<Axis> axes, std::vector<double> values);

  const std::vector<Axis>& axes() const noexcept { return axes_; }
  std::size_t rank() const noexcept { return axes_.size(); }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  std::vector<std::size_t> shape() const;
  double at(std::span<const std::size_t> index) const;

  /// c f for c >= 0.
  GridFunction scaled(double c) const;

  /// The samples of f(. / a): identical values on the dilated axes.
  GridFunction dilated(double a) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> values_;
};

/// Iterated midpoint-rule norm, x_1 innermost: a finite p_i reduces each
/// slice to (sum |v|^p_i h_i)^(1/p_i), p_i = inf to the slice maximum.
/// p_i < 1 gives the quasi-norm. Each slice is accumulated serially in
/// ascending index order, so the result does not depend on the worker count.
double mixed_norm(const GridFunction& f, std::span<const Exponent> p,
                  Execution exec = Execution::Parallel);
double mixed_norm(const GridFunction& f, std::span<const double> p,
                  Execution exec = Execution::Parallel);

/// Text layout: a header with one "axis lo hi cells" line per axis, then the
/// values with one x_1-row per line.
void write_grid(const GridFunction& f, std::ostream& out);
GridFunction read_grid(std::istream& in);

/// CSV "x_a,x_b,value" of the 2-D slice over axes a and b; other axes are
/// held at `fixed` (one index per axis, entries for a and b ignored).
void write_slice_csv(const GridFunction& f, std::ostream& out, std::size_t axis_a = 0,
                     std::size_t axis_b = 1, std::span<const std::size_t> fixed = {});

}  // namespace hlskit
