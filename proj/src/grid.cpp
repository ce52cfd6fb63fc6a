#include "hlskit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "hlskit/errors.hpp"
#include "hlskit/parallel.hpp"

namespace hlskit {

void Axis::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw input_error("axis needs finite lo < hi");
  if (cells == 0) throw input_error("axis needs at least one cell");
}

Axis staggered(const Axis& axis) {
  const double half = 0.5 * axis.width();
  return {axis.lo + half, axis.hi + half, axis.cells};
}

std::vector<Axis> staggered(const std::vector<Axis>& axes) {
  std::vector<Axis> out;
  out.reserve(axes.size());
  for (const auto& a : axes) out.push_back(staggered(a));
  return out;
}

Axis dilated(const Axis& axis, double a) {
  if (!(a > 0) || !std::isfinite(a)) throw input_error("dilation factor must be positive");
  return {a * axis.lo, a * axis.hi, axis.cells};
}

std::vector<Axis> dilated(const std::vector<Axis>& axes, double a) {
  std::vector<Axis> out;
  out.reserve(axes.size());
  for (const auto& ax : axes) out.push_back(dilated(ax, a));
  return out;
}

GridFunction::GridFunction(std::vector<Axis> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  if (axes_.empty()) throw input_error("grid function needs at least one axis");
  std::size_t n = 1;
  for (const auto& a : axes_) {
    a.validate();
    n *= a.cells;
  }
  if (values_.size() != n)
    throw input_error("grid has " + std::to_string(n) + " cells but " + std::to_string(values_.size()) +
                      " values were given");
  for (double v : values_)
    if (!std::isfinite(v) || v < 0) throw input_error("grid values must be finite and nonnegative");
}

std::vector<std::size_t> GridFunction::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes_) s.push_back(a.cells);
  return s;
}

double GridFunction::at(std::span<const std::size_t> index) const {
  if (index.size() != rank()) throw input_error("index rank mismatch");
  std::size_t flat = 0, stride = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (index[i] >= axes_[i].cells) throw input_error("grid index out of range");
    flat += index[i] * stride;
    stride *= axes_[i].cells;
  }
  return values_[flat];
}

GridFunction GridFunction::scaled(double c) const {
  if (!(c >= 0) || !std::isfinite(c)) throw input_error("scale factor must be finite and nonnegative");
  std::vector<double> v(values_);
  for (auto& x : v) x *= c;
  return GridFunction(axes_, std::move(v));
}

GridFunction GridFunction::dilated(double a) const {
  return GridFunction(hlskit::dilated(axes_, a), values_);
}

namespace {

double reduce_slice(const double* v, std::size_t n, double p, double h) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
    return m;
  }
  double s = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < n; ++i) s += std::abs(v[i]);
    return s * h;
  }
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) s += v[i] * v[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(v[i]), p);
  }
  return std::pow(s * h, 1.0 / p);
}

}  // namespace

double mixed_norm(const GridFunction& f, std::span<const double> p, Execution exec) {
  if (p.size() != f.rank())
    throw input_error("exponent vector has length " + std::to_string(p.size()) + ", grid has rank " +
                      std::to_string(f.rank()));
  for (double pi : p)
    if (!(pi > 0)) throw input_error("mixed norm exponents must be positive");

  std::vector<double> current(f.values().begin(), f.values().end());
  std::vector<double> next;
  for (std::size_t axis = 0; axis < f.rank(); ++axis) {
    const std::size_t n = f.axes()[axis].cells;
    const std::size_t rows = current.size() / n;
    const double h = f.axes()[axis].width();
    next.assign(rows, 0.0);
    const auto count = static_cast<long long>(rows);
    if (exec == Execution::Parallel && rows > 1) {
#pragma omp parallel for schedule(static) num_threads(worker_count())
      for (long long r = 0; r < count; ++r)
        next[static_cast<std::size_t>(r)] = reduce_slice(current.data() + r * n, n, p[axis], h);
    } else {
      for (std::size_t r = 0; r < rows; ++r) next[r] = reduce_slice(current.data() + r * n, n, p[axis], h);
    }
    current.swap(next);
  }
  return current.front();
}

double mixed_norm(const GridFunction& f, std::span<const Exponent> p, Execution exec) {
  std::vector<double> pd;
  pd.reserve(p.size());
  for (const auto& e : p) pd.push_back(e.to_double());
  return mixed_norm(f, std::span<const double>(pd), exec);
}

void write_grid(const GridFunction& f, std::ostream& out) {
  std::ostringstream os;
  os.precision(17);
  os << "# hlskit grid v1\nrank " << f.rank() << '\n';
  for (const auto& a : f.axes()) os << "axis " << a.lo << ' ' << a.hi << ' ' << a.cells << '\n';
  os << "values\n";
  const std::size_t row = f.axes()[0].cells;
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << v[i];
    os << ((i + 1) % row == 0 ? '\n' : ' ');
  }
  out << os.str();
}

GridFunction read_grid(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') return line;
    }
    throw input_error("unexpected end of grid file");
  };
  std::istringstream header(next_line());
  std::string word;
  std::size_t rank = 0;
  if (!(header >> word >> rank) || word != "rank" || rank == 0) throw input_error("grid file: bad rank line");
  std::vector<Axis> axes;
  for (std::size_t i = 0; i < rank; ++i) {
    std::istringstream ax(next_line());
    Axis a;
    if (!(ax >> word >> a.lo >> a.hi >> a.cells) || word != "axis") throw input_error("grid file: bad axis line");
    axes.push_back(a);
  }
  if (next_line() != "values") throw input_error("grid file: missing values marker");
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  if (!in.eof()) throw input_error("grid file: malformed value");
  return GridFunction(std::move(axes), std::move(values));
}

void write_slice_csv(const GridFunction& f, std::ostream& out, std::size_t axis_a, std::size_t axis_b,
                     std::span<const std::size_t> fixed) {
  std::ostringstream os;
  os.precision(12);
  if (f.rank() == 1) {
    os << "x1,value\n";
    for (std::size_t i = 0; i < f.axes()[0].cells; ++i) os << f.axes()[0].midpoint(i) << ',' << f.values()[i] << '\n';
    out << os.str();
    return;
  }
  if (axis_a >= f.rank() || axis_b >= f.rank() || axis_a == axis_b) throw input_error("bad slice axes");
  if (!fixed.empty() && fixed.size() != f.rank()) throw input_error("fixed index needs one entry per axis");
  std::vector<std::size_t> idx(f.rank(), 0);
  if (!fixed.empty()) std::copy(fixed.begin(), fixed.end(), idx.begin());
  os << 'x' << axis_a + 1 << ",x" << axis_b + 1 << ",value\n";
  for (std::size_t j = 0; j < f.axes()[axis_b].cells; ++j) {
    for (std::size_t i = 0; i < f.axes()[axis_a].cells; ++i) {
      idx[axis_a] = i;
      idx[axis_b] = j;
      os << f.axes()[axis_a].midpoint(i) << ',' << f.axes()[axis_b].midpoint(j) << ',' << f.at(idx) << '\n';
    }
  }
  out << os.str();
}

}  // namespace hlskit
