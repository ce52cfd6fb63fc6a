#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hlskit/errors.hpp"
#include "hlskit/grid.hpp"
#include "hlskit/test_functions.hpp"

using namespace hlskit;

namespace {

GridFunction tensor(const std::vector<double>& g, const std::vector<double>& h, Axis ax, Axis ay) {
  std::vector<double> v;
  for (double hy : h)
    for (double gx : g) v.push_back(gx * hy);
  return GridFunction({ax, ay}, v);
}

double norm1d(const std::vector<double>& v, double p, double h) {
  return mixed_norm(GridFunction({Axis{0, h * static_cast<double>(v.size()), v.size()}}, v),
                    std::vector<double>{p});
}

}  // namespace

TEST_CASE("box sampled on a coarser window") {
  auto f = sample(Box{{0.0}, {1.0}}, {Axis{-2, 2, 64}});
  int ones = 0;
  for (double v : f.values()) {
    CHECK((v == 0.0 || v == 1.0));
    ones += v == 1.0;
  }
  CHECK(ones == 16);
}

TEST_CASE("gaussian product at midpoints") {
  auto f = sample(GaussianProduct{{0, 0}, {1, 1}}, {Axis{-2, 2, 8}, Axis{-1, 3, 4}});
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 8; ++i) {
      const double x = -2 + (i + 0.5) * 0.5, y = -1 + (j + 0.5);
      std::size_t idx[2] = {i, j};
      CHECK(f.at(idx) == doctest::Approx(std::exp(-x * x - y * y)).epsilon(1e-15));
    }
}

TEST_CASE("log power test function") {
  auto f = sample(LogPower{{2.0}, 0.5, 0.5}, {Axis{-1, 1, 256}});
  const auto v = f.values();
  double peak = 0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = std::abs(f.axes()[0].midpoint(i));
    if (x < 0.5) CHECK(v[i] > 0);
    else CHECK(v[i] == 0);
    if (v[i] > peak) peak = v[i], arg = i;
  }
  CHECK((arg == 127 || arg == 128));
  // direct formula at one midpoint
  const double x = f.axes()[0].midpoint(140);
  CHECK(v[140] == doctest::Approx(1 / (std::sqrt(std::abs(x)) * std::pow(std::log(1 / std::abs(x)), 0.75))));
}

TEST_CASE("power tail is bounded in the chosen axis") {
  auto f = sample(PowerTail{2.0, 0}, {Axis{-2, 2, 4}, Axis{0, 4, 4}});
  std::size_t out[2] = {0, 0}, in[2] = {1, 3};
  CHECK(f.at(out) == 0.0);
  CHECK(f.at(in) == doctest::Approx(1 / (4.5 * 4.5)));
}

TEST_CASE("test function parameter domains") {
  CHECK_THROWS_AS(sample(LogPower{{2.0}, 0.5, 1.0}, {Axis{-1, 1, 8}}), input_error);
  CHECK_THROWS_AS(sample(LogPower{{2.0}, 0.0, 0.5}, {Axis{-1, 1, 8}}), input_error);
  CHECK_THROWS_AS(sample(Box{{1.0}, {0.0}}, {Axis{-1, 1, 8}}), input_error);
  CHECK_THROWS_AS(sample(Box{{0.0}, {1.0}}, {Axis{-1, 1, 8}, Axis{-1, 1, 8}}), input_error);
  CHECK_THROWS_AS(sample(GaussianProduct{{0.0}, {0.0}}, {Axis{-1, 1, 8}}), input_error);
  CHECK_THROWS_AS(sample(PowerTail{1.0, 2}, {Axis{-1, 1, 8}}), input_error);
  // odd cell count puts a midpoint on the singularity
  CHECK_THROWS_AS(sample(LogPower{{2.0}, 0.5, 0.5}, {Axis{-1, 1, 255}}), input_error);
}

TEST_CASE("grid function invariants") {
  CHECK_THROWS_AS(GridFunction({Axis{0, 1, 2}}, {1.0}), input_error);
  CHECK_THROWS_AS(GridFunction({Axis{0, 1, 2}}, {1.0, -1.0}), input_error);
  CHECK_THROWS_AS(GridFunction({Axis{0, 1, 2}}, {1.0, NAN}), input_error);
  CHECK_THROWS_AS(GridFunction({Axis{1, 1, 2}}, {1.0, 1.0}), input_error);
  CHECK_THROWS_AS(GridFunction({Axis{0, 1, 0}}, {}), input_error);
}

TEST_CASE("mixed norm of indicators") {
  auto unit = sample(Box{{0, 0}, {1, 1}}, {Axis{0, 1, 50}, Axis{0, 1, 40}});
  CHECK(mixed_norm(unit, std::vector<double>{2, 3}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mixed_norm(unit.scaled(2), std::vector<Exponent>{Exponent(5), Exponent(1, 2)}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mixed_norm(unit, std::vector<Exponent>{Exponent::infinity(), Exponent(3)}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(mixed_norm(unit, std::vector<double>{2}), input_error);
}

TEST_CASE("mixed norm of the triangle x <= y, inner L^1 then outer L^2") {
  const std::size_t cells = 200;
  std::vector<double> v;
  const Axis ax{0, 1, cells};
  for (std::size_t j = 0; j < cells; ++j)
    for (std::size_t i = 0; i < cells; ++i) v.push_back(ax.midpoint(i) <= ax.midpoint(j) ? 1.0 : 0.0);
  GridFunction f({ax, ax}, v);
  // (int_0^1 y^2 dy)^(1/2)
  CHECK(std::abs(mixed_norm(f, std::vector<double>{1, 2}) - 1 / std::sqrt(3.0)) < 2.0 / cells);
}

TEST_CASE("mixed norm factorizes on tensor products") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(0.0, 3.0);
  const std::vector<double> ps{0.5, 1.0, 1.5, 2.0, 3.0, INFINITY};
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> g(13), h(9);
    for (auto& x : g) x = U(rng);
    for (auto& x : h) x = U(rng);
    const Axis ax{-1, 1.6, g.size()}, ay{0.5, 2.0, h.size()};
    auto f = tensor(g, h, ax, ay);
    const double p1 = ps[trial % ps.size()], p2 = ps[(trial / ps.size()) % ps.size()];
    const double expected = norm1d(g, p1, ax.width()) * norm1d(h, p2, ay.width());
    CHECK(mixed_norm(f, std::vector<double>{p1, p2}) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("mixed norm is monotone and homogeneous") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const std::vector<std::vector<double>> exps{{1, 1}, {2, 0.5}, {INFINITY, 3}, {0.7, INFINITY}, {4, 2}};
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> a(12 * 7), b(12 * 7);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = U(rng);
      b[i] = a[i] + U(rng);
    }
    GridFunction fa({Axis{0, 1, 12}, Axis{0, 2, 7}}, a), fb({Axis{0, 1, 12}, Axis{0, 2, 7}}, b);
    for (const auto& p : exps) {
      CHECK(mixed_norm(fa, p) <= mixed_norm(fb, p));
      const double c = 0.1 + 3 * U(rng);
      CHECK(mixed_norm(fa.scaled(c), p) == doctest::Approx(c * mixed_norm(fa, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("refinement changes the norm of a smooth function by O(h)") {
  std::vector<double> norms;
  for (std::size_t cells : {16, 32, 64, 128}) {
    auto f = sample(GaussianProduct{{0.3, -0.2}, {0.7, 1.1}}, {Axis{-4, 4, cells}, Axis{-5, 5, cells}});
    norms.push_back(mixed_norm(f, std::vector<double>{3, 1.5}));
  }
  for (std::size_t i = 2; i < norms.size(); ++i) {
    const double prev = std::abs(norms[i - 1] - norms[i - 2]);
    const double cur = std::abs(norms[i] - norms[i - 1]);
    CHECK(cur <= 0.6 * prev + 1e-14);
  }
}

TEST_CASE("serial and parallel reductions are bit-identical") {
  auto f = sample(GaussianProduct{{0, 0, 0}, {1, 2, 1}}, {Axis{-3, 3, 20}, Axis{-3, 3, 17}, Axis{-2, 2, 9}});
  const std::vector<double> p{1.5, INFINITY, 0.8};
  CHECK(mixed_norm(f, p, Execution::Serial) == mixed_norm(f, p, Execution::Parallel));
}

TEST_CASE("grid text format round-trips and slices export") {
  auto f = sample(GaussianProduct{{0, 0}, {1, 1}}, {Axis{-1, 1, 3}, Axis{0, 2, 2}});
  std::stringstream io;
  write_grid(f, io);
  auto g = read_grid(io);
  REQUIRE(g.rank() == 2);
  CHECK(g.axes()[1].cells == 2);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(g.values()[i] == f.values()[i]);

  std::stringstream bad("rank 1\naxis 0 1 2\nvalues\n1 x\n");
  CHECK_THROWS_AS(read_grid(bad), input_error);

  std::ostringstream csv;
  write_slice_csv(f, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x1,x2,value");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 6);
}
