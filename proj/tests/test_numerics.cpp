#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "tailwave/errors.hpp"
#include "tailwave/interp.hpp"
#include "tailwave/io.hpp"
#include "tailwave/quadrature.hpp"

using namespace tailwave;

namespace {

std::vector<double> sample(double (*f)(double), double x0, double dx, std::size_t n) {
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = f(x0 + static_cast<double>(i) * dx);
  return y;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("simpson integrates cubics exactly") {
  // x^3 on [0, 2], 9 samples: Simpson is exact for polynomials up to degree 3.
  auto y = sample([](double x) { return x * x * x; }, 0.0, 0.25, 9);
  CHECK(simpson(y, 0.25) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("simpson handles an odd panel count without losing order") {
  // 8 samples -> 7 panels; the 3-point end rule stays exact on parabolas.
  auto y = sample([](double x) { return 1.5 + x * x; }, 0.0, 2.0 / 7.0, 8);
  CHECK(simpson(y, 2.0 / 7.0) == doctest::Approx(3.0 + 8.0 / 3.0).epsilon(1e-13));

  // ...and the composite error still falls fourth order on smooth data.
  auto integrate = [](std::size_t n) {
    auto s = sample([](double x) { return std::sin(x); }, 0.0, 2.0 / double(n - 1), n);
    return simpson(s, 2.0 / double(n - 1));
  };
  const double exact = 1.0 - std::cos(2.0);
  const double ratio = std::abs(integrate(34) - exact) / std::abs(integrate(66) - exact);
  CHECK(ratio > 12.0);
  CHECK(ratio < 21.0);
}

TEST_CASE("simpson error falls fourth order under grid halving") {
  auto integrate = [](std::size_t n) {
    auto y = sample([](double x) { return std::sin(x); }, 0.0, 2.0 / double(n - 1), n);
    return simpson(y, 2.0 / double(n - 1));
  };
  const double exact = 1.0 - std::cos(2.0);
  const double e1 = std::abs(integrate(33) - exact);
  const double e2 = std::abs(integrate(65) - exact);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("cumulative_from_right matches the closed-form tail integral") {
  // integral_x^1 of 3y^2 dy = 1 - x^3; last entry exactly zero.
  const double dx = 1.0 / 64.0;
  auto y = sample([](double x) { return 3.0 * x * x; }, 0.0, dx, 65);
  auto cum = cumulative_from_right(y, dx);
  REQUIRE(cum.size() == 65);
  CHECK(cum.back() == 0.0);
  for (std::size_t i = 0; i < cum.size(); i += 7) {
    const double x = static_cast<double>(i) * dx;
    CHECK(cum[i] == doctest::Approx(1.0 - x * x * x).epsilon(1e-12));
  }
}

TEST_CASE("cumulative_from_right is fourth order") {
  auto worst = [](std::size_t n) {
    const double dx = 2.0 / double(n - 1);
    auto y = sample([](double x) { return std::cos(x); }, 0.0, dx, n);
    auto cum = cumulative_from_right(y, dx);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i) * dx;
      e = std::max(e, std::abs(cum[i] - (std::sin(2.0) - std::sin(x))));
    }
    return e;
  };
  CHECK(worst(33) / worst(65) > 12.0);  // ~16 for a 4th-order rule
}

TEST_CASE("derivative is exact on cubics and fourth order on sin") {
  const double dx = 0.1;
  auto y = sample([](double x) { return x * x * x - 2.0 * x; }, -1.0, dx, 21);
  auto d = derivative(y, dx);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = -1.0 + static_cast<double>(i) * dx;
    CHECK(d[i] == doctest::Approx(3.0 * x * x - 2.0).epsilon(1e-12));
  }

  auto worst = [](std::size_t n) {
    const double h = 2.0 / double(n - 1);
    auto s = sample([](double x) { return std::sin(x); }, 0.0, h, n);
    auto ds = derivative(s, h);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      e = std::max(e, std::abs(ds[i] - std::cos(static_cast<double>(i) * h)));
    return e;
  };
  CHECK(worst(33) / worst(65) > 12.0);
}

TEST_CASE("cubic_interp reproduces cubics between nodes and values at nodes") {
  auto y = sample([](double x) { return x * x * x - x; }, 0.0, 0.5, 9);
  for (double x : {0.1, 0.77, 1.3, 2.04, 3.99})
    CHECK(cubic_interp(y, 0.0, 0.5, x) == doctest::Approx(x * x * x - x).epsilon(1e-13));
  for (std::size_t j = 0; j < 9; ++j)
    CHECK(cubic_interp(y, 0.0, 0.5, 0.5 * double(j)) == y[j]);
}

TEST_CASE("cubic_interp clamps the stencil at the ends without blowing up") {
  std::vector<double> y{1.0, 2.0, 4.0, 8.0, 16.0};
  const double v = cubic_interp(y, 0.0, 1.0, 0.05);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("format_g17 round-trips doubles exactly") {
  for (double x : {0.1, 1.0 / 3.0, 5.5823534685601702e-05, -2.575e-4, 1e300, 0.0})
    CHECK(std::strtod(format_g17(x).c_str(), nullptr) == x);
}

TEST_CASE("CsvWriter emits the fixed schema with newline line ends") {
  namespace fs = std::filesystem;
  const fs::path p = fs::temp_directory_path() / "tw_numerics_csv_test.csv";
  {
    const std::string cols[] = {"t", "u"};
    CsvWriter csv(p.string(), cols);
    const double r1[] = {0.5, 1.0 / 3.0};
    csv.row(r1);
    const std::string r2[] = {"1", "tagged"};
    csv.row_cells(r2);
    CHECK(csv.rows() == 2);
    const double bad[] = {1.0};
    CHECK_THROWS_AS(csv.row(bad), ConfigError);
    csv.close();
  }
  CHECK(slurp(p) == "t,u\n0.5,0.33333333333333331\n1,tagged\n");
  fs::remove(p);
}

TEST_CASE("field binary dump round-trips") {
  namespace fs = std::filesystem;
  Field2D f;
  f.kind = FieldKind::remainder;
  f.epsilon = 0.1;
  f.dr = 0.5;
  f.dt = 0.25;
  f.nt = 3;
  f.nr = 4;
  f.values = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  const fs::path p = fs::temp_directory_path() / "tw_numerics_field_test.bin";
  write_field_binary(p.string(), f);
  const Field2D g = read_field_binary(p.string());
  CHECK(g.dr == f.dr);
  CHECK(g.dt == f.dt);
  CHECK(g.nt == f.nt);
  CHECK(g.nr == f.nr);
  CHECK(g.values == f.values);
  CHECK(g.at(2, 3) == 11.0);
  fs::remove(p);
}
