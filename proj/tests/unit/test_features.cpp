#include <cmath>
#include <numbers>

#include "doctest.h"

#include "darkpot/errors.hpp"
#include "darkpot/features.hpp"

using namespace darkpot;

namespace {

constexpr double pi = std::numbers::pi;

BarrierFeatures numeric(const FieldProfile& p, std::size_t n = 20001,
                        std::pair<double, double> window = {pi - 1.0, pi + 1.0}) {
  auto grid = make_grid(0.0, 2.0 * pi, n, Boundary::Dirichlet);
  return find_extrema(make_potential_grid(grid, p), window);
}

double position_error(const FeatureComparison& c) {
  double e = 0.0;
  for (const auto& entry : c.entries)
    if (entry.name.ends_with(".x") && entry.name.starts_with("peak")) e = std::max(e, entry.error);
  return e;
}

}  // namespace

TEST_CASE("double barrier has two peaks around a zero dip") {
  auto f = numeric(double_barrier(0.1));
  REQUIRE(f.peaks.size() == 2);
  REQUIRE(f.dips.size() == 1);
  CHECK(f.dips[0].x == doctest::Approx(pi).epsilon(1e-3 / pi));
  CHECK(f.dips[0].value == 0.0);
  CHECK(f.peaks[0].x < f.dips[0].x);
  CHECK(f.dips[0].x < f.peaks[1].x);
  CHECK(f.well_width > 0.0);
  REQUIRE(f.spacings.size() == 1);
  CHECK(f.spacings[0] == doctest::Approx(f.peaks[1].x - f.peaks[0].x));
  REQUIRE(f.asymmetry.size() == 1);
  CHECK(f.asymmetry[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("triple barrier has three peaks and two zero dips") {
  const double phi = 0.2;
  auto f = numeric(triple_barrier(phi), 40001, {pi - 0.5, pi + 0.3});
  REQUIRE(f.peaks.size() == 3);
  REQUIRE(f.dips.size() == 2);
  const double xc = pi - phi / 2;
  CHECK(f.dips[0].x == doctest::Approx(xc - phi / 2).epsilon(1e-3));
  CHECK(f.dips[1].x == doctest::Approx(xc + phi / 2).epsilon(1e-3));
  for (const auto& d : f.dips) CHECK(d.value <= 1e-8 * f.peaks[1].value);
  CHECK(f.peaks[1].x == doctest::Approx(xc).epsilon(1e-3));
}

TEST_CASE("flat ratio gives no peaks") {
  auto p = FieldProfile::cosine(2.0, 1.0, {1.0, 0.5, 1.0, 0.5, 0.0});
  auto f = numeric(p, 2001, {0.0, 2.0 * pi});
  CHECK(f.peaks.empty());
  CHECK(f.dips.empty());
}

TEST_CASE("tiny windows are rejected") {
  auto grid = make_grid(0.0, 2.0 * pi, 101, Boundary::Dirichlet);
  auto pg = make_potential_grid(grid, double_barrier(0.1));
  CHECK_THROWS_AS(find_extrema(pg, {1.0, 1.05}), InvalidInput);
}

TEST_CASE("closed-form double barrier") {
  auto a = analytic_double(0.1, 0.0);
  REQUIRE(a.peaks.size() == 2);
  CHECK(a.peaks[1].x - pi == doctest::Approx(0.3398).epsilon(1e-3));
  CHECK((a.peaks[1].x - pi) / (2.0 * pi) == doctest::Approx(0.05407).epsilon(1e-3));
  CHECK(pi - a.peaks[0].x == doctest::Approx(0.3398).epsilon(1e-3));
  CHECK(a.peaks[0].value == doctest::Approx(6.495).epsilon(1e-3));
  CHECK(a.well_width / (2.0 * pi) == doctest::Approx(0.06325).epsilon(1e-3));
  REQUIRE(a.dips.size() == 1);
  CHECK(a.dips[0].value == 0.0);
  CHECK(a.dips[0].x == doctest::Approx(pi));
  // eps (1 - d) = 0.1 lies beyond the small-parameter regime; values are still filled in
  CHECK(a.out_of_regime);
  CHECK_FALSE(analytic_double(0.025, 0.0).out_of_regime);
  CHECK_FALSE(analytic_double(0.1, 0.5).out_of_regime);
}

TEST_CASE("closed-form double barrier depends only on eps (1 - d)") {
  auto a = analytic_double(0.1, 0.8);
  auto b = analytic_double(0.02, 0.0);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(a.peaks[i].x == doctest::Approx(b.peaks[i].x));
    CHECK(a.peaks[i].value == doctest::Approx(b.peaks[i].value));
  }
  CHECK(a.well_width == doctest::Approx(b.well_width));
}

TEST_CASE("closed-form double barrier degenerates as d -> 1") {
  auto a = analytic_double(0.1, 1.0);
  CHECK(a.out_of_regime);
  auto near = analytic_double(0.1, 1.0 - 1e-9);
  CHECK(near.peaks[0].value > 1e9);
  CHECK(near.well_width < 1e-3);
}

TEST_CASE("closed-form triple barrier") {
  auto a = analytic_triple(0.2);
  REQUIRE(a.peaks.size() == 3);
  REQUIRE(a.dips.size() == 2);
  CHECK(a.peaks[1].value == doctest::Approx(400.0));
  CHECK(a.peaks[1].x == doctest::Approx(pi - 0.1));
  CHECK(a.peaks[0].value == doctest::Approx(2.25));
  CHECK(a.peaks[2].value == doctest::Approx(2.25));
  CHECK(a.peaks[0].x == doctest::Approx(pi - 0.3));
  CHECK(a.peaks[2].x == doctest::Approx(pi + 0.1));
  CHECK(a.dips[0].x == doctest::Approx(pi - 0.2));
  CHECK(a.dips[1].x == doctest::Approx(pi));
  for (double phi : {0.05, 0.2, 0.5}) {
    auto t = analytic_triple(phi);
    CHECK(t.peaks[1].value / t.peaks[0].value == doctest::Approx(1600.0 / 9.0));
  }
  CHECK(analytic_triple(0.1).peaks[1].value == doctest::Approx(4.0 * a.peaks[1].value));
  CHECK(analytic_triple(0.6).out_of_regime);
  CHECK_THROWS_AS(analytic_triple(0.0), InvalidInput);
}

TEST_CASE("identical features compare to zero error") {
  auto a = analytic_double(0.05, 0.2);
  auto c = compare(a, a);
  CHECK_FALSE(c.mismatch);
  CHECK(c.max_error == 0.0);
  for (const auto& e : c.entries) CHECK(e.error == 0.0);
  auto t = analytic_triple(0.2);
  CHECK(compare(t, t).max_error == 0.0);
}

TEST_CASE("mismatched peak counts are reported") {
  auto c = compare(analytic_triple(0.2), analytic_double(0.05, 0.0));
  CHECK(c.mismatch);
  CHECK(c.numeric_peaks == 3);
  CHECK(c.analytic_peaks == 2);
}

TEST_CASE("numeric double barrier against the closed forms") {
  auto fine = compare(numeric(double_barrier(1.0 / 40)), analytic_double(1.0 / 40, 0.0));
  REQUIRE_FALSE(fine.mismatch);
  for (const auto& e : fine.entries) {
    INFO(e.name);
    // the half-max width carries the largest approximation error of the closed forms
    CHECK(e.error <= (e.name == "well_width" ? 0.15 : 0.05));
  }
  auto coarse = compare(numeric(double_barrier(0.1)), analytic_double(0.1, 0.0));
  REQUIRE_FALSE(coarse.mismatch);
  CHECK(coarse.max_error <= 0.10);
}

TEST_CASE("agreement tightens as eps -> 0") {
  double prev_height = 1.0, prev_pos = 1.0;
  for (double eps : {1.0 / 10, 1.0 / 40, 1.0 / 120}) {
    auto c = compare(numeric(double_barrier(eps), 40001), analytic_double(eps, 0.0));
    REQUIRE_FALSE(c.mismatch);
    const double height = std::max(c.error_of("peak0.value"), c.error_of("peak1.value"));
    const double pos = position_error(c);
    CHECK(height < prev_height);
    CHECK(pos < prev_pos);
    prev_height = height;
    prev_pos = pos;
  }
}

TEST_CASE("refinement moves extrema by less than the coarse spacing") {
  const FieldProfile profiles[] = {double_barrier(0.05, 0.3, 0.2), triple_barrier(0.3)};
  for (const auto& p : profiles) {
    const std::size_t n = 4001;
    const double h = 2.0 * pi / (n - 1);
    auto coarse = numeric(p, n, {pi - 1.0, pi + 0.8});
    auto fine = numeric(p, 4 * (n - 1) + 1, {pi - 1.0, pi + 0.8});
    REQUIRE(coarse.peaks.size() == fine.peaks.size());
    for (std::size_t i = 0; i < coarse.peaks.size(); ++i)
      CHECK(std::abs(coarse.peaks[i].x - fine.peaks[i].x) < h);
    REQUIRE(coarse.dips.size() == fine.dips.size());
    for (std::size_t i = 0; i < coarse.dips.size(); ++i)
      CHECK(std::abs(coarse.dips[i].x - fine.dips[i].x) < h);
  }
}
