// Copyright 2026 The dpadmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "error.hpp"
#include "rng.hpp"
#include "tuning.hpp"

using dpadmm::FitReport;
using dpadmm::PrivacyUtility;
using dpadmm::Rng;
using dpadmm::UtilityCurve;

namespace {

const PrivacyUtility kDefaultUtility{20.0, 6.0, 5.0, 1.0};

std::vector<std::pair<double, double>> model_points(double c5, double c6,
                                                    double c7) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i <= 100; ++i) {
    double alpha = 0.01 * i;
    pts.emplace_back(alpha, c5 * std::exp(-c6 * alpha) + c7);
  }
  return pts;
}

// Dense-grid oracle for the tradeoff program: smallest feasible grid point
// attaining the minimum objective.
double grid_oracle(const UtilityCurve& sec, const PrivacyUtility& pri,
                   double u1, int grid = 10000) {
  double best_alpha = -1.0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid; ++i) {
    double alpha = static_cast<double>(i) / grid;
    double usec = sec.eval(alpha);
    if (usec < 0.0 || usec > u1) continue;
    double value = usec - dpadmm::privacy_utility(alpha, pri);
    if (value < best_value - 1e-15) {
      best_value = value;
      best_alpha = alpha;
    }
  }
  return best_alpha;
}

}  // namespace

TEST_SUITE_BEGIN("tuning");

TEST_CASE("round-trip fit recovers the generating constants") {
  auto pts = model_points(0.055, 40.0, 0.1);
  FitReport report;
  UtilityCurve curve = dpadmm::fit_security_curve(pts, &report);
  CHECK(std::abs(curve.c5 - 0.055) <= 1e-6 * 0.055);
  CHECK(std::abs(curve.c6 - 40.0) <= 1e-6 * 40.0);
  CHECK(curve.c7 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(report.residual_norm <= 1e-8);
  CHECK(report.points_used >= 3);
}

TEST_CASE("fit recovers randomized constants") {
  // Exponents are drawn from the regime where the curve has flattened by
  // alpha = 1; below that the c7 = min rule is inherently biased.
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    double c5 = rng.uniform(0.01, 1.0);
    double c6 = rng.uniform(25.0, 100.0);
    double c7 = rng.uniform(0.0, 0.5);
    UtilityCurve curve = dpadmm::fit_security_curve(model_points(c5, c6, c7));
    CHECK(std::abs(curve.c5 - c5) <= 1e-5 * c5);
    CHECK(std::abs(curve.c6 - c6) <= 1e-5 * c6);
  }
}

TEST_CASE("fewer than three distinct alphas is degenerate") {
  std::vector<std::pair<double, double>> pts{{0.1, 0.5}, {0.1, 0.5}, {0.2, 0.4}};
  try {
    dpadmm::fit_security_curve(pts);
    FAIL("expected DegenerateFit");
  } catch (const dpadmm::Error& e) {
    CHECK(e.code() == dpadmm::ErrorCode::kDegenerateFit);
  }
}

TEST_CASE("constant risk is degenerate") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i <= 10; ++i) pts.emplace_back(0.1 * i, 0.3);
  try {
    dpadmm::fit_security_curve(pts);
    FAIL("expected DegenerateFit");
  } catch (const dpadmm::Error& e) {
    CHECK(e.code() == dpadmm::ErrorCode::kDegenerateFit);
  }
}

TEST_CASE("rising risk is degenerate") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i <= 10; ++i) {
    pts.emplace_back(0.1 * i, 0.1 + 0.05 * i);
  }
  try {
    dpadmm::fit_security_curve(pts);
    FAIL("expected DegenerateFit");
  } catch (const dpadmm::Error& e) {
    CHECK(e.code() == dpadmm::ErrorCode::kDegenerateFit);
  }
}

TEST_CASE("privacy utility at the default constants") {
  CHECK(dpadmm::privacy_utility(1.0, kDefaultUtility) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dpadmm::privacy_utility(0.5, kDefaultUtility) ==
        doctest::Approx(20.0 * std::log(6.0 / 2.75)).epsilon(1e-12));
  CHECK(dpadmm::privacy_utility(0.5, kDefaultUtility) ==
        doctest::Approx(15.6032).epsilon(1e-4));
}

TEST_CASE("privacy utility decreases on its domain") {
  double prev = dpadmm::privacy_utility(0.01, kDefaultUtility);
  for (int i = 2; i <= 100; ++i) {
    double cur = dpadmm::privacy_utility(0.01 * i, kDefaultUtility);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("privacy utility rejects out-of-domain arguments") {
  for (double alpha : {0.0, -0.2, 1.4}) {
    try {
      dpadmm::privacy_utility(alpha, kDefaultUtility);
      FAIL("expected AlphaOutOfDomain");
    } catch (const dpadmm::Error& e) {
      CHECK(e.code() == dpadmm::ErrorCode::kAlphaOutOfDomain);
    }
  }
}

TEST_CASE("zero privacy utility pushes the optimum to the largest feasible alpha") {
  UtilityCurve sec{0.5, 10.0, 0.05};
  PrivacyUtility zero{};
  double alpha = dpadmm::optimize_alpha(sec, zero, 10.0);
  CHECK(alpha == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("optimizer matches the grid oracle with inactive constraint") {
  UtilityCurve sec{0.055, 40.0, 0.1};
  double u1 = sec.eval(1e-4) + 1.0;  // inactive
  double got = dpadmm::optimize_alpha(sec, kDefaultUtility, u1);
  double expected = grid_oracle(sec, kDefaultUtility, u1);
  CHECK(std::abs(got - expected) <= 1e-4);
}

TEST_CASE("optimizer matches the grid oracle on random instances") {
  Rng rng(77);
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    UtilityCurve sec{rng.uniform(0.01, 1.0), rng.uniform(1.0, 100.0),
                     rng.uniform(0.0, 0.3)};
    PrivacyUtility pri{rng.uniform(0.1, 30.0), rng.uniform(0.1, 30.0),
                       rng.uniform(0.1, 30.0), rng.uniform(0.1, 30.0)};
    double u1 = rng.uniform01() < 0.5
                    ? std::numeric_limits<double>::infinity()
                    : sec.eval(rng.uniform(1e-4, 1.0));
    double expected = grid_oracle(sec, pri, u1);
    if (expected < 0.0) continue;  // infeasible draw
    double got = dpadmm::optimize_alpha(sec, pri, u1);
    CHECK(std::abs(got - expected) <= 1e-4);
    ++compared;
  }
  CHECK(compared >= 20);
}

TEST_CASE("optimizer result satisfies the constraints") {
  Rng rng(78);
  for (int trial = 0; trial < 30; ++trial) {
    UtilityCurve sec{rng.uniform(0.01, 1.0), rng.uniform(1.0, 100.0),
                     rng.uniform(0.0, 0.3)};
    double u1 = sec.eval(rng.uniform(1e-4, 1.0));
    double alpha = dpadmm::optimize_alpha(sec, kDefaultUtility, u1);
    CHECK(alpha > 0.0);
    CHECK(alpha <= 1.0);
    CHECK(sec.eval(alpha) <= u1 * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("threshold below the whole curve is infeasible") {
  UtilityCurve sec{0.5, 5.0, 0.2};
  try {
    dpadmm::optimize_alpha(sec, kDefaultUtility, 0.1);  // min U_sec > 0.2 > 0.1
    FAIL("expected InfeasibleConstraint");
  } catch (const dpadmm::Error& e) {
    CHECK(e.code() == dpadmm::ErrorCode::kInfeasibleConstraint);
  }
}

TEST_CASE("fitted curve slope is non-positive across the domain") {
  auto pts = model_points(0.3, 25.0, 0.05);
  UtilityCurve sec = dpadmm::fit_security_curve(pts);
  double prev = sec.eval(1e-4);
  for (int i = 1; i <= 1000; ++i) {
    double cur = sec.eval(1e-4 + (1.0 - 1e-4) * i / 1000.0);
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
}

TEST_SUITE_END();
