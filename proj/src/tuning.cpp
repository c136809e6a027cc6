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

#include "tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "error.hpp"

namespace dpadmm {

namespace {

constexpr double kAlphaFloor = 1e-4;

bool is_zero_utility(const PrivacyUtility& p) {
  return p.cv1 == 0.0 && p.cv2 == 0.0 && p.cv3 == 0.0 && p.cv4 == 0.0;
}

// Golden-section search for the minimum of fn on [lo, hi].
template <typename F>
double golden_min(F&& fn, double lo, double hi, double tol = 1e-7) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double UtilityCurve::eval(double alpha) const {
  return c5 * std::exp(-c6 * alpha) + c7;
}

UtilityCurve fit_security_curve(
    const std::vector<std::pair<double, double>>& points, FitReport* report) {
  std::set<double> alphas;
  for (const auto& [alpha, risk] : points) alphas.insert(alpha);
  if (alphas.size() < 3) {
    fail(ErrorCode::kDegenerateFit,
         "need at least 3 distinct privacy parameters, got " +
             std::to_string(alphas.size()));
  }

  double c7 = std::numeric_limits<double>::infinity();
  for (const auto& [alpha, risk] : points) c7 = std::min(c7, risk);

  double max_residual = 0.0;
  for (const auto& [alpha, risk] : points) {
    max_residual = std::max(max_residual, risk - c7);
  }
  if (max_residual <= 0.0) {
    fail(ErrorCode::kDegenerateFit,
         "risk is constant across the sweep; no exponential component");
  }

  // Least squares of ln(risk - c7) against alpha, weighted by the squared
  // residuals: that is the first-order equivalent of original-scale least
  // squares, so the near-floor tail (where the c7 subtraction dominates the
  // residual) cannot bias the exponent. Residuals without signal are
  // dropped entirely.
  const double threshold = 1e-8 * max_residual;
  double sw = 0.0, sa = 0.0, sl = 0.0, saa = 0.0, sal = 0.0;
  int used = 0;
  for (const auto& [alpha, risk] : points) {
    double r = risk - c7;
    if (r <= threshold) continue;
    double w = r * r;
    double lr = std::log(r);
    sw += w;
    sa += w * alpha;
    sl += w * lr;
    saa += w * alpha * alpha;
    sal += w * alpha * lr;
    ++used;
  }
  double denom = sw * saa - sa * sa;
  if (used < 2 || denom == 0.0) {
    fail(ErrorCode::kDegenerateFit, "too few usable residuals for the fit");
  }
  double slope = (sw * sal - sa * sl) / denom;
  double intercept = (sl - slope * sa) / sw;

  UtilityCurve curve;
  curve.c5 = std::exp(intercept);
  curve.c6 = -slope;
  curve.c7 = c7;
  if (curve.c6 < 0.0) {
    fail(ErrorCode::kDegenerateFit,
         "fitted risk increases with the privacy parameter");
  }

  if (report) {
    double ss = 0.0;
    for (const auto& [alpha, risk] : points) {
      double e = curve.eval(alpha) - risk;
      ss += e * e;
    }
    report->residual_norm = std::sqrt(ss);
    report->points_used = used;
  }
  return curve;
}

double privacy_utility(double alpha, const PrivacyUtility& p) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    fail(ErrorCode::kAlphaOutOfDomain,
         "privacy parameter " + std::to_string(alpha) + " outside (0, 1]");
  }
  if (is_zero_utility(p)) return 0.0;
  double denom = p.cv3 * alpha + p.cv4 * alpha * alpha;
  if (!(p.cv2 > 0.0) || !(denom > 0.0)) {
    fail(ErrorCode::kConfigError, "privacy utility constants must be positive");
  }
  return p.cv1 * std::log(p.cv2 / denom);
}

double optimize_alpha(const UtilityCurve& sec, const PrivacyUtility& pri,
                      double u1) {
  // U_sec is non-increasing, so each constraint clips one side of the
  // domain. The boundaries are found by bisection on the evaluated curve
  // rather than by inverting the formula, so feasibility here agrees
  // bit-for-bit with checking U_sec(alpha) against the threshold.
  double lo = kAlphaFloor;
  if (sec.eval(kAlphaFloor) > u1) {
    if (sec.eval(1.0) > u1) {
      fail(ErrorCode::kInfeasibleConstraint,
           "no privacy parameter keeps the security utility under the "
           "threshold");
    }
    double a = kAlphaFloor, b = 1.0;  // eval(a) > u1 >= eval(b)
    for (int i = 0; i < 200 && a < b; ++i) {
      double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (sec.eval(mid) > u1 ? a : b) = mid;
    }
    lo = b;
  }
  // Upper end from U_sec >= 0 (only binding when the curve goes negative):
  double hi = 1.0;
  if (sec.eval(1.0) < 0.0) {
    if (sec.eval(kAlphaFloor) < 0.0) {
      fail(ErrorCode::kInfeasibleConstraint, "security utility is negative");
    }
    double a = kAlphaFloor, b = 1.0;  // eval(a) >= 0 > eval(b)
    for (int i = 0; i < 200 && a < b; ++i) {
      double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (sec.eval(mid) >= 0.0 ? a : b) = mid;
    }
    hi = a;
  }
  if (lo > hi) {
    fail(ErrorCode::kInfeasibleConstraint, "empty feasible interval");
  }

  auto objective = [&](double alpha) {
    return sec.eval(alpha) - privacy_utility(alpha, pri);
  };

  if (hi - lo < 1e-12) return lo;

  // Coarse scan, then golden-section refinement of every bracketed local
  // minimum; the objective need not be unimodal for arbitrary constants.
  const int scan = 4096;
  std::vector<double> xs(scan + 1), fs(scan + 1);
  for (int i = 0; i <= scan; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / scan;
    fs[i] = objective(xs[i]);
  }

  double best_alpha = xs[0];
  double best_value = fs[0];
  auto consider = [&](double alpha) {
    double value = objective(alpha);
    if (value < best_value - 1e-12) {
      best_value = value;
      best_alpha = alpha;
    } else if (value <= best_value + 1e-12 && alpha < best_alpha) {
      // Ties go to the smaller alpha (stronger privacy).
      best_value = std::min(best_value, value);
      best_alpha = alpha;
    }
  };

  consider(lo);
  consider(hi);
  for (int i = 0; i <= scan; ++i) {
    bool left_ok = (i == 0) || fs[i] <= fs[i - 1];
    bool right_ok = (i == scan) || fs[i] <= fs[i + 1];
    if (left_ok && right_ok) {
      double a = xs[std::max(0, i - 1)];
      double b = xs[std::min(scan, i + 1)];
      consider(golden_min(objective, a, b));
    }
  }
  return best_alpha;
}

}  // namespace dpadmm
