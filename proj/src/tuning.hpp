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

// Security-privacy tradeoff management: fit the security curve from sweep
// data, evaluate the privacy utility, and pick the privacy parameter that
// minimizes their difference under the security threshold.

#ifndef DPADMM_TUNING_HPP_
#define DPADMM_TUNING_HPP_

#include <utility>
#include <vector>

namespace dpadmm {

// L_acc(alpha) = c5 e^{-c6 alpha} + c7 with c5, c6 >= 0, so the fitted risk
// never increases in alpha.
struct UtilityCurve {
  double c5 = 0.0;
  double c6 = 0.0;
  double c7 = 0.0;
  double eval(double alpha) const;
};

// U_pri(alpha) = cv1 ln(cv2 / (cv3 alpha + cv4 alpha^2)) on (0, 1],
// strictly decreasing. An all-zero struct encodes the identically-zero
// utility (the cv1 -> 0 limit).
struct PrivacyUtility {
  double cv1 = 0.0;
  double cv2 = 0.0;
  double cv3 = 0.0;
  double cv4 = 0.0;
};

struct FitReport {
  double residual_norm = 0.0;  // on the original scale, all input points
  int points_used = 0;         // points entering the log-linear solve
};

// Fits (c5, c6) by least squares of ln(risk - c7) against alpha, with c7
// pinned to the minimum observed risk. Residuals that are non-positive or
// below 1e-8 of the largest one are excluded from the log fit: they carry
// no exponential signal and their logs are dominated by the c7 subtraction.
// Throws DegenerateFit (fewer than 3 distinct alphas, no usable residuals,
// or a fitted exponent with the wrong sign).
UtilityCurve fit_security_curve(
    const std::vector<std::pair<double, double>>& points,
    FitReport* report = nullptr);

// Throws AlphaOutOfDomain outside (0, 1].
double privacy_utility(double alpha, const PrivacyUtility& p);

// Minimizes U_sec(alpha) - U_pri(alpha) over {alpha in [1e-4, 1] :
// 0 <= U_sec(alpha) <= u1}. Coarse scan plus golden-section refinement of
// every bracketed local minimum, ties broken toward the smaller alpha. The
// 1e-4 floor bounds the problem when the constraint is inactive, since
// U_pri diverges as alpha -> 0. Throws InfeasibleConstraint when no alpha
// satisfies the threshold.
double optimize_alpha(const UtilityCurve& sec, const PrivacyUtility& pri,
                      double u1);

}  // namespace dpadmm

#endif  // DPADMM_TUNING_HPP_
