// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

namespace pcqa {

/// Parameters of q(x) = b1*(1/2 - 1/(1 + exp(b2*(x - b3)))) + b4*x + b5.
struct LogisticParams {
    std::array<double, 5> beta{};
    bool converged = true;
    double sse = 0.0;
};

double logistic_eval(const LogisticParams& params, double x);

/// Least-squares fit by damped Gauss-Newton with analytic Jacobian from a
/// deterministic initialization. Stops at relative SSE change < 1e-10 or
/// 500 iterations; non-convergence returns the best iterate with
/// converged = false.
LogisticParams fit_logistic(const std::vector<double>& x, const std::vector<double>& y);

struct BenchmarkRow {
    std::string session;   // all | human | object
    std::string metric;
    std::string pooling;   // mean | weighted | point
    double gamma = 0.0;
    double plcc = 0.0;
    double srocc = 0.0;
    double krocc = 0.0;
    double rmse = 0.0;
    int n = 0;
    LogisticParams fit;
};

/// Fit Eq-style regression and fill the correlation columns. Infinite or
/// NaN objective scores (lossless sentinels) are excluded up front; throws
/// DataError with fewer than 5 finite pairs. SROCC/KROCC use the raw
/// scores, PLCC/RMSE the fitted predictions.
BenchmarkRow evaluate_metric(const std::vector<double>& objective,
                             const std::vector<double>& dmos);

/// Deterministic CSV + JSON report, rows sorted by (session, metric,
/// pooling), values rounded to 4 decimals.
void generate_report(std::vector<BenchmarkRow> rows, const std::string& csv_path,
                     const std::string& json_path);

}  // namespace pcqa
