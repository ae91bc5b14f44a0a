// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace pcqa {

double mean(const std::vector<double>& v);
double sample_std(const std::vector<double>& v);  // K-1 denominator

/// Pearson linear correlation. Throws NumericError on zero variance.
double plcc(const std::vector<double>& x, const std::vector<double>& y);

/// Root mean square of (x - y).
double rmse(const std::vector<double>& x, const std::vector<double>& y);

/// Average ranks (1-based), ties share the mean rank.
std::vector<double> average_ranks(const std::vector<double>& v);

/// Spearman rank correlation = Pearson correlation of average ranks.
double srocc(const std::vector<double>& x, const std::vector<double>& y);

/// Kendall tau-b (tie corrected).
double krocc(const std::vector<double>& x, const std::vector<double>& y);

/// Regularized incomplete beta I_x(a, b), relative error ~1e-12.
double incomplete_beta(double a, double b, double x);

/// Upper-tail probabilities and quantiles of Student-t and F distributions.
double t_tail(double t, double df);                // P(T > t)
double f_tail(double f, double df1, double df2);   // P(F > f)
double t_quantile(double p, double df);            // t with P(T > t) = p
double f_quantile(double p, double df1, double df2);

}  // namespace pcqa
