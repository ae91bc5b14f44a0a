// SPDX-License-Identifier: Apache-2.0
#include "pcqa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pcqa/errors.hpp"

namespace pcqa {

double mean(const std::vector<double>& v) {
    if (v.empty()) throw DataError("mean: empty vector");
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) throw DataError("sample_std: need at least 2 values");
    double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / double(v.size() - 1));
}

double plcc(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("plcc: length mismatch");
    if (x.size() < 3) throw DataError("plcc: need at least 3 pairs");
    double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw NumericError("plcc: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

double rmse(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("rmse: length mismatch");
    if (x.empty()) throw DataError("rmse: empty input");
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ss += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(ss / double(x.size()));
}

std::vector<double> average_ranks(const std::vector<double>& v) {
    std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        double r = (double(i) + double(j)) / 2.0 + 1.0;  // mean of 1-based ranks
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double srocc(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("srocc: length mismatch");
    if (x.size() < 3) throw DataError("srocc: need at least 3 pairs");
    return plcc(average_ranks(x), average_ranks(y));
}

double krocc(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("krocc: length mismatch");
    std::size_t n = x.size();
    if (n < 3) throw DataError("krocc: need at least 3 pairs");
    long long concordant_minus_discordant = 0;
    long long ties_x = 0, ties_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) {
                ++ties_x;
                ++ties_y;
            } else if (dx == 0.0) {
                ++ties_x;
            } else if (dy == 0.0) {
                ++ties_y;
            } else {
                concordant_minus_discordant += (dx * dy > 0.0) ? 1 : -1;
            }
        }
    }
    long long n0 = (long long)(n) * (long long)(n - 1) / 2;
    double denom = std::sqrt(double(n0 - ties_x)) * std::sqrt(double(n0 - ties_y));
    if (denom == 0.0) throw NumericError("krocc: all values tied");
    return double(concordant_minus_discordant) / denom;
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 1e-15;
    constexpr double tiny = 1e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw NumericError("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw DataError("incomplete_beta: a, b must be positive");
    if (x < 0.0 || x > 1.0) throw DataError("incomplete_beta: x outside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log(1.0 - x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double t_tail(double t, double df) {
    if (df < 1.0) throw DataError("t_tail: df must be >= 1");
    if (t < 0.0) return 1.0 - t_tail(-t, df);
    double p = incomplete_beta(df / 2.0, 0.5, df / (df + t * t)) / 2.0;
    return p;
}

double f_tail(double f, double df1, double df2) {
    if (df1 < 1.0 || df2 < 1.0) throw DataError("f_tail: df must be >= 1");
    if (f <= 0.0) return 1.0;
    return incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

namespace {

// Solve tail(q) = p for q on a monotone decreasing tail function.
template <typename Tail>
double invert_tail(Tail tail, double p, double lo, double hi) {
    while (tail(hi) > p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw NumericError("quantile: bracket overflow");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (tail(mid) > p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * std::max(1.0, std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double t_quantile(double p, double df) {
    if (p <= 0.0 || p >= 1.0) throw DataError("t_quantile: p outside (0, 1)");
    if (p == 0.5) return 0.0;
    if (p > 0.5) return -t_quantile(1.0 - p, df);
    return invert_tail([df](double t) { return t_tail(t, df); }, p, 0.0, 2.0);
}

double f_quantile(double p, double df1, double df2) {
    if (p <= 0.0 || p >= 1.0) throw DataError("f_quantile: p outside (0, 1)");
    return invert_tail([df1, df2](double f) { return f_tail(f, df1, df2); }, p, 0.0, 2.0);
}

}  // namespace pcqa
