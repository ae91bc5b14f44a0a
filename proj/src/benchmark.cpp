// SPDX-License-Identifier: Apache-2.0
#include "pcqa/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "pcqa/errors.hpp"
#include "pcqa/stats.hpp"

namespace pcqa {

double logistic_eval(const LogisticParams& params, double x) {
    const auto& b = params.beta;
    return b[0] * (0.5 - 1.0 / (1.0 + std::exp(b[1] * (x - b[2])))) + b[3] * x + b[4];
}

namespace {

double sse_of(const std::array<double, 5>& b, const std::vector<double>& x,
              const std::vector<double>& y) {
    LogisticParams p{b, true, 0.0};
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = logistic_eval(p, x[i]) - y[i];
        s += r * r;
    }
    return s;
}

// Solve the 5x5 system A d = g in place; returns false when singular.
bool solve5(double a[5][5], double g[5], double d[5]) {
    int perm[5] = {0, 1, 2, 3, 4};
    for (int col = 0; col < 5; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 5; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-300) return false;
        std::swap(perm[col], perm[pivot]);
        for (int k = 0; k < 5; ++k) std::swap(a[col][k], a[pivot][k]);
        std::swap(g[col], g[pivot]);
        for (int r = col + 1; r < 5; ++r) {
            double f = a[r][col] / a[col][col];
            for (int k = col; k < 5; ++k) a[r][k] -= f * a[col][k];
            g[r] -= f * g[col];
        }
    }
    for (int col = 4; col >= 0; --col) {
        double s = g[col];
        for (int k = col + 1; k < 5; ++k) s -= a[col][k] * d[k];
        d[col] = s / a[col][col];
    }
    return true;
}

std::array<double, 5> initial_params(const std::vector<double>& x,
                                     const std::vector<double>& y) {
    std::vector<double> xs = x;
    std::sort(xs.begin(), xs.end());
    double median_x = xs[xs.size() / 2];
    auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
    auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
    double span_x = *xmax_it - *xmin_it;

    double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    double corr_sign = sxy >= 0.0 ? 1.0 : -1.0;

    return {*ymax_it - *ymin_it, corr_sign * 4.0 / span_x, median_x, slope, my};
}

}  // namespace

namespace {

LogisticParams fit_from(const std::array<double, 5>& b0, const std::vector<double>& x,
                        const std::vector<double>& y) {
    std::size_t n = x.size();
    std::array<double, 5> b = b0;
    double sse = sse_of(b, x, y);
    double lambda = 1e-3;
    bool converged = false;

    for (int iter = 0; iter < 500; ++iter) {
        // Normal equations with analytic Jacobian.
        double jtj[5][5] = {};
        double jtr[5] = {};
        for (std::size_t i = 0; i < n; ++i) {
            double t = b[1] * (x[i] - b[2]);
            double u = 1.0 / (1.0 + std::exp(t));  // = 1 - sigmoid(t)
            double q = b[0] * (0.5 - u) + b[3] * x[i] + b[4];
            double r = q - y[i];
            double du_dt = -u * (1.0 - u);
            double jac[5] = {0.5 - u, -b[0] * du_dt * (x[i] - b[2]), b[0] * du_dt * b[1],
                             x[i], 1.0};
            for (int p = 0; p < 5; ++p) {
                jtr[p] += jac[p] * r;
                for (int q2 = 0; q2 < 5; ++q2) jtj[p][q2] += jac[p] * jac[q2];
            }
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 30; ++attempt) {
            double a[5][5];
            double g[5];
            for (int p = 0; p < 5; ++p) {
                for (int q2 = 0; q2 < 5; ++q2) a[p][q2] = jtj[p][q2];
                a[p][p] += lambda * (jtj[p][p] > 0.0 ? jtj[p][p] : 1.0);
                g[p] = -jtr[p];
            }
            double step[5];
            if (!solve5(a, g, step)) {
                lambda *= 10.0;
                continue;
            }
            std::array<double, 5> trial = b;
            for (int p = 0; p < 5; ++p) trial[p] += step[p];
            double trial_sse = sse_of(trial, x, y);
            if (trial_sse <= sse) {
                double rel = sse > 0.0 ? (sse - trial_sse) / sse : 0.0;
                b = trial;
                sse = trial_sse;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                if (rel < 1e-10) converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (converged || !stepped) {
            converged = converged || !stepped;
            break;
        }
    }

    return {b, converged, sse};
}

}  // namespace

LogisticParams fit_logistic(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("fit_logistic: length mismatch");
    if (x.size() < 5) throw DataError("fit_logistic: need at least 5 points");
    auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    if (*xmin == *xmax) throw DataError("fit_logistic: objective scores all equal");

    // Two deterministic starts: the sigmoid-shaped initialization, and the
    // nested affine model (beta1 = 0), which the optimizer can otherwise only
    // approach along a flat valley. Keep the better fit.
    LogisticParams best = fit_from(initial_params(x, y), x, y);
    std::array<double, 5> affine = initial_params(x, y);
    affine[0] = 0.0;
    affine[4] = mean(y) - affine[3] * mean(x);
    LogisticParams alt = fit_from(affine, x, y);
    return alt.sse < best.sse ? alt : best;
}

BenchmarkRow evaluate_metric(const std::vector<double>& objective,
                             const std::vector<double>& dmos) {
    if (objective.size() != dmos.size())
        throw DataError("evaluate_metric: length mismatch");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < objective.size(); ++i) {
        if (std::isfinite(objective[i]) && std::isfinite(dmos[i])) {
            x.push_back(objective[i]);
            y.push_back(dmos[i]);
        }
    }
    if (x.size() < 5) throw DataError("evaluate_metric: fewer than 5 finite pairs");

    BenchmarkRow row;
    row.fit = fit_logistic(x, y);
    std::vector<double> pred(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) pred[i] = logistic_eval(row.fit, x[i]);
    row.plcc = plcc(pred, y);
    row.rmse = rmse(pred, y);
    row.srocc = srocc(x, y);
    row.krocc = krocc(x, y);
    row.n = int(x.size());
    return row;
}

namespace {

std::string round4(double v) {
    if (!std::isfinite(v)) return "inf";
    std::ostringstream oss;
    oss << std::fixed << std::setprecision(4) << v;
    std::string s = oss.str();
    if (s == "-0.0000") s = "0.0000";
    return s;
}

}  // namespace

void generate_report(std::vector<BenchmarkRow> rows, const std::string& csv_path,
                     const std::string& json_path) {
    if (rows.empty()) throw DataError("generate_report: no rows");
    std::sort(rows.begin(), rows.end(), [](const BenchmarkRow& a, const BenchmarkRow& b) {
        return std::tie(a.session, a.metric, a.pooling) <
               std::tie(b.session, b.metric, b.pooling);
    });

    std::ofstream csv(csv_path);
    if (!csv) throw DataError("cannot write '" + csv_path + "'");
    csv << "session,metric,pooling,gamma,plcc,srocc,krocc,rmse,n,b1,b2,b3,b4,b5\n";
    nlohmann::json json_rows = nlohmann::json::array();
    for (const BenchmarkRow& r : rows) {
        csv << r.session << ',' << r.metric << ',' << r.pooling << ',' << round4(r.gamma)
            << ',' << round4(r.plcc) << ',' << round4(r.srocc) << ',' << round4(r.krocc)
            << ',' << round4(r.rmse) << ',' << r.n;
        for (double beta : r.fit.beta) csv << ',' << round4(beta);
        csv << '\n';

        nlohmann::json j;
        j["session"] = r.session;
        j["metric"] = r.metric;
        j["pooling"] = r.pooling;
        j["gamma"] = round4(r.gamma);
        j["plcc"] = round4(r.plcc);
        j["srocc"] = round4(r.srocc);
        j["krocc"] = round4(r.krocc);
        j["rmse"] = round4(r.rmse);
        j["n"] = r.n;
        j["beta"] = {round4(r.fit.beta[0]), round4(r.fit.beta[1]), round4(r.fit.beta[2]),
                     round4(r.fit.beta[3]), round4(r.fit.beta[4])};
        json_rows.push_back(j);
    }

    std::ofstream json_out(json_path);
    if (!json_out) throw DataError("cannot write '" + json_path + "'");
    json_out << json_rows.dump(2) << '\n';
}

}  // namespace pcqa
