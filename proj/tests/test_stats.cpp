// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pcqa/errors.hpp"
#include "pcqa/stats.hpp"

using namespace pcqa;

namespace {

// 20-point series with frozen reference correlations (independent numeric
// oracle, full double precision).
const std::vector<double> kX = {
    3.745401, 9.507143, 7.319939, 5.986585, 1.560186, 1.559945, 0.580836,
    8.661761, 6.01115,  7.080726, 0.205845, 9.699099, 8.324426, 2.123391,
    1.81825,  1.834045, 3.042422, 5.247564, 4.31945,  2.912291};
const std::vector<double> kY = {
    0.596118, 7.283495, 3.307909, 1.366002, 4.023428,  0.640409, 0.541642,
    3.213736, 3.11904,  5.178353, -2.157896, 7.540765, 4.625821, 0.902986,
    0.069362, 4.988388, 2.102701, 1.557873,  4.668705, -0.403084};

// Tau-b straight from the definition, concordance counting over all pairs.
double krocc_definition(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx == 0 && dy == 0) continue;
            if (dx == 0) { ++ties_x; continue; }
            if (dy == 0) { ++ties_y; continue; }
            if ((dx > 0) == (dy > 0)) ++concordant; else ++discordant;
        }
    double n0 = double(n) * double(n - 1) / 2.0;
    // pair counts per tie group
    auto tie_pairs = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        double total = 0.0;
        std::size_t run = 1;
        for (std::size_t i = 1; i <= v.size(); ++i) {
            if (i < v.size() && v[i] == v[i - 1]) { ++run; continue; }
            total += double(run) * double(run - 1) / 2.0;
            run = 1;
        }
        return total;
    };
    double n1 = tie_pairs(x), n2 = tie_pairs(y);
    return double(concordant - discordant) / std::sqrt((n0 - n1) * (n0 - n2));
}

}  // namespace

TEST_CASE("plcc/rmse: identities") {
    std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> neg = {-1, -2, -3, -4, -5};
    CHECK(plcc(x, x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(plcc(x, neg) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(rmse(x, x) == 0.0);
    CHECK(rmse({0, 0}, {3, 4}) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-15));
}

TEST_CASE("plcc: zero variance rejected") {
    CHECK_THROWS_AS(plcc({1, 1, 1}, {1, 2, 3}), NumericError);
}

TEST_CASE("correlations on the frozen 20-point series") {
    CHECK(plcc(kX, kY) == doctest::Approx(0.7127225368842321).epsilon(1e-12));
    CHECK(srocc(kX, kY) == doctest::Approx(0.6796992481203006).epsilon(1e-12));
    CHECK(krocc(kX, kY) == doctest::Approx(0.5368421052631579).epsilon(1e-12));
    CHECK(rmse(kX, kY) == doctest::Approx(2.871598234781321).epsilon(1e-12));
}

TEST_CASE("plcc: invariant under positive affine transforms") {
    std::vector<double> x2(kX.size()), y2(kY.size());
    for (std::size_t i = 0; i < kX.size(); ++i) {
        x2[i] = 3.5 * kX[i] - 7.0;
        y2[i] = 0.25 * kY[i] + 100.0;
    }
    CHECK(plcc(x2, y2) == doctest::Approx(plcc(kX, kY)).epsilon(1e-13));
}

TEST_CASE("average_ranks: ties share the mean rank") {
    auto r = average_ranks({10, 20, 20, 30});
    REQUIRE(r.size() == 4);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 2.5);
    CHECK(r[2] == 2.5);
    CHECK(r[3] == 4.0);
}

TEST_CASE("srocc: monotone transforms and reversal") {
    std::vector<double> x = {0.1, 2.5, 3.7, 9.2, 11.0};
    std::vector<double> y(x.size()), rev(x.rbegin(), x.rend());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::exp(x[i]);  // monotone
    CHECK(srocc(x, y) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(srocc(x, rev) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("srocc equals plcc of average ranks exactly") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> val(0, 9);  // heavy ties
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(40), y(40);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = val(rng);
            y[i] = val(rng);
        }
        CHECK(srocc(x, y) == plcc(average_ranks(x), average_ranks(y)));
    }
}

TEST_CASE("krocc: worked 3-point example") {
    CHECK(krocc({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(krocc({1, 2, 3}, {1, 3, 2}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("krocc: matches the pairwise definition on tie-heavy vectors") {
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> val(0, 5);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> x(30), y(30);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = val(rng);
            y[i] = val(rng);
        }
        double got = krocc(x, y);
        double want = krocc_definition(x, y);
        CHECK(got == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("t_tail / f_tail: symmetry and frozen oracle values") {
    for (double df : {1.0, 5.0, 30.0, 100.0})
        CHECK(t_tail(0.0, df) == doctest::Approx(0.5).epsilon(1e-12));
    for (double d : {2.0, 7.0, 40.0})
        CHECK(f_tail(1.0, d, d) == doctest::Approx(0.5).epsilon(1e-10));

    // frozen against an independent numeric oracle
    CHECK(t_tail(1.5, 7) == doctest::Approx(0.08864924349498501).epsilon(1e-10));
    CHECK(f_tail(2.5, 3, 12) == doctest::Approx(0.10915471239500632).epsilon(1e-10));
}

TEST_CASE("t_quantile: frozen value and round-trip") {
    CHECK(t_quantile(0.025, 10) == doctest::Approx(2.2281388519649385).epsilon(1e-10));
    for (double x : {0.3, 1.1, 2.7})
        for (double df : {3.0, 12.0, 60.0})
            CHECK(t_quantile(t_tail(x, df), df) == doctest::Approx(x).epsilon(1e-8));
}

TEST_CASE("f_quantile: frozen large-df values") {
    CHECK(f_quantile(0.05, 2, 6111) == doctest::Approx(2.997201320441985).epsilon(1e-8));
    CHECK(f_quantile(0.05, 4, 6111) == doctest::Approx(2.3733859040228413).epsilon(1e-8));
    // round-trip
    CHECK(f_tail(f_quantile(0.05, 3, 20), 3, 20) == doctest::Approx(0.05).epsilon(1e-8));
}

TEST_CASE("incomplete_beta: endpoints and symmetry") {
    CHECK(incomplete_beta(2.5, 3.5, 0.0) == 0.0);
    CHECK(incomplete_beta(2.5, 3.5, 1.0) == 1.0);
    // I_x(a,b) = 1 - I_{1-x}(b,a)
    for (double x : {0.1, 0.4, 0.8})
        CHECK(incomplete_beta(2.0, 5.0, x) ==
              doctest::Approx(1.0 - incomplete_beta(5.0, 2.0, 1.0 - x)).epsilon(1e-12));
}

TEST_CASE("stats: domain errors") {
    CHECK_THROWS_AS(t_quantile(0.0, 5), DataError);
    CHECK_THROWS_AS(t_quantile(1.0, 5), DataError);
    CHECK_THROWS_AS(t_tail(1.0, 0), DataError);
    CHECK_THROWS_AS(incomplete_beta(2, 2, -0.1), DataError);
}
