// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pcqa/projection.hpp"

namespace pcqa {

struct SampleInfo {
    std::string sample_id;
    std::string sequence;
    int gqp = 0;
    int tqp = 0;
};

/// Raw opinion scores (0-100), subjects x samples, NaN = not rated.
/// Reference ratings (the lossless gqp=0,tqp=0 rows) are kept per
/// (subject, sequence) for the differential step.
struct RatingMatrix {
    std::vector<std::string> subjects;
    std::vector<SampleInfo> samples;
    std::vector<std::string> sequences;
    std::vector<std::vector<double>> scores;      // [subject][sample]
    std::vector<std::vector<double>> ref_scores;  // [subject][sequence]

    std::size_t n_subjects() const { return subjects.size(); }
    std::size_t n_samples() const { return samples.size(); }
};

/// Ratings CSV: header subject_id,sample_id,sequence,gqp,tqp,score.
/// Rows with gqp=0 and tqp=0 are the lossless reference ratings.
RatingMatrix parse_ratings_csv(std::istream& in);
RatingMatrix load_ratings_csv(const std::string& path);

/// d[i][j] = s_ref[i][seq(j)] - s[i][j]. Throws DataError (naming the first
/// offending subject/sequence) when a rated sample has no reference rating.
std::vector<std::vector<double>> differential_scores(const RatingMatrix& r);

/// (x - mean) / std with the K-1 std. Throws on length < 2 or zero variance.
std::vector<double> zscore(const std::vector<double>& values);

/// Per-subject screening on the between-subject Z statistic: a subject is
/// rejected iff both the range and the std of their Z values exceed the
/// thresholds.
std::vector<bool> screen_subjects(const std::vector<std::vector<double>>& d,
                                  double range_thresh = 7.0, double std_thresh = 1.2);

/// Two-sided Grubbs critical value for n ratings at significance alpha.
double grubbs_critical(double alpha, int n);

struct GrubbsResult {
    std::vector<bool> kept;      // per sample
    std::vector<bool> zero_std;  // kept but the statistic was undefined
};

/// Single-pass Grubbs test per sample over the retained subjects' scores.
GrubbsResult grubbs_filter(const std::vector<std::vector<double>>& d,
                           const std::vector<bool>& kept_subjects,
                           double alpha = 0.025);

struct DmosEntry {
    std::string sample_id;
    double dmos;      // NaN when the sample was rejected
    int n_subjects;   // raters contributing to this sample
    std::string flags;  // "", "grubbs", "zero_std"
};

struct DmosTable {
    std::vector<DmosEntry> entries;
    std::vector<bool> kept_subjects;
    std::vector<bool> kept_samples;
};

struct DmosOptions {
    double range_thresh = 7.0;
    double std_thresh = 1.2;
    double grubbs_alpha = 0.025;
};

/// Full pipeline: differential scores -> subject screening -> Grubbs ->
/// per-subject Z-scores -> sigmoid -> mean over subjects.
DmosTable compute_dmos(const RatingMatrix& r, const DmosOptions& opts = {});

/// Per-observation DMOS values (subject level), for downstream ANOVA.
struct DmosObservation {
    std::size_t subject;
    std::size_t sample;
    double dmos;
};
std::vector<DmosObservation> dmos_observations(const RatingMatrix& r,
                                               const DmosOptions& opts = {});

void write_dmos_csv(const RatingMatrix& r, const DmosTable& table, std::ostream& out);

struct AnovaRow {
    std::string source;
    double ss = 0.0;
    int df = 0;
    double ms = 0.0;
    double f = 0.0;
    double p = 0.0;
    double f_crit = 0.0;
    bool has_f = false;
};

struct AnovaTable {
    AnovaRow factor_a, factor_b, interaction, error, total;
};

struct AnovaObservation {
    int a_level;
    int b_level;
    double value;
};

/// Balanced two-factor ANOVA with interaction. Throws DataError on an
/// unbalanced design or a design without replicates.
AnovaTable two_way_anova(const std::vector<AnovaObservation>& observations,
                         double crit_alpha = 0.05);

/// Spatial information: max over the six views of the std of the Sobel
/// gradient magnitude on luma.
double spatial_information(const ViewSet& views);

/// Colorfulness (opponent-color statistic), averaged over the six views and
/// computed over occupied pixels only.
double colorfulness(const ViewSet& views);

}  // namespace pcqa
