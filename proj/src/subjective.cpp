// SPDX-License-Identifier: Apache-2.0
#include "pcqa/subjective.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "pcqa/errors.hpp"
#include "pcqa/image.hpp"
#include "pcqa/stats.hpp"

namespace pcqa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream iss(line);
    while (std::getline(iss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

RatingMatrix parse_ratings_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty ratings CSV", 0);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split_csv_line(line);
    const char* required[6] = {"subject_id", "sample_id", "sequence",
                               "gqp",        "tqp",       "score"};
    int col[6];
    for (int i = 0; i < 6; ++i) {
        auto it = std::find(header.begin(), header.end(), required[i]);
        if (it == header.end())
            throw ParseError(std::string("ratings CSV missing column '") + required[i] +
                                 "'",
                             0);
        col[i] = int(it - header.begin());
    }

    RatingMatrix r;
    std::map<std::string, std::size_t> subject_idx, sample_idx, sequence_idx;
    struct RawRow {
        std::size_t subject, sample;
        double score;
    };
    struct RefRow {
        std::size_t subject, sequence;
        double score;
    };
    std::vector<RawRow> raw;
    std::vector<RefRow> refs;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() < header.size())
            throw ParseError("ratings CSV row " + std::to_string(line_no) +
                                 " has too few fields",
                             line_no);
        const std::string& subject = fields[std::size_t(col[0])];
        const std::string& sample = fields[std::size_t(col[1])];
        const std::string& sequence = fields[std::size_t(col[2])];
        int gqp, tqp;
        double score;
        try {
            gqp = std::stoi(fields[std::size_t(col[3])]);
            tqp = std::stoi(fields[std::size_t(col[4])]);
            score = std::stod(fields[std::size_t(col[5])]);
        } catch (const std::exception&) {
            throw ParseError("ratings CSV row " + std::to_string(line_no) +
                                 ": non-numeric gqp/tqp/score",
                             line_no);
        }
        if (score < 0.0 || score > 100.0)
            throw ParseError("ratings CSV row " + std::to_string(line_no) +
                                 ": score outside [0, 100]",
                             line_no);

        auto [sub_it, _1] = subject_idx.try_emplace(subject, subject_idx.size());
        if (sub_it->second == r.subjects.size()) r.subjects.push_back(subject);
        auto [seq_it, _2] = sequence_idx.try_emplace(sequence, sequence_idx.size());
        if (seq_it->second == r.sequences.size()) r.sequences.push_back(sequence);

        if (gqp == 0 && tqp == 0) {
            refs.push_back({sub_it->second, seq_it->second, score});
        } else {
            auto [smp_it, inserted] = sample_idx.try_emplace(sample, sample_idx.size());
            if (inserted) r.samples.push_back({sample, sequence, gqp, tqp});
            raw.push_back({sub_it->second, smp_it->second, score});
        }
    }

    r.scores.assign(r.n_subjects(), std::vector<double>(r.n_samples(), kNaN));
    r.ref_scores.assign(r.n_subjects(), std::vector<double>(r.sequences.size(), kNaN));
    for (const RawRow& row : raw) r.scores[row.subject][row.sample] = row.score;
    for (const RefRow& row : refs) r.ref_scores[row.subject][row.sequence] = row.score;
    return r;
}

RatingMatrix load_ratings_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return parse_ratings_csv(in);
}

std::vector<std::vector<double>> differential_scores(const RatingMatrix& r) {
    std::map<std::string, std::size_t> seq_idx;
    for (std::size_t s = 0; s < r.sequences.size(); ++s) seq_idx[r.sequences[s]] = s;

    std::vector<std::vector<double>> d(r.n_subjects(),
                                       std::vector<double>(r.n_samples(), kNaN));
    for (std::size_t i = 0; i < r.n_subjects(); ++i) {
        for (std::size_t j = 0; j < r.n_samples(); ++j) {
            double s = r.scores[i][j];
            if (std::isnan(s)) continue;
            std::size_t seq = seq_idx.at(r.samples[j].sequence);
            double ref = r.ref_scores[i][seq];
            if (std::isnan(ref))
                throw DataError("missing reference rating for subject '" + r.subjects[i] +
                                "', sequence '" + r.samples[j].sequence + "'");
            d[i][j] = ref - s;
        }
    }
    return d;
}

std::vector<double> zscore(const std::vector<double>& values) {
    if (values.size() < 2) throw DataError("zscore: need at least 2 values");
    double m = mean(values);
    double sd = sample_std(values);
    if (sd == 0.0) throw NumericError("zscore: zero variance");
    std::vector<double> z(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) z[i] = (values[i] - m) / sd;
    return z;
}

std::vector<bool> screen_subjects(const std::vector<std::vector<double>>& d,
                                  double range_thresh, double std_thresh) {
    std::size_t n_subjects = d.size();
    std::size_t n_samples = n_subjects ? d[0].size() : 0;

    // Between-subject Z per sample, collected per subject.
    std::vector<std::vector<double>> per_subject(n_subjects);
    for (std::size_t j = 0; j < n_samples; ++j) {
        std::vector<double> col;
        std::vector<std::size_t> who;
        for (std::size_t i = 0; i < n_subjects; ++i) {
            if (!std::isnan(d[i][j])) {
                col.push_back(d[i][j]);
                who.push_back(i);
            }
        }
        if (col.size() < 2) continue;
        double sd = sample_std(col);
        if (sd == 0.0) continue;
        double m = mean(col);
        for (std::size_t k = 0; k < col.size(); ++k)
            per_subject[who[k]].push_back((col[k] - m) / sd);
    }

    std::vector<bool> kept(n_subjects, true);
    for (std::size_t i = 0; i < n_subjects; ++i) {
        if (per_subject[i].size() < 2) continue;
        auto [lo, hi] = std::minmax_element(per_subject[i].begin(), per_subject[i].end());
        double range = *hi - *lo;
        double sd = sample_std(per_subject[i]);
        if (range > range_thresh && sd > std_thresh) kept[i] = false;
    }
    return kept;
}

double grubbs_critical(double alpha, int n) {
    if (n < 3) throw DataError("grubbs_critical: n must be >= 3");
    if (alpha <= 0.0 || alpha >= 1.0) throw DataError("grubbs_critical: bad alpha");
    double t = t_quantile(alpha / (2.0 * n), double(n - 2));
    return (double(n - 1) / std::sqrt(double(n))) *
           std::sqrt(t * t / (double(n - 2) + t * t));
}

GrubbsResult grubbs_filter(const std::vector<std::vector<double>>& d,
                           const std::vector<bool>& kept_subjects, double alpha) {
    std::size_t n_subjects = d.size();
    std::size_t n_samples = n_subjects ? d[0].size() : 0;
    GrubbsResult result;
    result.kept.assign(n_samples, true);
    result.zero_std.assign(n_samples, false);

    for (std::size_t j = 0; j < n_samples; ++j) {
        std::vector<double> col;
        for (std::size_t i = 0; i < n_subjects; ++i)
            if (kept_subjects[i] && !std::isnan(d[i][j])) col.push_back(d[i][j]);
        if (col.size() < 3) {
            result.zero_std[j] = true;  // statistic undefined, keep and flag
            continue;
        }
        double m = mean(col);
        double sd = sample_std(col);
        if (sd == 0.0) {
            result.zero_std[j] = true;
            continue;
        }
        double g = 0.0;
        for (double v : col) g = std::max(g, std::fabs(v - m) / sd);
        if (g > grubbs_critical(alpha, int(col.size()))) result.kept[j] = false;
    }
    return result;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Subject-level DMOS after screening + Grubbs. dmos[i][j] is NaN for
// rejected subjects/samples and missing ratings.
std::vector<std::vector<double>> subject_dmos(const std::vector<std::vector<double>>& d,
                                              const std::vector<bool>& kept_subjects,
                                              const std::vector<bool>& kept_samples) {
    std::size_t n_subjects = d.size();
    std::size_t n_samples = n_subjects ? d[0].size() : 0;
    std::vector<std::vector<double>> out(n_subjects,
                                         std::vector<double>(n_samples, kNaN));
    for (std::size_t i = 0; i < n_subjects; ++i) {
        if (!kept_subjects[i]) continue;
        std::vector<double> vals;
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < n_samples; ++j) {
            if (kept_samples[j] && !std::isnan(d[i][j])) {
                vals.push_back(d[i][j]);
                idx.push_back(j);
            }
        }
        if (vals.empty()) continue;
        std::vector<double> z = zscore(vals);
        for (std::size_t k = 0; k < z.size(); ++k) out[i][idx[k]] = sigmoid(z[k]);
    }
    return out;
}

}  // namespace

DmosTable compute_dmos(const RatingMatrix& r, const DmosOptions& opts) {
    auto d = differential_scores(r);
    DmosTable table;
    table.kept_subjects = screen_subjects(d, opts.range_thresh, opts.std_thresh);
    GrubbsResult grubbs = grubbs_filter(d, table.kept_subjects, opts.grubbs_alpha);
    table.kept_samples = grubbs.kept;

    auto dm = subject_dmos(d, table.kept_subjects, table.kept_samples);
    table.entries.reserve(r.n_samples());
    for (std::size_t j = 0; j < r.n_samples(); ++j) {
        DmosEntry e;
        e.sample_id = r.samples[j].sample_id;
        if (!grubbs.kept[j]) {
            e.dmos = kNaN;
            e.n_subjects = 0;
            e.flags = "grubbs";
        } else {
            double sum = 0.0;
            int n = 0;
            for (std::size_t i = 0; i < r.n_subjects(); ++i) {
                if (!std::isnan(dm[i][j])) {
                    sum += dm[i][j];
                    ++n;
                }
            }
            e.dmos = n > 0 ? sum / double(n) : kNaN;
            e.n_subjects = n;
            e.flags = grubbs.zero_std[j] ? "zero_std" : "";
        }
        table.entries.push_back(e);
    }
    return table;
}

std::vector<DmosObservation> dmos_observations(const RatingMatrix& r,
                                               const DmosOptions& opts) {
    auto d = differential_scores(r);
    auto kept_subjects = screen_subjects(d, opts.range_thresh, opts.std_thresh);
    auto grubbs = grubbs_filter(d, kept_subjects, opts.grubbs_alpha);
    auto dm = subject_dmos(d, kept_subjects, grubbs.kept);

    std::vector<DmosObservation> obs;
    for (std::size_t i = 0; i < dm.size(); ++i)
        for (std::size_t j = 0; j < dm[i].size(); ++j)
            if (!std::isnan(dm[i][j])) obs.push_back({i, j, dm[i][j]});
    return obs;
}

void write_dmos_csv(const RatingMatrix& r, const DmosTable& table, std::ostream& out) {
    out << "sample_id,dmos,n_subjects,flags\n";
    out.precision(12);
    for (const DmosEntry& e : table.entries) {
        out << e.sample_id << ',';
        if (!std::isnan(e.dmos)) out << e.dmos;
        out << ',' << e.n_subjects << ',' << e.flags << '\n';
    }
}

AnovaTable two_way_anova(const std::vector<AnovaObservation>& observations,
                         double crit_alpha) {
    if (observations.empty()) throw DataError("two_way_anova: no observations");

    std::vector<int> a_levels, b_levels;
    for (const auto& o : observations) {
        a_levels.push_back(o.a_level);
        b_levels.push_back(o.b_level);
    }
    auto uniq = [](std::vector<int>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(a_levels);
    uniq(b_levels);
    std::size_t a = a_levels.size(), b = b_levels.size();
    if (a < 2 || b < 2) throw DataError("two_way_anova: need >= 2 levels per factor");

    std::map<std::pair<int, int>, std::vector<double>> cells;
    for (const auto& o : observations) cells[{o.a_level, o.b_level}].push_back(o.value);
    if (cells.size() != a * b)
        throw DataError("two_way_anova: incomplete design (empty cells)");
    std::size_t r = cells.begin()->second.size();
    for (const auto& [_, v] : cells)
        if (v.size() != r) throw DataError("two_way_anova: unbalanced design");
    if (r < 2) throw DataError("two_way_anova: need >= 2 replicates per cell");

    double grand = 0.0;
    for (const auto& o : observations) grand += o.value;
    grand /= double(observations.size());

    std::map<int, double> a_mean, b_mean;
    for (int al : a_levels) a_mean[al] = 0.0;
    for (int bl : b_levels) b_mean[bl] = 0.0;
    for (const auto& o : observations) {
        a_mean[o.a_level] += o.value;
        b_mean[o.b_level] += o.value;
    }
    for (auto& [_, v] : a_mean) v /= double(b * r);
    for (auto& [_, v] : b_mean) v /= double(a * r);

    double ss_a = 0.0, ss_b = 0.0, ss_ab = 0.0, ss_e = 0.0, ss_t = 0.0;
    for (const auto& [al, m] : a_mean) ss_a += (m - grand) * (m - grand);
    ss_a *= double(b * r);
    for (const auto& [bl, m] : b_mean) ss_b += (m - grand) * (m - grand);
    ss_b *= double(a * r);

    for (const auto& [key, vals] : cells) {
        double cell_mean = 0.0;
        for (double v : vals) cell_mean += v;
        cell_mean /= double(vals.size());
        double dev = cell_mean - a_mean[key.first] - b_mean[key.second] + grand;
        ss_ab += double(r) * dev * dev;
        for (double v : vals) ss_e += (v - cell_mean) * (v - cell_mean);
    }
    for (const auto& o : observations) ss_t += (o.value - grand) * (o.value - grand);

    int df_a = int(a) - 1;
    int df_b = int(b) - 1;
    int df_ab = df_a * df_b;
    int df_e = int(a * b) * (int(r) - 1);
    int df_t = int(observations.size()) - 1;

    double ms_e = ss_e / double(df_e);
    auto effect_row = [&](const std::string& name, double ss, int df) {
        AnovaRow row{name, ss, df, ss / double(df), 0.0, 0.0, 0.0, true};
        // Degenerate zero-error designs: F pinned so p stays well defined.
        if (ms_e == 0.0)
            row.f = row.ms > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        else
            row.f = row.ms / ms_e;
        row.p = std::isinf(row.f) ? 0.0 : f_tail(row.f, double(df), double(df_e));
        row.f_crit = f_quantile(crit_alpha, double(df), double(df_e));
        return row;
    };

    AnovaTable table;
    table.factor_a = effect_row("factor_a", ss_a, df_a);
    table.factor_b = effect_row("factor_b", ss_b, df_b);
    table.interaction = effect_row("interaction", ss_ab, df_ab);
    table.error = {"error", ss_e, df_e, ms_e, 0.0, 0.0, 0.0, false};
    table.total = {"total", ss_t, df_t, 0.0, 0.0, 0.0, 0.0, false};
    return table;
}

namespace {

double view_luma(const View& v, int x, int y) {
    int xi = std::clamp(x, 0, v.width - 1);
    int yi = std::clamp(y, 0, v.height - 1);
    std::size_t idx = 3 * (std::size_t(yi) * std::size_t(v.width) + std::size_t(xi));
    return 0.2126 * v.rgb[idx] + 0.7152 * v.rgb[idx + 1] + 0.0722 * v.rgb[idx + 2];
}

}  // namespace

double spatial_information(const ViewSet& views) {
    double si = 0.0;
    for (const View& v : views.views) {
        if (v.width < 1 || v.height < 1) continue;
        // Sobel magnitude over the full raster; clamp-to-edge border.
        std::vector<double> mag;
        mag.reserve(v.pixel_count());
        for (int y = 0; y < v.height; ++y) {
            for (int x = 0; x < v.width; ++x) {
                double gx = (view_luma(v, x + 1, y - 1) - view_luma(v, x - 1, y - 1)) +
                            2.0 * (view_luma(v, x + 1, y) - view_luma(v, x - 1, y)) +
                            (view_luma(v, x + 1, y + 1) - view_luma(v, x - 1, y + 1));
                double gy = (view_luma(v, x - 1, y + 1) - view_luma(v, x - 1, y - 1)) +
                            2.0 * (view_luma(v, x, y + 1) - view_luma(v, x, y - 1)) +
                            (view_luma(v, x + 1, y + 1) - view_luma(v, x + 1, y - 1));
                mag.push_back(std::sqrt(gx * gx + gy * gy));
            }
        }
        double m = 0.0;
        for (double g : mag) m += g;
        m /= double(mag.size());
        double var = 0.0;
        for (double g : mag) var += (g - m) * (g - m);
        si = std::max(si, std::sqrt(var / double(mag.size())));
    }
    return si;
}

double colorfulness(const ViewSet& views) {
    double sum = 0.0;
    int n_views = 0;
    for (const View& v : views.views) {
        std::vector<double> rg, yb;
        for (std::size_t i = 0; i < v.pixel_count(); ++i) {
            if (!v.mask[i]) continue;
            double r = v.rgb[3 * i], g = v.rgb[3 * i + 1], b = v.rgb[3 * i + 2];
            rg.push_back(r - g);
            yb.push_back((r + g) / 2.0 - b);
        }
        if (rg.empty()) continue;
        auto stats = [](const std::vector<double>& x) {
            double m = 0.0;
            for (double t : x) m += t;
            m /= double(x.size());
            double var = 0.0;
            for (double t : x) var += (t - m) * (t - m);
            return std::pair<double, double>{m, var / double(x.size())};
        };
        auto [mu_rg, var_rg] = stats(rg);
        auto [mu_yb, var_yb] = stats(yb);
        sum += std::sqrt(var_rg + var_yb) + 0.3 * std::sqrt(mu_rg * mu_rg + mu_yb * mu_yb);
        ++n_views;
    }
    return n_views > 0 ? sum / double(n_views) : 0.0;
}

}  // namespace pcqa
