// SPDX-License-Identifier: Apache-2.0
//
// pcqa: command-line front end for the point-cloud quality toolkit.
#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pcqa/benchmark.hpp"
#include "pcqa/errors.hpp"
#include "pcqa/iqa.hpp"
#include "pcqa/parallel.hpp"
#include "pcqa/ply_io.hpp"
#include "pcqa/point_metrics.hpp"
#include "pcqa/projection.hpp"
#include "pcqa/subjective.hpp"
#include "pcqa/view_pooling.hpp"

namespace {

constexpr const char* kVersion = "pcqa 1.0.0";
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw pcqa::DataError("cannot write '" + path + "'");
    return file;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream iss(line);
    while (std::getline(iss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

struct PairJob {
    std::string ref, dist, sequence;
    int gqp = 0, tqp = 0;
};

// Manifest CSV: header ref,dist,sequence,gqp,tqp.
std::vector<PairJob> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw pcqa::DataError("cannot open manifest '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw pcqa::ParseError("empty manifest", 0);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (split_csv(line) != std::vector<std::string>{"ref", "dist", "sequence", "gqp", "tqp"})
        throw pcqa::ParseError("manifest header must be ref,dist,sequence,gqp,tqp", 0);

    std::vector<PairJob> jobs;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() < 5)
            throw pcqa::ParseError("manifest row " + std::to_string(line_no) +
                                       " has too few fields",
                                   line_no);
        jobs.push_back({f[0], f[1], f[2], std::stoi(f[3]), std::stoi(f[4])});
    }
    return jobs;
}

// Run jobs over a worker pool; rows are gathered and sorted by the caller so
// the output is independent of scheduling.
template <typename Fn>
void run_jobs(std::size_t n, int workers, Fn&& fn) {
    if (workers <= 0) workers = pcqa::default_workers();
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int t = std::min<int>(workers, int(n));
    for (int i = 0; i < std::max(1, t); ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "";
    std::ostringstream oss;
    oss.precision(12);
    oss << v;
    return oss.str();
}

// ---------------------------------------------------------------------------

struct PreprocessArgs {
    std::string input, output;
    std::string normalize;  // "x,y,z" target box extent; empty = skip
    int bit_depth = 10;
    std::string encoding = "binary";
};

void cmd_preprocess(const PreprocessArgs& a) {
    pcqa::PointCloud cloud = pcqa::load_ply(a.input);
    cloud.bit_depth = a.bit_depth;
    cloud = pcqa::quantize_and_dedup(cloud);
    if (!a.normalize.empty()) {
        auto f = split_csv(a.normalize);
        if (f.size() != 3)
            throw pcqa::DataError("--normalize expects three comma-separated extents");
        pcqa::BoundingBox target{{0, 0, 0},
                                 {std::stod(f[0]), std::stod(f[1]), std::stod(f[2])}};
        cloud = pcqa::normalize_to_box(cloud, target);
    }
    pcqa::save_ply(cloud, a.output,
                   a.encoding == "ascii" ? pcqa::PlyEncoding::ascii
                                         : pcqa::PlyEncoding::binary_le);
    std::cerr << "wrote " << cloud.size() << " points to " << a.output << "\n";
}

// ---------------------------------------------------------------------------

struct PointMetricsArgs {
    std::string ref, dist, manifest, output, sequence = "-";
    int gqp = 0, tqp = 0, normals_k = 16, workers = 0;
    bool hausdorff = true;
};

std::vector<std::string> point_metric_rows(const pcqa::PointCloud& ref_in,
                                           const pcqa::PointCloud& dist_in,
                                           const PairJob& job, int normals_k,
                                           int workers) {
    pcqa::PointCloud ref = ref_in, dist = dist_in;
    std::vector<std::pair<std::string, double>> values;

    pcqa::GeometryError d1 = pcqa::d1_error(ref, dist, workers);
    values.emplace_back("d1_mse", d1.symmetric_mse);
    values.emplace_back("d1_haus", d1.symmetric_haus);
    values.emplace_back("psnr_d1", pcqa::geometry_psnr(d1.symmetric_mse, ref.bit_depth));
    values.emplace_back("psnr_d1_haus",
                        pcqa::geometry_psnr(d1.symmetric_haus, ref.bit_depth));

    if (!ref.has_normals() && int(ref.size()) > normals_k)
        ref = pcqa::estimate_normals(ref, normals_k, workers);
    if (!dist.has_normals() && int(dist.size()) > normals_k)
        dist = pcqa::estimate_normals(dist, normals_k, workers);
    if (ref.has_normals()) {
        pcqa::GeometryError d2 = pcqa::d2_error(ref, dist, workers);
        values.emplace_back("d2_mse", d2.symmetric_mse);
        values.emplace_back("d2_haus", d2.symmetric_haus);
        values.emplace_back("psnr_d2",
                            pcqa::geometry_psnr(d2.symmetric_mse, ref.bit_depth));
    }
    if (ref.has_colors() && dist.has_colors()) {
        pcqa::YuvPsnr p = pcqa::yuv_psnr(pcqa::color_error(ref, dist, workers));
        values.emplace_back("psnr_y", p.psnr_y);
        values.emplace_back("psnr_u", p.psnr_u);
        values.emplace_back("psnr_v", p.psnr_v);
        values.emplace_back("psnr_yuv", p.psnr_yuv);
    }

    std::vector<std::string> rows;
    for (const auto& [name, value] : values) {
        std::ostringstream row;
        row << job.sequence << ',' << job.gqp << ',' << job.tqp << ',' << name << ','
            << fmt(value);
        rows.push_back(row.str());
    }
    return rows;
}

void cmd_point_metrics(const PointMetricsArgs& a) {
    std::vector<PairJob> jobs;
    if (!a.manifest.empty())
        jobs = load_manifest(a.manifest);
    else
        jobs.push_back({a.ref, a.dist, a.sequence, a.gqp, a.tqp});

    std::vector<std::vector<std::string>> results(jobs.size());
    int per_job_workers = jobs.size() > 1 ? 1 : a.workers;
    run_jobs(jobs.size(), a.workers, [&](std::size_t i) {
        pcqa::PointCloud ref = pcqa::load_ply(jobs[i].ref);
        pcqa::PointCloud dist = pcqa::load_ply(jobs[i].dist);
        results[i] = point_metric_rows(ref, dist, jobs[i], a.normals_k, per_job_workers);
    });

    std::vector<std::string> rows;
    for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
    std::sort(rows.begin(), rows.end());

    std::ofstream file;
    std::ostream& out = open_output(file, a.output);
    out << "sequence,gqp,tqp,metric,value\n";
    for (const auto& row : rows) out << row << '\n';
}

// ---------------------------------------------------------------------------

struct ProjectionMetricsArgs {
    std::string ref, dist, manifest, output, sequence = "-";
    std::string metric = "ssim", pooling = "weighted";
    double gamma = pcqa::kDefaultGamma;
    int gqp = 0, tqp = 0, splat_radius = 1, workers = 0;
    double resolution = 1.0;
};

void cmd_projection_metrics(const ProjectionMetricsArgs& a) {
    if (a.pooling != "mean" && a.pooling != "weighted")
        throw pcqa::DataError("--pooling must be 'mean' or 'weighted'");
    double gamma = a.pooling == "mean" ? pcqa::kGammaMeanPooling : a.gamma;
    if (a.pooling == "weighted" && !pcqa::gamma_in_recommended_range(gamma))
        std::cerr << "warning: gamma " << gamma
                  << " outside the recommended interval [0.13, 0.31]\n";
    pcqa::find_iqa_metric(a.metric);  // fail early on unknown metrics

    std::vector<PairJob> jobs;
    if (!a.manifest.empty())
        jobs = load_manifest(a.manifest);
    else
        jobs.push_back({a.ref, a.dist, a.sequence, a.gqp, a.tqp});

    std::vector<std::string> rows(jobs.size());
    pcqa::ProjectionOptions opts;
    opts.splat_radius = a.splat_radius;
    opts.resolution = a.resolution;
    opts.workers = jobs.size() > 1 ? 1 : a.workers;
    run_jobs(jobs.size(), a.workers, [&](std::size_t i) {
        pcqa::PointCloud ref = pcqa::load_ply(jobs[i].ref);
        pcqa::PointCloud dist = pcqa::load_ply(jobs[i].dist);
        pcqa::ProjectionPcqaResult r =
            pcqa::projection_pcqa(ref, dist, a.metric, gamma, opts);
        std::ostringstream row;
        row << jobs[i].sequence << ',' << jobs[i].gqp << ',' << jobs[i].tqp << ','
            << a.metric << ',' << fmt(gamma);
        for (double s : r.per_view.scores) row << ',' << fmt(s);
        row << ',' << fmt(r.pooled);
        rows[i] = row.str();
    });
    std::sort(rows.begin(), rows.end());

    std::ofstream file;
    std::ostream& out = open_output(file, a.output);
    out << "sequence,gqp,tqp,metric,gamma,front,back,left,right,top,bottom,s_final\n";
    for (const auto& row : rows) out << row << '\n';
}

// ---------------------------------------------------------------------------

struct ProjectArgs {
    std::string input, dump_dir = ".";
    int splat_radius = 1;
    double resolution = 1.0;
};

void cmd_project(const ProjectArgs& a) {
    pcqa::PointCloud cloud = pcqa::load_ply(a.input);
    pcqa::ProjectionOptions opts;
    opts.splat_radius = a.splat_radius;
    opts.resolution = a.resolution;
    pcqa::ViewSet set = pcqa::project_six_views(cloud, pcqa::bounding_box(cloud), opts);

    std::string stem = a.input;
    if (auto slash = stem.find_last_of("/\\"); slash != std::string::npos)
        stem = stem.substr(slash + 1);
    if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    pcqa::dump_views(set, a.dump_dir + "/" + stem);
    std::cerr << "wrote six views to " << a.dump_dir << "/" << stem << "_*.ppm\n";
}

// ---------------------------------------------------------------------------

struct DmosArgs {
    std::string ratings, output, observations;
    double alpha = 0.025, range_thresh = 7.0, std_thresh = 1.2;
};

void cmd_dmos(const DmosArgs& a) {
    pcqa::RatingMatrix r = pcqa::load_ratings_csv(a.ratings);
    pcqa::DmosOptions opts;
    opts.grubbs_alpha = a.alpha;
    opts.range_thresh = a.range_thresh;
    opts.std_thresh = a.std_thresh;
    pcqa::DmosTable table = pcqa::compute_dmos(r, opts);

    std::ofstream file;
    std::ostream& out = open_output(file, a.output);
    pcqa::write_dmos_csv(r, table, out);

    if (!a.observations.empty()) {
        // subject-level DMOS with factor levels, for the anova subcommand
        std::ofstream obs_file(a.observations);
        if (!obs_file) throw pcqa::DataError("cannot write '" + a.observations + "'");
        obs_file << "subject_id,sample_id,gqp,tqp,dmos\n";
        obs_file.precision(12);
        for (const auto& o : pcqa::dmos_observations(r, opts))
            obs_file << r.subjects[o.subject] << ',' << r.samples[o.sample].sample_id
                     << ',' << r.samples[o.sample].gqp << ',' << r.samples[o.sample].tqp
                     << ',' << o.dmos << '\n';
    }

    int rejected_subjects =
        int(std::count(table.kept_subjects.begin(), table.kept_subjects.end(), false));
    int rejected_samples =
        int(std::count(table.kept_samples.begin(), table.kept_samples.end(), false));
    std::cerr << "rejected " << rejected_subjects << " subject(s), " << rejected_samples
              << " sample(s)\n";
}

// ---------------------------------------------------------------------------

struct AnovaArgs {
    std::string observations, output;
    double alpha = 0.05;
};

void print_anova_row(std::ostream& out, const pcqa::AnovaRow& row) {
    out << row.source << ',' << fmt(row.ss) << ',' << row.df << ','
        << (row.df > 0 && row.source != "total" ? fmt(row.ms) : std::string()) << ','
        << (row.has_f ? fmt(row.f) : std::string()) << ','
        << (row.has_f ? fmt(row.p) : std::string()) << ','
        << (row.has_f ? fmt(row.f_crit) : std::string()) << '\n';
}

void cmd_anova(const AnovaArgs& a) {
    std::ifstream in(a.observations);
    if (!in) throw pcqa::DataError("cannot open '" + a.observations + "'");
    std::string line;
    if (!std::getline(in, line)) throw pcqa::ParseError("empty observations CSV", 0);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv(line);
    auto col_of = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw pcqa::ParseError("observations CSV missing column '" + name + "'", 0);
        return std::size_t(it - header.begin());
    };
    std::size_t c_gqp = col_of("gqp"), c_tqp = col_of("tqp"), c_val = col_of("dmos");

    std::vector<pcqa::AnovaObservation> obs;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_csv(line);
        obs.push_back({std::stoi(f[c_gqp]), std::stoi(f[c_tqp]), std::stod(f[c_val])});
    }
    pcqa::AnovaTable t = pcqa::two_way_anova(obs, a.alpha);

    std::ofstream file;
    std::ostream& out = open_output(file, a.output);
    out << "source,ss,df,ms,f,p,f_crit\n";
    print_anova_row(out, t.factor_a);
    print_anova_row(out, t.factor_b);
    print_anova_row(out, t.interaction);
    print_anova_row(out, t.error);
    print_anova_row(out, t.total);
}

// ---------------------------------------------------------------------------

struct ContentArgs {
    std::string input, output;
    int splat_radius = 1;
};

void cmd_content(const ContentArgs& a) {
    pcqa::PointCloud cloud = pcqa::load_ply(a.input);
    pcqa::ProjectionOptions opts;
    opts.splat_radius = a.splat_radius;
    pcqa::ViewSet set = pcqa::project_six_views(cloud, pcqa::bounding_box(cloud), opts);

    std::ofstream file;
    std::ostream& out = open_output(file, a.output);
    out << "input,si,cf\n";
    out << a.input << ',' << fmt(pcqa::spatial_information(set)) << ','
        << fmt(pcqa::colorfulness(set)) << '\n';
}

// ---------------------------------------------------------------------------

struct BenchmarkArgs {
    std::string objective, dmos, session = "all";
    std::string csv_out = "report.csv", json_out = "report.json";
};

void cmd_benchmark(const BenchmarkArgs& a) {
    // objective CSV: sample_id,metric,pooling,gamma,score
    std::ifstream obj_in(a.objective);
    if (!obj_in) throw pcqa::DataError("cannot open '" + a.objective + "'");
    std::string line;
    if (!std::getline(obj_in, line)) throw pcqa::ParseError("empty objective CSV", 0);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (split_csv(line) !=
        std::vector<std::string>{"sample_id", "metric", "pooling", "gamma", "score"})
        throw pcqa::ParseError(
            "objective CSV header must be sample_id,metric,pooling,gamma,score", 0);

    struct ObjRow {
        std::string sample_id;
        double score;
    };
    std::map<std::tuple<std::string, std::string, double>, std::vector<ObjRow>> groups;
    while (std::getline(obj_in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() < 5) throw pcqa::ParseError("objective CSV row too short", 0);
        double score = f[4] == "inf" ? std::numeric_limits<double>::infinity()
                                     : std::stod(f[4]);
        groups[{f[1], f[2], std::stod(f[3])}].push_back({f[0], score});
    }

    // dmos CSV as written by the dmos subcommand
    std::ifstream dmos_in(a.dmos);
    if (!dmos_in) throw pcqa::DataError("cannot open '" + a.dmos + "'");
    if (!std::getline(dmos_in, line)) throw pcqa::ParseError("empty dmos CSV", 0);
    std::map<std::string, double> dmos;
    while (std::getline(dmos_in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() < 2 || f[1].empty()) continue;  // rejected samples carry no DMOS
        dmos[f[0]] = std::stod(f[1]);
    }

    std::vector<pcqa::BenchmarkRow> rows;
    for (const auto& [key, pairs] : groups) {
        std::vector<double> x, y;
        for (const ObjRow& o : pairs) {
            auto it = dmos.find(o.sample_id);
            if (it == dmos.end())
                throw pcqa::DataError("objective sample '" + o.sample_id +
                                      "' has no DMOS entry");
            x.push_back(o.score);
            y.push_back(it->second);
        }
        pcqa::BenchmarkRow row = pcqa::evaluate_metric(x, y);
        row.session = a.session;
        row.metric = std::get<0>(key);
        row.pooling = std::get<1>(key);
        row.gamma = std::get<2>(key);
        rows.push_back(row);
    }
    pcqa::generate_report(rows, a.csv_out, a.json_out);
    std::cerr << "wrote " << rows.size() << " row(s) to " << a.csv_out << " and "
              << a.json_out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point-cloud quality assessment toolkit"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "Plain key=value config file; flags override it");
    app.require_subcommand(1);

    PreprocessArgs pre;
    auto* sub_pre = app.add_subcommand("preprocess", "Quantize, dedup and normalize a cloud");
    sub_pre->add_option("input", pre.input, "Input PLY")->required();
    sub_pre->add_option("-o,--output", pre.output, "Output PLY")->required();
    sub_pre->add_option("--normalize", pre.normalize, "Target box extents, e.g. 600,1000,400");
    sub_pre->add_option("--bit-depth", pre.bit_depth, "Voxel bit depth")->default_val(10);
    sub_pre->add_option("--encoding", pre.encoding, "ascii | binary")->default_val("binary");

    PointMetricsArgs pm;
    auto* sub_pm = app.add_subcommand("point-metrics", "D1/D2/Hausdorff/PSNR/YUV metric rows");
    sub_pm->add_option("ref", pm.ref, "Reference PLY");
    sub_pm->add_option("dist", pm.dist, "Distorted PLY");
    sub_pm->add_option("--manifest", pm.manifest, "Batch manifest CSV (ref,dist,sequence,gqp,tqp)");
    sub_pm->add_option("-o,--output", pm.output, "Output CSV (default stdout)");
    sub_pm->add_option("--sequence", pm.sequence, "Sequence label");
    sub_pm->add_option("--gqp", pm.gqp, "Geometry QP label");
    sub_pm->add_option("--tqp", pm.tqp, "Texture QP label");
    sub_pm->add_option("--normals-k", pm.normals_k, "Neighbors for normal estimation")->default_val(16);
    sub_pm->add_option("--workers", pm.workers, "Worker threads (0 = auto)");

    ProjectionMetricsArgs pj;
    auto* sub_pj = app.add_subcommand("projection-metrics", "Six-view IQA with pooling");
    sub_pj->add_option("ref", pj.ref, "Reference PLY");
    sub_pj->add_option("dist", pj.dist, "Distorted PLY");
    sub_pj->add_option("--manifest", pj.manifest, "Batch manifest CSV (ref,dist,sequence,gqp,tqp)");
    sub_pj->add_option("-o,--output", pj.output, "Output CSV (default stdout)");
    sub_pj->add_option("--metric", pj.metric, "psnr | uqi | ssim | ms_ssim | gmsd")->default_val("ssim");
    sub_pj->add_option("--pooling", pj.pooling, "mean | weighted")->default_val("weighted");
    sub_pj->add_option("--gamma", pj.gamma, "Top/bottom view weight")->default_val(pcqa::kDefaultGamma);
    sub_pj->add_option("--splat-radius", pj.splat_radius, "Splat half-width in pixels")->default_val(1);
    sub_pj->add_option("--resolution", pj.resolution, "Pixels per voxel")->default_val(1.0);
    sub_pj->add_option("--sequence", pj.sequence, "Sequence label");
    sub_pj->add_option("--gqp", pj.gqp, "Geometry QP label");
    sub_pj->add_option("--tqp", pj.tqp, "Texture QP label");
    sub_pj->add_option("--workers", pj.workers, "Worker threads (0 = auto)");

    ProjectArgs pr;
    auto* sub_pr = app.add_subcommand("project", "Dump the six orthographic views");
    sub_pr->add_option("input", pr.input, "Input PLY")->required();
    sub_pr->add_option("--dump-dir", pr.dump_dir, "Output directory")->default_val(".");
    sub_pr->add_option("--splat-radius", pr.splat_radius, "Splat half-width in pixels")->default_val(1);
    sub_pr->add_option("--resolution", pr.resolution, "Pixels per voxel")->default_val(1.0);

    DmosArgs dm;
    auto* sub_dm = app.add_subcommand("dmos", "Process raw ratings into DMOS");
    sub_dm->add_option("ratings", dm.ratings, "Ratings CSV")->required();
    sub_dm->add_option("-o,--output", dm.output, "DMOS CSV (default stdout)");
    sub_dm->add_option("--observations", dm.observations, "Also write subject-level observations CSV");
    sub_dm->add_option("--alpha", dm.alpha, "Grubbs significance level")->default_val(0.025);
    sub_dm->add_option("--range-thresh", dm.range_thresh, "Subject screening range threshold")->default_val(7.0);
    sub_dm->add_option("--std-thresh", dm.std_thresh, "Subject screening std threshold")->default_val(1.2);

    AnovaArgs an;
    auto* sub_an = app.add_subcommand("anova", "Two-way ANOVA on subject-level DMOS");
    sub_an->add_option("observations", an.observations, "Observations CSV (gqp,tqp,dmos columns)")->required();
    sub_an->add_option("-o,--output", an.output, "Output CSV (default stdout)");
    sub_an->add_option("--alpha", an.alpha, "F-crit significance level")->default_val(0.05);

    ContentArgs ct;
    auto* sub_ct = app.add_subcommand("content", "SI/CF content descriptors");
    sub_ct->add_option("input", ct.input, "Input PLY")->required();
    sub_ct->add_option("-o,--output", ct.output, "Output CSV (default stdout)");
    sub_ct->add_option("--splat-radius", ct.splat_radius, "Splat half-width in pixels")->default_val(1);

    BenchmarkArgs bm;
    auto* sub_bm = app.add_subcommand("benchmark", "Correlate objective scores with DMOS");
    sub_bm->add_option("objective", bm.objective, "Objective scores CSV")->required();
    sub_bm->add_option("dmos", bm.dmos, "DMOS CSV")->required();
    sub_bm->add_option("--session", bm.session, "all | human | object")->default_val("all");
    sub_bm->add_option("--csv", bm.csv_out, "Report CSV path")->default_val("report.csv");
    sub_bm->add_option("--json", bm.json_out, "Report JSON path")->default_val("report.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (sub_pre->parsed()) cmd_preprocess(pre);
        if (sub_pm->parsed()) {
            if (pm.manifest.empty() && (pm.ref.empty() || pm.dist.empty()))
                throw pcqa::DataError("point-metrics needs ref+dist or --manifest");
            cmd_point_metrics(pm);
        }
        if (sub_pj->parsed()) {
            if (pj.manifest.empty() && (pj.ref.empty() || pj.dist.empty()))
                throw pcqa::DataError("projection-metrics needs ref+dist or --manifest");
            cmd_projection_metrics(pj);
        }
        if (sub_pr->parsed()) cmd_project(pr);
        if (sub_dm->parsed()) cmd_dmos(dm);
        if (sub_an->parsed()) cmd_anova(an);
        if (sub_ct->parsed()) cmd_content(ct);
        if (sub_bm->parsed()) cmd_benchmark(bm);
    } catch (const pcqa::NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
