// SPDX-License-Identifier: Apache-2.0
#include "pcqa/iqa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "pcqa/errors.hpp"

namespace pcqa {

Image image_from_view(const View& view) {
    Image img(view.width, view.height, 3);
    for (std::size_t i = 0; i < view.rgb.size(); ++i) img.data[i] = double(view.rgb[i]);
    return img;
}

Image luminance(const Image& img) {
    if (img.channels == 1) return img;
    if (img.channels != 3) throw DataError("luminance: expected 1 or 3 channels");
    Image out(img.width, img.height, 1);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        const double* px = &img.data[3 * i];
        out.data[i] = 0.2126 * px[0] + 0.7152 * px[1] + 0.0722 * px[2];
    }
    return out;
}

namespace {

int reflect(int i, int n) {
    // Symmetric padding including the edge sample: -1 -> 0, n -> n-1.
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - i - 1;
    }
    return i;
}

// Separable correlation with symmetric border padding. `anchor` is the tap
// index aligned with the output pixel (kernel size / 2 for odd kernels).
Image filter_rows(const Image& img, const std::vector<double>& k, int anchor) {
    Image out(img.width, img.height, 1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int t = 0; t < int(k.size()); ++t)
                acc += k[std::size_t(t)] * img.at(reflect(x + t - anchor, img.width), y);
            out.at(x, y) = acc;
        }
    return out;
}

Image filter_cols(const Image& img, const std::vector<double>& k, int anchor) {
    Image out(img.width, img.height, 1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int t = 0; t < int(k.size()); ++t)
                acc += k[std::size_t(t)] * img.at(x, reflect(y + t - anchor, img.height));
            out.at(x, y) = acc;
        }
    return out;
}

Image separable_filter(const Image& img, const std::vector<double>& k, int anchor) {
    return filter_cols(filter_rows(img, k, anchor), k, anchor);
}

std::vector<double> gaussian_kernel(int size, double sigma) {
    std::vector<double> k(static_cast<std::size_t>(size), 0.0);
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
        double d = i - (size - 1) / 2.0;
        k[std::size_t(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += k[std::size_t(i)];
    }
    for (double& v : k) v /= sum;
    return k;
}

Image multiply(const Image& a, const Image& b) {
    Image out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] *= b.data[i];
    return out;
}

double map_mean(const Image& img) {
    double s = 0.0;
    for (double v : img.data) s += v;
    return s / double(img.data.size());
}

void require_same_dims(const Image& a, const Image& b, const char* metric) {
    if (a.width != b.width || a.height != b.height)
        throw DataError(std::string(metric) + ": image dimensions differ");
}

void require_min_side(const Image& img, int min_side, const char* constraint) {
    if (img.width < min_side || img.height < min_side)
        throw DataError(std::string("image smaller than metric support: ") + constraint);
}

// 2x2 mean then decimate by 2 in each direction.
Image downsample2(const Image& img) {
    Image out(img.width / 2, img.height / 2, 1);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.at(x, y) = 0.25 * (img.at(2 * x, 2 * y) + img.at(2 * x + 1, 2 * y) +
                                   img.at(2 * x, 2 * y + 1) + img.at(2 * x + 1, 2 * y + 1));
    return out;
}

constexpr double kSsimK1 = 0.01, kSsimK2 = 0.03, kSsimL = 255.0;
constexpr double kSsimC1 = (kSsimK1 * kSsimL) * (kSsimK1 * kSsimL);
constexpr double kSsimC2 = (kSsimK2 * kSsimL) * (kSsimK2 * kSsimL);

struct SsimMaps {
    Image luminance_term;  // (2 mu1 mu2 + C1) / (mu1^2 + mu2^2 + C1)
    Image cs_term;         // (2 sigma12 + C2) / (s1^2 + s2^2 + C2)
};

SsimMaps ssim_maps(const Image& x, const Image& y) {
    static const std::vector<double> kWin = gaussian_kernel(11, 1.5);
    const int anchor = 5;

    Image mu1 = separable_filter(x, kWin, anchor);
    Image mu2 = separable_filter(y, kWin, anchor);
    Image xx = separable_filter(multiply(x, x), kWin, anchor);
    Image yy = separable_filter(multiply(y, y), kWin, anchor);
    Image xy = separable_filter(multiply(x, y), kWin, anchor);

    SsimMaps maps{Image(x.width, x.height, 1), Image(x.width, x.height, 1)};
    for (std::size_t i = 0; i < mu1.data.size(); ++i) {
        double m1 = mu1.data[i], m2 = mu2.data[i];
        double s11 = xx.data[i] - m1 * m1;
        double s22 = yy.data[i] - m2 * m2;
        double s12 = xy.data[i] - m1 * m2;
        maps.luminance_term.data[i] =
            (2.0 * m1 * m2 + kSsimC1) / (m1 * m1 + m2 * m2 + kSsimC1);
        maps.cs_term.data[i] = (2.0 * s12 + kSsimC2) / (s11 + s22 + kSsimC2);
    }
    return maps;
}

}  // namespace

double iqa_psnr(const Image& ref, const Image& dist) {
    require_same_dims(ref, dist, "psnr");
    Image a = luminance(ref), b = luminance(dist);
    double mse = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        mse += (a.data[i] - b.data[i]) * (a.data[i] - b.data[i]);
    mse /= double(a.data.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double iqa_uqi(const Image& ref, const Image& dist) {
    require_same_dims(ref, dist, "uqi");
    Image x = luminance(ref), y = luminance(dist);
    require_min_side(x, 8, "uqi needs >= 8 px per side");

    // 8x8 sliding uniform window.
    std::vector<double> box(8, 1.0 / 8.0);
    const int anchor = 4;
    Image mu1 = separable_filter(x, box, anchor);
    Image mu2 = separable_filter(y, box, anchor);
    Image xx = separable_filter(multiply(x, x), box, anchor);
    Image yy = separable_filter(multiply(y, y), box, anchor);
    Image xy = separable_filter(multiply(x, y), box, anchor);

    double sum = 0.0;
    for (std::size_t i = 0; i < mu1.data.size(); ++i) {
        double m1 = mu1.data[i], m2 = mu2.data[i];
        double s11 = xx.data[i] - m1 * m1;
        double s22 = yy.data[i] - m2 * m2;
        double s12 = xy.data[i] - m1 * m2;
        double mean_term = m1 * m1 + m2 * m2;
        double var_term = s11 + s22;
        double q;
        if (mean_term * var_term > 0.0)
            q = 4.0 * s12 * m1 * m2 / (mean_term * var_term);
        else if (mean_term > 0.0)
            q = 2.0 * m1 * m2 / mean_term;
        else
            q = 1.0;  // both windows constant zero
        sum += q;
    }
    return sum / double(mu1.data.size());
}

double iqa_ssim(const Image& ref, const Image& dist) {
    require_same_dims(ref, dist, "ssim");
    Image x = luminance(ref), y = luminance(dist);
    require_min_side(x, 11, "ssim needs >= 11 px per side");
    SsimMaps maps = ssim_maps(x, y);
    return map_mean(multiply(maps.luminance_term, maps.cs_term));
}

double iqa_ms_ssim(const Image& ref, const Image& dist,
                   const std::vector<double>& weights) {
    require_same_dims(ref, dist, "ms_ssim");
    if (weights.empty()) throw DataError("ms_ssim: need at least one scale weight");
    int n_scales = int(weights.size());
    Image x = luminance(ref), y = luminance(dist);
    require_min_side(x, 11 << (n_scales - 1), "ms_ssim needs >= 11*2^(scales-1) px per side");

    double result = 1.0;
    for (int scale = 0; scale < n_scales; ++scale) {
        SsimMaps maps = ssim_maps(x, y);
        if (scale < n_scales - 1) {
            result *= std::pow(map_mean(maps.cs_term), weights[std::size_t(scale)]);
            x = downsample2(x);
            y = downsample2(y);
        } else {
            result *= std::pow(map_mean(multiply(maps.luminance_term, maps.cs_term)),
                               weights[std::size_t(scale)]);
        }
    }
    return result;
}

double iqa_ms_ssim(const Image& ref, const Image& dist) {
    static const std::vector<double> kWeights = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
    return iqa_ms_ssim(ref, dist, kWeights);
}

double iqa_gmsd(const Image& ref, const Image& dist) {
    require_same_dims(ref, dist, "gmsd");
    Image x = luminance(ref), y = luminance(dist);
    require_min_side(x, 2, "gmsd needs >= 2 px per side");

    x = downsample2(x);
    y = downsample2(y);
    require_min_side(x, 1, "gmsd input collapsed to zero size");

    // Prewitt gradients, 1/3-normalized.
    std::vector<double> smooth = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    std::vector<double> diff = {1.0 / 3.0, 0.0, -1.0 / 3.0};
    auto gradient_magnitude = [&](const Image& img) {
        Image gx = filter_cols(filter_rows(img, diff, 1), smooth, 1);
        Image gy = filter_cols(filter_rows(img, smooth, 1), diff, 1);
        Image gm(img.width, img.height, 1);
        for (std::size_t i = 0; i < gm.data.size(); ++i)
            gm.data[i] = std::sqrt(gx.data[i] * gx.data[i] + gy.data[i] * gy.data[i]);
        return gm;
    };
    Image g1 = gradient_magnitude(x);
    Image g2 = gradient_magnitude(y);

    constexpr double c = 170.0;
    Image gms(g1.width, g1.height, 1);
    for (std::size_t i = 0; i < gms.data.size(); ++i)
        gms.data[i] = (2.0 * g1.data[i] * g2.data[i] + c) /
                      (g1.data[i] * g1.data[i] + g2.data[i] * g2.data[i] + c);

    double m = map_mean(gms);
    double var = 0.0;
    for (double v : gms.data) var += (v - m) * (v - m);
    return std::sqrt(var / double(gms.data.size()));
}

namespace {

std::map<std::string, IqaMetric>& registry() {
    static std::map<std::string, IqaMetric> metrics = {
        {"psnr", {"psnr", true, std::numeric_limits<double>::infinity(), iqa_psnr}},
        {"uqi", {"uqi", true, 1.0, iqa_uqi}},
        {"ssim", {"ssim", true, 1.0, iqa_ssim}},
        {"ms_ssim",
         {"ms_ssim", true, 1.0,
          static_cast<double (*)(const Image&, const Image&)>(iqa_ms_ssim)}},
        {"gmsd", {"gmsd", false, 0.0, iqa_gmsd}},
    };
    return metrics;
}

std::mutex registry_mutex;

}  // namespace

void register_iqa_metric(const IqaMetric& metric) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    registry()[metric.name] = metric;
}

const IqaMetric& find_iqa_metric(const std::string& name) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = registry().find(name);
    if (it == registry().end()) throw DataError("unknown IQA metric '" + name + "'");
    return it->second;
}

std::vector<std::string> iqa_metric_names() {
    std::lock_guard<std::mutex> lock(registry_mutex);
    std::vector<std::string> names;
    for (const auto& [name, _] : registry()) names.push_back(name);
    return names;
}

double iqa_score(const std::string& name, const Image& ref, const Image& dist) {
    return find_iqa_metric(name).score(ref, dist);
}

}  // namespace pcqa
