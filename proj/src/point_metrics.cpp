// SPDX-License-Identifier: Apache-2.0
#include "pcqa/point_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcqa/errors.hpp"
#include "pcqa/kdtree.hpp"
#include "pcqa/parallel.hpp"

namespace pcqa {

namespace {

constexpr std::size_t kChunk = 4096;

// One Jacobi sweep based symmetric 3x3 eigensolver; returns the unit
// eigenvector of the smallest eigenvalue.
Vec3 smallest_eigenvector(double m[3][3]) {
    double a[3][3] = {{m[0][0], m[0][1], m[0][2]},
                      {m[1][0], m[1][1], m[1][2]},
                      {m[2][0], m[2][1], m[2][2]}};
    double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if (off < 1e-30) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    int smallest = 0;
    if (a[1][1] < a[smallest][smallest]) smallest = 1;
    if (a[2][2] < a[smallest][smallest]) smallest = 2;
    return Vec3{v[0][smallest], v[1][smallest], v[2][smallest]}.normalized();
}

struct PoolAccum {
    double sum = 0.0;
    double max = 0.0;
};

// Pool per-point squared errors over [0, n) with deterministic chunked
// reduction; error(i) must be pure.
template <typename ErrorFn>
std::pair<double, double> pool_errors(std::size_t n, int workers, ErrorFn&& error) {
    std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<PoolAccum> partial(n_chunks);
    parallel_chunks(n, kChunk, workers,
                    [&](std::size_t c, std::size_t begin, std::size_t end) {
                        PoolAccum acc;
                        for (std::size_t i = begin; i < end; ++i) {
                            double e = error(i);
                            acc.sum += e;
                            acc.max = std::max(acc.max, e);
                        }
                        partial[c] = acc;
                    });
    PoolAccum total;
    for (const PoolAccum& acc : partial) {
        total.sum += acc.sum;
        total.max = std::max(total.max, acc.max);
    }
    return {total.sum / double(n), total.max};
}

int resolve_workers(int workers) { return workers <= 0 ? default_workers() : workers; }

}  // namespace

PointCloud estimate_normals(const PointCloud& cloud, int k, int workers) {
    if (k < 3) throw DataError("estimate_normals: k must be >= 3");
    if (std::size_t(k) >= cloud.size())
        throw DataError("estimate_normals: k must be smaller than the point count");
    workers = resolve_workers(workers);

    KdTree index(cloud.positions);
    PointCloud out = cloud;
    out.normals.assign(cloud.size(), Vec3{});

    parallel_chunks(cloud.size(), kChunk, workers,
                    [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto nbrs = index.knearest(cloud.positions[i], k);
            Vec3 centroid;
            for (const auto& nb : nbrs) centroid += cloud.positions[nb.id];
            centroid = centroid / double(nbrs.size());

            double cov[3][3] = {};
            for (const auto& nb : nbrs) {
                Vec3 d = cloud.positions[nb.id] - centroid;
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 3; ++c) cov[r][c] += d[r] * d[c];
            }
            Vec3 n = smallest_eigenvector(cov);
            // Orient away from the neighborhood centroid; leave the Jacobi
            // sign when the point sits on the centroid (e.g. flat patches).
            if ((cloud.positions[i] - centroid).dot(n) < 0.0) n = n * -1.0;
            out.normals[i] = n;
        }
    });
    return out;
}

GeometryError d1_error(const PointCloud& ref, const PointCloud& dist, int workers) {
    if (ref.empty() || dist.empty()) throw DataError("d1_error: empty cloud");
    workers = resolve_workers(workers);

    KdTree ref_index(ref.positions);
    KdTree dist_index(dist.positions);

    GeometryError err;
    std::tie(err.forward_mse, err.forward_haus) = pool_errors(
        ref.size(), workers,
        [&](std::size_t i) { return dist_index.nearest(ref.positions[i]).squared_distance; });
    std::tie(err.backward_mse, err.backward_haus) = pool_errors(
        dist.size(), workers,
        [&](std::size_t i) { return ref_index.nearest(dist.positions[i]).squared_distance; });
    err.symmetric_mse = std::max(err.forward_mse, err.backward_mse);
    err.symmetric_haus = std::max(err.forward_haus, err.backward_haus);
    return err;
}

GeometryError d2_error(const PointCloud& ref, const PointCloud& dist, int workers) {
    if (ref.empty() || dist.empty()) throw DataError("d2_error: empty cloud");
    if (!ref.has_normals()) throw DataError("d2_error: reference cloud has no normals");
    workers = resolve_workers(workers);

    KdTree ref_index(ref.positions);
    KdTree dist_index(dist.positions);

    GeometryError err;
    std::tie(err.forward_mse, err.forward_haus) =
        pool_errors(ref.size(), workers, [&](std::size_t i) {
            auto nn = dist_index.nearest(ref.positions[i]);
            double proj = (dist.positions[nn.id] - ref.positions[i]).dot(ref.normals[i]);
            return proj * proj;
        });

    if (dist.has_normals()) {
        std::tie(err.backward_mse, err.backward_haus) =
            pool_errors(dist.size(), workers, [&](std::size_t i) {
                auto nn = ref_index.nearest(dist.positions[i]);
                double proj =
                    (ref.positions[nn.id] - dist.positions[i]).dot(dist.normals[i]);
                return proj * proj;
            });
        err.symmetric_mse = std::max(err.forward_mse, err.backward_mse);
        err.symmetric_haus = std::max(err.forward_haus, err.backward_haus);
    } else {
        err.backward_mse = std::numeric_limits<double>::quiet_NaN();
        err.backward_haus = std::numeric_limits<double>::quiet_NaN();
        err.symmetric_mse = err.forward_mse;
        err.symmetric_haus = err.forward_haus;
    }
    return err;
}

double geometry_psnr(double mse, int bit_depth) {
    if (mse < 0.0) throw DataError("geometry_psnr: negative mse");
    double p = double((1u << bit_depth) - 1);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(3.0 * p * p / mse);
}

std::array<double, 3> rgb_to_yuv(const Color& c) {
    double r = c[0], g = c[1], b = c[2];
    double y = 0.2126 * r + 0.7152 * g + 0.0722 * b;
    double u = (b - y) / 1.8556 + 128.0;
    double v = (r - y) / 1.5748 + 128.0;
    return {y, u, v};
}

namespace {

std::array<double, 3> directional_color_mse(const PointCloud& from, const PointCloud& to,
                                            const KdTree& to_index, int workers) {
    std::size_t n = from.size();
    std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::array<double, 3>> partial(n_chunks, {0.0, 0.0, 0.0});
    parallel_chunks(n, kChunk, workers,
                    [&](std::size_t c, std::size_t begin, std::size_t end) {
        std::array<double, 3> acc = {0.0, 0.0, 0.0};
        for (std::size_t i = begin; i < end; ++i) {
            auto nn = to_index.nearest(from.positions[i]);
            auto a = rgb_to_yuv(from.colors[i]);
            auto b = rgb_to_yuv(to.colors[nn.id]);
            for (int ch = 0; ch < 3; ++ch) acc[ch] += (a[ch] - b[ch]) * (a[ch] - b[ch]);
        }
        partial[c] = acc;
    });
    std::array<double, 3> sum = {0.0, 0.0, 0.0};
    for (const auto& acc : partial)
        for (int ch = 0; ch < 3; ++ch) sum[ch] += acc[ch];
    for (int ch = 0; ch < 3; ++ch) sum[ch] /= double(n);
    return sum;
}

}  // namespace

ColorError color_error(const PointCloud& ref, const PointCloud& dist, int workers) {
    if (ref.empty() || dist.empty()) throw DataError("color_error: empty cloud");
    if (!ref.has_colors() || !dist.has_colors())
        throw DataError("color_error: both clouds must carry colors");
    workers = resolve_workers(workers);

    KdTree ref_index(ref.positions);
    KdTree dist_index(dist.positions);
    auto fwd = directional_color_mse(ref, dist, dist_index, workers);
    auto bwd = directional_color_mse(dist, ref, ref_index, workers);

    ColorError err;
    err.mse_y = std::max(fwd[0], bwd[0]);
    err.mse_u = std::max(fwd[1], bwd[1]);
    err.mse_v = std::max(fwd[2], bwd[2]);
    return err;
}

YuvPsnr yuv_psnr(const ColorError& err) {
    auto psnr = [](double mse) {
        if (mse == 0.0) return std::numeric_limits<double>::infinity();
        return 10.0 * std::log10(255.0 * 255.0 / mse);
    };
    YuvPsnr out{psnr(err.mse_y), psnr(err.mse_u), psnr(err.mse_v), 0.0};
    out.psnr_yuv = (6.0 * out.psnr_y + out.psnr_u + out.psnr_v) / 8.0;
    return out;
}

}  // namespace pcqa
