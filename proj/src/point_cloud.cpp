// SPDX-License-Identifier: Apache-2.0
#include "pcqa/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "pcqa/errors.hpp"

namespace pcqa {

void PointCloud::validate() const {
    if (has_colors() && colors.size() != positions.size())
        throw DataError("color count does not match position count");
    if (has_normals() && normals.size() != positions.size())
        throw DataError("normal count does not match position count");
}

BoundingBox bounding_box(const PointCloud& cloud) {
    if (cloud.empty()) throw DataError("bounding_box: empty cloud");
    constexpr double inf = std::numeric_limits<double>::infinity();
    BoundingBox box{{inf, inf, inf}, {-inf, -inf, -inf}};
    for (const Vec3& p : cloud.positions) box.expand(p);
    return box;
}

namespace {

struct VoxelKey {
    std::int64_t x, y, z;
    bool operator==(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
    std::size_t operator()(const VoxelKey& k) const {
        std::size_t h = std::size_t(k.x) * 73856093u;
        h ^= std::size_t(k.y) * 19349663u;
        h ^= std::size_t(k.z) * 83492791u;
        return h;
    }
};

}  // namespace

PointCloud quantize_and_dedup(const PointCloud& cloud) {
    cloud.validate();

    struct Accum {
        std::size_t out_index;
        double color_sum[3] = {0, 0, 0};
        Vec3 normal_sum;
        std::size_t count = 0;
    };

    const double lo = 0.0;
    const double hi = cloud.max_coordinate();

    PointCloud out;
    out.bit_depth = cloud.bit_depth;

    std::unordered_map<VoxelKey, Accum, VoxelKeyHash> voxels;
    voxels.reserve(cloud.size());
    std::vector<Accum*> accums;  // first-occurrence order

    for (std::size_t i = 0; i < cloud.size(); ++i) {
        Vec3 q;
        for (int a = 0; a < 3; ++a)
            q[a] = std::clamp(round_half_away(cloud.positions[i][a]), lo, hi);
        VoxelKey key{std::int64_t(q.x), std::int64_t(q.y), std::int64_t(q.z)};

        auto [it, inserted] = voxels.try_emplace(key);
        Accum& acc = it->second;
        if (inserted) {
            acc.out_index = out.positions.size();
            out.positions.push_back(q);
            accums.push_back(&acc);
        }
        if (cloud.has_colors())
            for (int c = 0; c < 3; ++c) acc.color_sum[c] += cloud.colors[i][c];
        if (cloud.has_normals()) acc.normal_sum += cloud.normals[i];
        ++acc.count;
    }

    if (cloud.has_colors()) {
        out.colors.reserve(out.size());
        for (const Accum* acc : accums) {
            Color c;
            for (int k = 0; k < 3; ++k) {
                double avg = round_half_away(acc->color_sum[k] / double(acc->count));
                c[k] = std::uint8_t(std::clamp(avg, 0.0, 255.0));
            }
            out.colors.push_back(c);
        }
    }
    if (cloud.has_normals()) {
        out.normals.reserve(out.size());
        for (const Accum* acc : accums) out.normals.push_back(acc->normal_sum.normalized());
    }
    return out;
}

PointCloud normalize_to_box(const PointCloud& cloud, const BoundingBox& target) {
    if (cloud.empty()) throw DataError("normalize_to_box: empty cloud");
    BoundingBox box = bounding_box(cloud);
    Vec3 ext = box.extent();
    if (ext.x == 0.0 && ext.y == 0.0 && ext.z == 0.0)
        throw DataError("normalize_to_box: degenerate cloud (zero extent)");

    double scale = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a)
        if (ext[a] > 0.0) scale = std::min(scale, target.extent()[a] / ext[a]);

    PointCloud scaled = cloud;
    for (Vec3& p : scaled.positions)
        p = target.min_corner + (p - box.min_corner) * scale;
    return quantize_and_dedup(scaled);
}

}  // namespace pcqa
