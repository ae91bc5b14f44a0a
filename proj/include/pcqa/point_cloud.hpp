// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "pcqa/geometry.hpp"

namespace pcqa {

/// Point cloud in voxel units. After quantize_and_dedup all coordinates are
/// integer-valued and unique. Colors are 8-bit RGB, normals unit length.
struct PointCloud {
    std::vector<Vec3> positions;
    std::vector<Color> colors;   // empty or same size as positions
    std::vector<Vec3> normals;   // empty or same size as positions
    int bit_depth = 10;

    std::size_t size() const { return positions.size(); }
    bool empty() const { return positions.empty(); }
    bool has_colors() const { return !colors.empty(); }
    bool has_normals() const { return !normals.empty(); }

    double max_coordinate() const { return double((1u << bit_depth) - 1); }

    // Throws DataError if attribute lengths disagree.
    void validate() const;
};

BoundingBox bounding_box(const PointCloud& cloud);

/// Round coordinates to integers (half away from zero), clamp into
/// [0, 2^bit_depth - 1], and merge points that land on the same voxel.
/// Merged colors/normals are averaged (colors rounded, normals renormalized);
/// survivors keep first-occurrence order.
PointCloud quantize_and_dedup(const PointCloud& cloud);

/// Uniformly scale and translate the cloud so its bounding box fits inside
/// `target` (largest ratio preserved, aspect unchanged), then re-quantize.
/// Throws DataError on a degenerate (zero-extent) cloud.
PointCloud normalize_to_box(const PointCloud& cloud, const BoundingBox& target);

}  // namespace pcqa
