// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pcqa/point_cloud.hpp"

namespace pcqa {

enum class ViewId { front = 0, back, left, right, top, bottom };
constexpr int kViewCount = 6;
const char* view_name(ViewId v);

/// One orthographic rendering: 8-bit RGB raster, occupancy mask, z-buffer.
struct View {
    int width = 0, height = 0;
    std::vector<std::uint8_t> rgb;    // 3 * width * height, row major
    std::vector<std::uint8_t> mask;   // 1 per pixel, 0 or 255
    std::vector<float> depth;         // distance from the viewing plane

    std::size_t pixel_count() const { return std::size_t(width) * std::size_t(height); }
};

/// Six views rendered from one shared bounding box. Renders of a ref/dist
/// pair made with union_box are pixel aligned.
struct ViewSet {
    std::array<View, kViewCount> views;
    BoundingBox box;
    double resolution = 1.0;  // pixels per voxel

    const View& view(ViewId v) const { return views[std::size_t(v)]; }
};

struct ProjectionOptions {
    int splat_radius = 1;  // square splat half-width in pixels
    double resolution = 1.0;
    Color background = {128, 128, 128};
    int workers = 0;  // 0 = hardware concurrency; the six views render in parallel
};

/// Orthographic projection along +-X (right/left), +-Y (top/bottom, Y up),
/// +-Z (front/back). The z-buffer keeps the point nearest the viewing plane;
/// depth ties keep the smaller point id. Colorless points paint white.
/// Throws DataError when the box does not contain the cloud.
ViewSet project_six_views(const PointCloud& cloud, const BoundingBox& box,
                          const ProjectionOptions& opts = {});

/// Render both clouds into their union box so the rasters align per view.
std::pair<ViewSet, ViewSet> project_pair(const PointCloud& ref, const PointCloud& dist,
                                         const ProjectionOptions& opts = {});

/// Binary PPM (P6) / PGM (P5) dump, bit-exact golden-file format.
void write_ppm(const View& view, const std::string& path);
void write_pgm_mask(const View& view, const std::string& path);
std::vector<std::uint8_t> encode_ppm(const View& view);
std::vector<std::uint8_t> encode_pgm_mask(const View& view);

/// Dump all six views as <prefix>_<view>.ppm / <prefix>_<view>_mask.pgm.
void dump_views(const ViewSet& set, const std::string& prefix);

}  // namespace pcqa
