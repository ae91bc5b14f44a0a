// SPDX-License-Identifier: Apache-2.0
#include "pcqa/projection.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "pcqa/errors.hpp"
#include "pcqa/parallel.hpp"

namespace pcqa {

const char* view_name(ViewId v) {
    switch (v) {
        case ViewId::front: return "front";
        case ViewId::back: return "back";
        case ViewId::left: return "left";
        case ViewId::right: return "right";
        case ViewId::top: return "top";
        case ViewId::bottom: return "bottom";
    }
    return "?";
}

namespace {

// Image-plane axes and depth for each view. u/v are measured from the box
// corner that puts row 0 at the top of the image, depth from the viewing
// plane (the box face the camera sits on).
struct ViewFrame {
    int u_axis, v_axis, d_axis;
    bool u_flip, v_flip, d_flip;  // flip = measure from max corner
};

ViewFrame view_frame(ViewId v) {
    switch (v) {
        case ViewId::front:  return {0, 1, 2, false, true, true};
        case ViewId::back:   return {0, 1, 2, true, true, false};
        case ViewId::right:  return {2, 1, 0, true, true, true};
        case ViewId::left:   return {2, 1, 0, false, true, false};
        case ViewId::top:    return {0, 2, 1, false, false, true};
        case ViewId::bottom: return {0, 2, 1, false, true, false};
    }
    return {};
}

void render_view(const PointCloud& cloud, const BoundingBox& box,
                 const ProjectionOptions& opts, ViewId id, View& out) {
    ViewFrame frame = view_frame(id);
    Vec3 ext = box.extent();
    double res = opts.resolution;

    out.width = int(std::ceil(ext[frame.u_axis] * res)) + 1;
    out.height = int(std::ceil(ext[frame.v_axis] * res)) + 1;
    std::size_t n_px = out.pixel_count();
    out.rgb.assign(3 * n_px, 0);
    for (std::size_t i = 0; i < n_px; ++i)
        for (int c = 0; c < 3; ++c) out.rgb[3 * i + c] = opts.background[c];
    out.mask.assign(n_px, 0);
    out.depth.assign(n_px, std::numeric_limits<float>::infinity());

    int r = opts.splat_radius;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.positions[i];
        double u = frame.u_flip ? box.max_corner[frame.u_axis] - p[frame.u_axis]
                                : p[frame.u_axis] - box.min_corner[frame.u_axis];
        double v = frame.v_flip ? box.max_corner[frame.v_axis] - p[frame.v_axis]
                                : p[frame.v_axis] - box.min_corner[frame.v_axis];
        float d = float(frame.d_flip ? box.max_corner[frame.d_axis] - p[frame.d_axis]
                                     : p[frame.d_axis] - box.min_corner[frame.d_axis]);
        int px = int(std::floor(u * res + 0.5));
        int py = int(std::floor(v * res + 0.5));

        Color color = cloud.has_colors() ? cloud.colors[i] : Color{255, 255, 255};
        int x0 = std::max(0, px - r), x1 = std::min(out.width - 1, px + r);
        int y0 = std::max(0, py - r), y1 = std::min(out.height - 1, py + r);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                std::size_t idx = std::size_t(y) * std::size_t(out.width) + std::size_t(x);
                if (d < out.depth[idx]) {  // ties keep the earlier (smaller) id
                    out.depth[idx] = d;
                    out.mask[idx] = 255;
                    for (int c = 0; c < 3; ++c) out.rgb[3 * idx + c] = color[c];
                }
            }
        }
    }
}

}  // namespace

ViewSet project_six_views(const PointCloud& cloud, const BoundingBox& box,
                          const ProjectionOptions& opts) {
    if (cloud.empty()) throw DataError("project_six_views: empty cloud");
    for (const Vec3& p : cloud.positions)
        if (!box.contains(p))
            throw DataError("project_six_views: box does not contain the cloud");

    ViewSet set;
    set.box = box;
    set.resolution = opts.resolution;
    int workers = opts.workers <= 0 ? default_workers() : opts.workers;
    parallel_chunks(kViewCount, 1, std::min(workers, kViewCount),
                    [&](std::size_t v, std::size_t, std::size_t) {
                        render_view(cloud, box, opts, ViewId(v), set.views[v]);
                    });
    return set;
}

std::pair<ViewSet, ViewSet> project_pair(const PointCloud& ref, const PointCloud& dist,
                                         const ProjectionOptions& opts) {
    BoundingBox box = union_box(bounding_box(ref), bounding_box(dist));
    return {project_six_views(ref, box, opts), project_six_views(dist, box, opts)};
}

std::vector<std::uint8_t> encode_ppm(const View& view) {
    std::string header = "P6\n" + std::to_string(view.width) + " " +
                         std::to_string(view.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), view.rgb.begin(), view.rgb.end());
    return out;
}

std::vector<std::uint8_t> encode_pgm_mask(const View& view) {
    std::string header = "P5\n" + std::to_string(view.width) + " " +
                         std::to_string(view.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), view.mask.begin(), view.mask.end());
    return out;
}

namespace {

void write_bytes(const std::vector<std::uint8_t>& bytes, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

}  // namespace

void write_ppm(const View& view, const std::string& path) {
    write_bytes(encode_ppm(view), path);
}

void write_pgm_mask(const View& view, const std::string& path) {
    write_bytes(encode_pgm_mask(view), path);
}

void dump_views(const ViewSet& set, const std::string& prefix) {
    for (int v = 0; v < kViewCount; ++v) {
        const char* name = view_name(ViewId(v));
        write_ppm(set.views[std::size_t(v)], prefix + "_" + name + ".ppm");
        write_pgm_mask(set.views[std::size_t(v)], prefix + "_" + name + "_mask.pgm");
    }
}

}  // namespace pcqa
