// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pcqa/geometry.hpp"

namespace pcqa {

/// Exact nearest-neighbor index over 3D points. Median split on the widest
/// axis, configurable leaf size. Ties in distance resolve to the smallest
/// point id. Immutable after construction; concurrent queries are safe.
class KdTree {
public:
    struct Neighbor {
        std::uint32_t id;
        double squared_distance;
    };

    explicit KdTree(const std::vector<Vec3>& points, int leaf_size = 16);

    std::size_t size() const { return points_.size(); }

    /// True nearest neighbor of `query` (exact).
    Neighbor nearest(const Vec3& query) const;

    /// The k nearest neighbors, ordered by (squared_distance, id) ascending.
    /// k is clamped to the point count.
    std::vector<Neighbor> knearest(const Vec3& query, int k) const;

private:
    struct Node {
        // Internal: axis in [0,3), split plane at `split`; leaf: axis == -1.
        int axis;
        double split;
        std::uint32_t begin, end;    // range into order_ (leaves)
        std::int32_t left, right;    // child node indices (internal)
    };

    std::int32_t build(std::uint32_t begin, std::uint32_t end);
    void search_nearest(std::int32_t node, const Vec3& q, Neighbor& best) const;

    template <typename Visit>
    void search_leaves(std::int32_t node, const Vec3& q, double& radius2,
                       Visit&& visit) const;

    std::vector<Vec3> points_;
    std::vector<std::uint32_t> order_;  // permutation of point ids
    std::vector<Node> nodes_;
    int leaf_size_;
};

}  // namespace pcqa
