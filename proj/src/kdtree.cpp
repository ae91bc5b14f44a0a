// SPDX-License-Identifier: Apache-2.0
#include "pcqa/kdtree.hpp"

#include <algorithm>
#include <limits>

#include "pcqa/errors.hpp"

namespace pcqa {

KdTree::KdTree(const std::vector<Vec3>& points, int leaf_size)
    : points_(points), leaf_size_(std::max(1, leaf_size)) {
    if (points_.empty()) throw DataError("KdTree: empty point set");
    order_.resize(points_.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
    nodes_.reserve(2 * points_.size() / std::size_t(leaf_size_) + 2);
    build(0, std::uint32_t(points_.size()));
}

std::int32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
    std::int32_t index = std::int32_t(nodes_.size());
    nodes_.push_back({});
    Node node{};
    node.begin = begin;
    node.end = end;

    if (end - begin <= std::uint32_t(leaf_size_)) {
        node.axis = -1;
        // Leaf ids sorted ascending so ties scan smallest id first.
        std::sort(order_.begin() + begin, order_.begin() + end);
        nodes_[std::size_t(index)] = node;
        return index;
    }

    constexpr double inf = std::numeric_limits<double>::infinity();
    Vec3 lo{inf, inf, inf}, hi{-inf, -inf, -inf};
    for (std::uint32_t i = begin; i < end; ++i) {
        const Vec3& p = points_[order_[i]];
        for (int a = 0; a < 3; ++a) {
            lo[a] = std::min(lo[a], p[a]);
            hi[a] = std::max(hi[a], p[a]);
        }
    }
    int axis = 0;
    Vec3 ext = hi - lo;
    if (ext.y > ext[axis]) axis = 1;
    if (ext.z > ext[axis]) axis = 2;

    std::uint32_t mid = begin + (end - begin) / 2;
    auto cmp = [&](std::uint32_t a, std::uint32_t b) {
        double ca = points_[a][axis], cb = points_[b][axis];
        return ca < cb || (ca == cb && a < b);
    };
    std::nth_element(order_.begin() + begin, order_.begin() + mid,
                     order_.begin() + end, cmp);

    node.axis = axis;
    node.split = points_[order_[mid]][axis];
    node.left = build(begin, mid);
    node.right = build(mid, end);
    nodes_[std::size_t(index)] = node;
    return index;
}

void KdTree::search_nearest(std::int32_t ni, const Vec3& q, Neighbor& best) const {
    const Node& node = nodes_[std::size_t(ni)];
    if (node.axis < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            std::uint32_t id = order_[i];
            double d2 = squared_distance(points_[id], q);
            if (d2 < best.squared_distance ||
                (d2 == best.squared_distance && id < best.id)) {
                best = {id, d2};
            }
        }
        return;
    }
    double delta = q[node.axis] - node.split;
    std::int32_t near = delta < 0.0 ? node.left : node.right;
    std::int32_t far = delta < 0.0 ? node.right : node.left;
    search_nearest(near, q, best);
    if (delta * delta <= best.squared_distance) search_nearest(far, q, best);
}

KdTree::Neighbor KdTree::nearest(const Vec3& query) const {
    Neighbor best{0, std::numeric_limits<double>::infinity()};
    search_nearest(0, query, best);
    return best;
}

namespace {

// Worst-first ordering for the bounded candidate heap.
bool heap_less(const KdTree::Neighbor& a, const KdTree::Neighbor& b) {
    return a.squared_distance < b.squared_distance ||
           (a.squared_distance == b.squared_distance && a.id < b.id);
}

}  // namespace

std::vector<KdTree::Neighbor> KdTree::knearest(const Vec3& query, int k) const {
    k = int(std::min<std::size_t>(std::size_t(std::max(1, k)), points_.size()));
    std::vector<Neighbor> heap;
    heap.reserve(std::size_t(k));
    double radius2 = std::numeric_limits<double>::infinity();

    search_leaves(0, query, radius2, [&](std::uint32_t id, double d2) {
        Neighbor cand{id, d2};
        if (int(heap.size()) < k) {
            heap.push_back(cand);
            std::push_heap(heap.begin(), heap.end(), heap_less);
            if (int(heap.size()) == k) radius2 = heap.front().squared_distance;
        } else if (heap_less(cand, heap.front())) {
            std::pop_heap(heap.begin(), heap.end(), heap_less);
            heap.back() = cand;
            std::push_heap(heap.begin(), heap.end(), heap_less);
            radius2 = heap.front().squared_distance;
        }
    });

    std::sort_heap(heap.begin(), heap.end(), heap_less);
    return heap;
}

template <typename Visit>
void KdTree::search_leaves(std::int32_t ni, const Vec3& q, double& radius2,
                           Visit&& visit) const {
    const Node& node = nodes_[std::size_t(ni)];
    if (node.axis < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            std::uint32_t id = order_[i];
            visit(id, squared_distance(points_[id], q));
        }
        return;
    }
    double delta = q[node.axis] - node.split;
    std::int32_t near = delta < 0.0 ? node.left : node.right;
    std::int32_t far = delta < 0.0 ? node.right : node.left;
    search_leaves(near, q, radius2, visit);
    if (delta * delta <= radius2) search_leaves(far, q, radius2, visit);
}

}  // namespace pcqa
