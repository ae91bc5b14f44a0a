// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <random>

#include "pcqa/errors.hpp"
#include "pcqa/kdtree.hpp"

using namespace pcqa;

namespace {

// Exhaustive scan with the same (distance, id) tie-break as the tree.
KdTree::Neighbor brute_nearest(const std::vector<Vec3>& pts, const Vec3& q) {
    KdTree::Neighbor best{0, squared_distance(pts[0], q)};
    for (std::uint32_t i = 1; i < pts.size(); ++i) {
        double d2 = squared_distance(pts[i], q);
        if (d2 < best.squared_distance) best = {i, d2};
    }
    return best;
}

std::vector<KdTree::Neighbor> brute_knearest(const std::vector<Vec3>& pts, const Vec3& q,
                                             int k) {
    std::vector<KdTree::Neighbor> all;
    for (std::uint32_t i = 0; i < pts.size(); ++i)
        all.push_back({i, squared_distance(pts[i], q)});
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.squared_distance != b.squared_distance
                   ? a.squared_distance < b.squared_distance
                   : a.id < b.id;
    });
    all.resize(std::min<std::size_t>(std::size_t(k), all.size()));
    return all;
}

std::vector<Vec3> cube_corners() {
    return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
            {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
}

}  // namespace

TEST_CASE("kdtree: single point answers every query") {
    KdTree tree({{3, 4, 5}});
    auto nn = tree.nearest({0, 0, 0});
    CHECK(nn.id == 0);
    CHECK(nn.squared_distance == doctest::Approx(50).epsilon(1e-15));
    CHECK(tree.nearest({3, 4, 5}).squared_distance == 0.0);
}

TEST_CASE("kdtree: empty input rejected") {
    CHECK_THROWS_AS(KdTree(std::vector<Vec3>{}), DataError);
}

TEST_CASE("kdtree: cube corner queries") {
    KdTree tree(cube_corners());
    auto nn = tree.nearest({0.1, 0, 0});
    CHECK(nn.id == 0);
    CHECK(nn.squared_distance == doctest::Approx(0.01).epsilon(1e-12));

    // query exactly on an indexed point
    CHECK(tree.nearest({1, 1, 0}).id == 3);
    CHECK(tree.nearest({1, 1, 0}).squared_distance == 0.0);
}

TEST_CASE("kdtree: distance ties resolve to the smallest id") {
    // the cube center is equidistant from all eight corners
    KdTree tree(cube_corners());
    auto nn = tree.nearest({0.5, 0.5, 0.5});
    CHECK(nn.id == 0);
    CHECK(nn.squared_distance == doctest::Approx(0.75).epsilon(1e-12));

    std::vector<Vec3> dup = {{2, 2, 2}, {2, 2, 2}, {2, 2, 2}};
    CHECK(KdTree(dup).nearest({0, 0, 0}).id == 0);
}

TEST_CASE("kdtree: matches brute-force scan on random instances") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> coord(-50.0, 50.0);
    for (int leaf : {1, 4, 16}) {
        std::vector<Vec3> pts;
        for (int i = 0; i < 200; ++i) pts.push_back({coord(rng), coord(rng), coord(rng)});
        KdTree tree(pts, leaf);
        for (int t = 0; t < 50; ++t) {
            Vec3 q{coord(rng), coord(rng), coord(rng)};
            auto got = tree.nearest(q);
            auto want = brute_nearest(pts, q);
            CHECK(got.id == want.id);
            CHECK(got.squared_distance == want.squared_distance);
        }
    }
}

TEST_CASE("kdtree: matches brute force on a tie-heavy integer grid") {
    std::vector<Vec3> pts;
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y)
            for (int z = 0; z < 5; ++z) pts.push_back({double(x), double(y), double(z)});
    KdTree tree(pts, 4);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coord(-1.0, 5.0);
    for (int t = 0; t < 200; ++t) {
        Vec3 q{coord(rng), coord(rng), coord(rng)};
        auto got = tree.nearest(q);
        auto want = brute_nearest(pts, q);
        CHECK(got.id == want.id);
        CHECK(got.squared_distance == want.squared_distance);
    }
}

TEST_CASE("kdtree: knearest ordering and oracle equivalence") {
    std::mt19937 rng(202);
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    std::vector<Vec3> pts;
    for (int i = 0; i < 150; ++i) pts.push_back({coord(rng), coord(rng), coord(rng)});
    KdTree tree(pts);
    for (int t = 0; t < 25; ++t) {
        Vec3 q{coord(rng), coord(rng), coord(rng)};
        for (int k : {1, 8, 16}) {
            auto got = tree.knearest(q, k);
            auto want = brute_knearest(pts, q, k);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].id == want[i].id);
                CHECK(got[i].squared_distance == want[i].squared_distance);
            }
        }
    }
}

TEST_CASE("kdtree: k clamps to the point count") {
    std::vector<Vec3> pts = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
    KdTree tree(pts);
    auto got = tree.knearest({0, 0, 0}, 10);
    REQUIRE(got.size() == 3);
    CHECK(got[0].id == 0);
    CHECK(got[1].id == 1);
    CHECK(got[2].id == 2);
}
