// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>

#include "pcqa/iqa.hpp"
#include "pcqa/point_cloud.hpp"
#include "pcqa/projection.hpp"

namespace pcqa {

constexpr double kDefaultGamma = 0.19;
constexpr double kGammaRecommendedLow = 0.13;
constexpr double kGammaRecommendedHigh = 0.31;
constexpr double kGammaMeanPooling = 1.0 / 3.0;  // weights collapse to the mean

/// Six per-view scores indexed by ViewId order (front, back, left, right,
/// top, bottom) plus the top/bottom weight gamma in [0, 1].
struct ViewScores {
    std::array<double, kViewCount> scores{};
    double gamma = kDefaultGamma;

    double& operator[](ViewId v) { return scores[std::size_t(v)]; }
    double operator[](ViewId v) const { return scores[std::size_t(v)]; }
};

bool gamma_in_recommended_range(double gamma);

/// Weighted pooling: (1-g)/4 on the four lateral views, g/2 on top/bottom.
/// gamma = 1/3 reproduces the plain mean. Throws DataError outside [0, 1].
double pool_views(const ViewScores& v);

struct ProjectionPcqaResult {
    ViewScores per_view;
    double pooled;
};

/// End-to-end projection pipeline: render both clouds into their union box,
/// score each of the six aligned view pairs, pool with gamma.
ProjectionPcqaResult projection_pcqa(const PointCloud& ref, const PointCloud& dist,
                                     const std::string& metric,
                                     double gamma = kDefaultGamma,
                                     const ProjectionOptions& opts = {});

}  // namespace pcqa
