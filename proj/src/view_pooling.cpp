// SPDX-License-Identifier: Apache-2.0
#include "pcqa/view_pooling.hpp"

#include "pcqa/errors.hpp"

namespace pcqa {

bool gamma_in_recommended_range(double gamma) {
    return gamma >= kGammaRecommendedLow && gamma <= kGammaRecommendedHigh;
}

double pool_views(const ViewScores& v) {
    if (v.gamma < 0.0 || v.gamma > 1.0)
        throw DataError("pool_views: gamma outside [0, 1]");
    double lateral = v[ViewId::front] + v[ViewId::back] + v[ViewId::left] + v[ViewId::right];
    double polar = v[ViewId::top] + v[ViewId::bottom];
    return (1.0 - v.gamma) / 4.0 * lateral + v.gamma / 2.0 * polar;
}

ProjectionPcqaResult projection_pcqa(const PointCloud& ref, const PointCloud& dist,
                                     const std::string& metric, double gamma,
                                     const ProjectionOptions& opts) {
    const IqaMetric& m = find_iqa_metric(metric);
    auto [ref_views, dist_views] = project_pair(ref, dist, opts);

    ProjectionPcqaResult result;
    result.per_view.gamma = gamma;
    for (int v = 0; v < kViewCount; ++v) {
        result.per_view.scores[std::size_t(v)] =
            m.score(image_from_view(ref_views.views[std::size_t(v)]),
                    image_from_view(dist_views.views[std::size_t(v)]));
    }
    result.pooled = pool_views(result.per_view);
    return result;
}

}  // namespace pcqa
