// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pcqa/image.hpp"

namespace pcqa {

/// A registered full-reference image metric. Scores are computed on luma;
/// gmsd is lower-better, everything else higher-better.
struct IqaMetric {
    std::string name;
    bool higher_better = true;
    double perfect_score = 1.0;  // value at dist == ref
    std::function<double(const Image& ref, const Image& dist)> score;
};

/// Registration hook: adds a metric (or replaces one with the same name).
void register_iqa_metric(const IqaMetric& metric);

/// Lookup by name; throws DataError for unknown metrics.
const IqaMetric& find_iqa_metric(const std::string& name);

/// Names of all registered metrics, sorted. Built-ins: psnr, uqi, ssim,
/// ms_ssim, gmsd.
std::vector<std::string> iqa_metric_names();

/// Convenience: dimension-check, convert to luma, score.
double iqa_score(const std::string& name, const Image& ref, const Image& dist);

// Direct entry points (luma or RGB input; RGB converts internally).
double iqa_psnr(const Image& ref, const Image& dist);
double iqa_uqi(const Image& ref, const Image& dist);
double iqa_ssim(const Image& ref, const Image& dist);
double iqa_ms_ssim(const Image& ref, const Image& dist);
double iqa_gmsd(const Image& ref, const Image& dist);

/// MS-SSIM with custom per-scale exponents; scale count = weights.size(),
/// the last scale contributes the full SSIM term. weights = {1} is plain SSIM.
double iqa_ms_ssim(const Image& ref, const Image& dist,
                   const std::vector<double>& weights);

}  // namespace pcqa
