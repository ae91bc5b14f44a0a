// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "pcqa/projection.hpp"

namespace pcqa {

/// Floating-point image in [0, 255], 1 (luma) or 3 (RGB) channels,
/// row-major interleaved.
struct Image {
    int width = 0, height = 0, channels = 1;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, int ch, double fill = 0.0)
        : width(w), height(h), channels(ch),
          data(std::size_t(w) * std::size_t(h) * std::size_t(ch), fill) {}

    double& at(int x, int y, int c = 0) {
        return data[(std::size_t(y) * std::size_t(width) + std::size_t(x)) *
                        std::size_t(channels) + std::size_t(c)];
    }
    double at(int x, int y, int c = 0) const {
        return data[(std::size_t(y) * std::size_t(width) + std::size_t(x)) *
                        std::size_t(channels) + std::size_t(c)];
    }

    std::size_t pixel_count() const { return std::size_t(width) * std::size_t(height); }
};

Image image_from_view(const View& view);

/// BT.709 luma of an RGB image; 1-channel input passes through.
Image luminance(const Image& img);

}  // namespace pcqa
