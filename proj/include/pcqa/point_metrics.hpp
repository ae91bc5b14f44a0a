// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "pcqa/point_cloud.hpp"

namespace pcqa {

/// Squared-error pooling over nearest-neighbor correspondences.
/// symmetric_* = max(forward_*, backward_*). Units: squared voxels.
struct GeometryError {
    double forward_mse = 0.0;
    double backward_mse = 0.0;
    double symmetric_mse = 0.0;
    double forward_haus = 0.0;
    double backward_haus = 0.0;
    double symmetric_haus = 0.0;
};

/// Symmetric per-channel MSE in YUV (BT.709), squared 8-bit code values.
struct ColorError {
    double mse_y = 0.0;
    double mse_u = 0.0;
    double mse_v = 0.0;
};

struct YuvPsnr {
    double psnr_y, psnr_u, psnr_v, psnr_yuv;
};

/// Per-point normals from the covariance of the k nearest neighbors
/// (eigenvector of the smallest eigenvalue), oriented away from the
/// neighborhood centroid. Throws DataError when k >= cloud size or k < 3.
PointCloud estimate_normals(const PointCloud& cloud, int k, int workers = 0);

/// Point-to-point (D1) error between clouds.
GeometryError d1_error(const PointCloud& ref, const PointCloud& dist, int workers = 0);

/// Point-to-plane (D2) error: squared projection of each error vector onto
/// the normal of the iterated cloud's point. `ref` must carry normals; if
/// `dist` has none the backward fields are NaN and symmetric = forward.
GeometryError d2_error(const PointCloud& ref, const PointCloud& dist, int workers = 0);

/// 10*log10(3*p^2 / mse), p = 2^bit_depth - 1. mse == 0 yields +infinity.
double geometry_psnr(double mse, int bit_depth);

/// BT.709 full-range RGB -> YUV (Y in [0,255], U/V offset by 128).
std::array<double, 3> rgb_to_yuv(const Color& c);

ColorError color_error(const PointCloud& ref, const PointCloud& dist, int workers = 0);

/// Per-channel PSNR (peak 255) and the (6*Y + U + V)/8 combination.
YuvPsnr yuv_psnr(const ColorError& err);

}  // namespace pcqa
