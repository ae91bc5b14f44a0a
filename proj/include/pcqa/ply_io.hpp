// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcqa/point_cloud.hpp"

namespace pcqa {

enum class PlyEncoding { ascii, binary_le };

/// Parse a PLY 1.0 stream (ASCII or binary little-endian). Vertex properties
/// x/y/z (float32 or int32) are required; red/green/blue (uint8) and nx/ny/nz
/// (float32) are picked up when declared. Face elements are skipped.
/// Throws ParseError (with byte offset) on malformed or truncated input.
PointCloud parse_ply(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> write_ply(const PointCloud& cloud, PlyEncoding encoding);

PointCloud load_ply(const std::string& path);
void save_ply(const PointCloud& cloud, const std::string& path,
              PlyEncoding encoding = PlyEncoding::binary_le);

}  // namespace pcqa
