// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pcqa {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    double& operator[](int i) { return (&x)[i]; }
    double operator[](int i) const { return (&x)[i]; }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double squared_norm() const { return dot(*this); }
    double norm() const { return std::sqrt(squared_norm()); }

    Vec3 normalized() const {
        double n = norm();
        return n > 0.0 ? *this / n : Vec3{};
    }
};

inline double squared_distance(const Vec3& a, const Vec3& b) {
    return (a - b).squared_norm();
}

using Color = std::array<std::uint8_t, 3>;

struct BoundingBox {
    Vec3 min_corner;
    Vec3 max_corner;

    Vec3 extent() const { return max_corner - min_corner; }

    bool contains(const Vec3& p) const {
        for (int a = 0; a < 3; ++a)
            if (p[a] < min_corner[a] || p[a] > max_corner[a]) return false;
        return true;
    }

    void expand(const Vec3& p) {
        for (int a = 0; a < 3; ++a) {
            if (p[a] < min_corner[a]) min_corner[a] = p[a];
            if (p[a] > max_corner[a]) max_corner[a] = p[a];
        }
    }
};

inline BoundingBox union_box(const BoundingBox& a, const BoundingBox& b) {
    BoundingBox u = a;
    u.expand(b.min_corner);
    u.expand(b.max_corner);
    return u;
}

// Round half away from zero, used everywhere a coordinate or color is quantized.
inline double round_half_away(double v) { return std::round(v); }

}  // namespace pcqa
