#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tmq/vec3.hpp"

namespace tmq {

// Deterministic uniform doubles in [0, 1): built from the top 53 bits of
// the engine output, so sequences are identical across standard-library
// implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Vec3 uniform_in_box(std::mt19937_64& rng, const Box3& box) {
    const Vec3 e = box.extent();
    return {box.min.x + e.x * uniform01(rng), box.min.y + e.y * uniform01(rng),
            box.min.z + e.z * uniform01(rng)};
}

// Uniform points in the ball (x-cx)^2 + (y-cy)^2 + (z-cz)^2 <= r^2,
// by rejection sampling in the bounding cube.
inline std::vector<Vec3> sphere_cloud(const Vec3& center, double radius, std::size_t count,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vec3> points;
    points.reserve(count);
    while (points.size() < count) {
        const Vec3 u{2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0,
                     2.0 * uniform01(rng) - 1.0};
        if (dot(u, u) <= 1.0) points.push_back(center + u * radius);
    }
    return points;
}

inline std::vector<Vec3> box_cloud(const Box3& box, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vec3> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) points.push_back(uniform_in_box(rng, box));
    return points;
}

} // namespace tmq
