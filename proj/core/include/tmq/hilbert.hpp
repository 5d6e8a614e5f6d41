#pragma once

#include <cstddef>
#include <cstdint>

#include "tmq/vec3.hpp"

namespace tmq {

// A point of the non-negative cubic lattice the curve is defined on.
// Each component must fit in the configured bits-per-axis (at most 21,
// so a full-resolution code fits in 63 bits and thus in a signed 64-bit
// integer).
struct LatticePoint {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::uint32_t k = 0;

    constexpr bool operator==(const LatticePoint&) const = default;
};

using HilbertCode = std::uint64_t;

inline constexpr int kMaxBitsPerAxis = 21;

// Rank of a lattice point on the 3D Hilbert curve of order `bits_per_axis`.
//
// The variant implemented here is the compact transposed Gray-code
// formulation (Butz/Skilling style): deterministic, bijective between the
// full order-n lattice and [0, 8^n), and consecutive codes decode to
// lattice points at L1 distance exactly 1. The curve starts at the
// origin: h_encode({0,0,0}) == 0 at every order.
//
// Throws RangeError if a component does not fit in bits_per_axis.
HilbertCode h_encode(const LatticePoint& p, int bits_per_axis = kMaxBitsPerAxis);

// Inverse of h_encode at the same order.
// Throws RangeError if the code is outside [0, 8^bits_per_axis).
LatticePoint h_decode(HilbertCode code, int bits_per_axis = kMaxBitsPerAxis);

// Affine map from a model-space bounding box onto the lattice
// [0, 2^bits - 1]^3, rounded half-up. Points outside the box clamp to it;
// query points may sit slightly outside the mesh hull and still need a
// usable key.
class Quantizer {
public:
    Quantizer() = default;

    // Throws InvalidArgumentError unless min < max on every axis and
    // 1 <= bits_per_axis <= kMaxBitsPerAxis.
    explicit Quantizer(const Box3& box, int bits_per_axis = kMaxBitsPerAxis);

    // Throws InvalidArgumentError on non-finite coordinates.
    LatticePoint quantize(const Vec3& p) const;

    bool inside(const Vec3& p) const { return box_.contains(p); }

    const Box3& box() const { return box_; }
    int bits() const { return bits_; }

private:
    Box3 box_ = Box3::unit();
    int bits_ = kMaxBitsPerAxis;
};

class MeshStore;

struct HcodeStats {
    std::size_t assigned = 0;
    std::size_t clamped = 0; // centroids outside the quantizer box
};

// Computes hcode = h_encode(quantize(centroid)) for every tetrahedron and
// builds the sorted (hcode, element) index used for candidate selection.
// Requires centroids; the store keeps the quantizer for query-time use.
HcodeStats assign_hcodes(MeshStore& store, const Quantizer& q);

} // namespace tmq
