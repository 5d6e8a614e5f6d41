#include "tmq/hilbert.hpp"

#include <array>
#include <cmath>
#include <string>

#include "tmq/errors.hpp"
#include "tmq/mesh_model.hpp"

namespace tmq {

namespace {

void check_order(int bits) {
    if (bits < 1 || bits > kMaxBitsPerAxis)
        throw InvalidArgumentError("bits_per_axis must be in 1.." +
                                   std::to_string(kMaxBitsPerAxis) + ", got " +
                                   std::to_string(bits));
}

// Transposed form: the code's bits interleaved across three words,
// x[0] holding the most significant bit of each 3-bit group.
std::uint64_t pack_transpose(const std::array<std::uint32_t, 3>& x, int bits) {
    std::uint64_t code = 0;
    for (int bit = bits - 1; bit >= 0; --bit)
        for (int dim = 0; dim < 3; ++dim)
            code = (code << 1) | ((x[dim] >> bit) & 1u);
    return code;
}

std::array<std::uint32_t, 3> unpack_transpose(std::uint64_t code, int bits) {
    std::array<std::uint32_t, 3> x{0, 0, 0};
    for (int bit = 0; bit < bits; ++bit)
        for (int dim = 0; dim < 3; ++dim)
            x[dim] |= static_cast<std::uint32_t>((code >> (3 * bit + (2 - dim))) & 1u) << bit;
    return x;
}

} // namespace

HilbertCode h_encode(const LatticePoint& p, int bits_per_axis) {
    check_order(bits_per_axis);
    const std::uint32_t limit = 1u << bits_per_axis;
    if (p.i >= limit || p.j >= limit || p.k >= limit)
        throw RangeError("lattice point out of range for order " +
                         std::to_string(bits_per_axis));

    std::array<std::uint32_t, 3> x{p.i, p.j, p.k};
    const std::uint32_t m = 1u << (bits_per_axis - 1);

    // Inverse undo
    for (std::uint32_t q = m; q > 1; q >>= 1) {
        const std::uint32_t mask = q - 1;
        for (int dim = 0; dim < 3; ++dim) {
            if (x[dim] & q) {
                x[0] ^= mask;
            } else {
                const std::uint32_t t = (x[0] ^ x[dim]) & mask;
                x[0] ^= t;
                x[dim] ^= t;
            }
        }
    }
    // Gray encode
    x[1] ^= x[0];
    x[2] ^= x[1];
    std::uint32_t t = 0;
    for (std::uint32_t q = m; q > 1; q >>= 1)
        if (x[2] & q) t ^= q - 1;
    for (int dim = 0; dim < 3; ++dim) x[dim] ^= t;

    return pack_transpose(x, bits_per_axis);
}

LatticePoint h_decode(HilbertCode code, int bits_per_axis) {
    check_order(bits_per_axis);
    if (code >> (3 * bits_per_axis))
        throw RangeError("hilbert code out of range for order " +
                         std::to_string(bits_per_axis));

    std::array<std::uint32_t, 3> x = unpack_transpose(code, bits_per_axis);
    const std::uint32_t n = 2u << (bits_per_axis - 1);

    // Gray decode
    std::uint32_t t = x[2] >> 1;
    x[2] ^= x[1];
    x[1] ^= x[0];
    x[0] ^= t;
    // Undo excess work
    for (std::uint32_t q = 2; q != n; q <<= 1) {
        const std::uint32_t mask = q - 1;
        for (int dim = 2; dim >= 0; --dim) {
            if (x[dim] & q) {
                x[0] ^= mask;
            } else {
                t = (x[0] ^ x[dim]) & mask;
                x[0] ^= t;
                x[dim] ^= t;
            }
        }
    }
    return {x[0], x[1], x[2]};
}

Quantizer::Quantizer(const Box3& box, int bits_per_axis) : box_(box), bits_(bits_per_axis) {
    check_order(bits_per_axis);
    if (!(box.min.x < box.max.x) || !(box.min.y < box.max.y) || !(box.min.z < box.max.z))
        throw InvalidArgumentError("quantizer box must satisfy min < max on every axis");
}

LatticePoint Quantizer::quantize(const Vec3& p) const {
    if (!is_finite(p)) throw InvalidArgumentError("cannot quantize non-finite coordinates");
    const double top = static_cast<double>((1u << bits_) - 1);
    const Vec3 span = box_.extent();
    LatticePoint lp;
    std::uint32_t* out[3] = {&lp.i, &lp.j, &lp.k};
    for (int axis = 0; axis < 3; ++axis) {
        const double u = (p[axis] - box_.min[axis]) / span[axis] * top;
        const double r = std::floor(u + 0.5); // round half up
        const double clamped = std::min(std::max(r, 0.0), top);
        *out[axis] = static_cast<std::uint32_t>(clamped);
    }
    return lp;
}

HcodeStats assign_hcodes(MeshStore& store, const Quantizer& q) {
    if (!store.centroids_computed())
        throw StateError("assign_hcodes requires computed centroids");

    const std::size_t n = store.tet_count();
    HcodeStats stats;
    std::vector<std::uint64_t> codes(n);
    for (std::size_t t = 0; t < n; ++t) {
        const Vec3& c = store.centroid_at(static_cast<std::int32_t>(t));
        if (!q.inside(c)) ++stats.clamped;
        codes[t] = h_encode(q.quantize(c), q.bits());
    }
    stats.assigned = n;
    store.install_hcodes(std::move(codes), q);
    return stats;
}

} // namespace tmq
