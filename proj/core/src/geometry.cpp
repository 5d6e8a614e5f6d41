#include "tmq/geometry.hpp"

#include <cmath>

#include "tmq/errors.hpp"

namespace tmq {

namespace {

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

void check_tolerance(const Tolerance& tol) {
    if (!(tol.epsilon >= 0.0)) throw InvalidArgumentError("tolerance epsilon must be >= 0");
}

// Solves x*a + y*b + z*c = r by Cramer's rule. Returns false when the
// basis is numerically degenerate.
bool solve3(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& r, double& x, double& y,
            double& z) {
    const double d = det3(a, b, c);
    if (std::abs(d) <= 6.0 * kDegenerateVolume) return false;
    x = det3(r, b, c) / d;
    y = det3(a, r, c) / d;
    z = det3(a, b, r) / d;
    return true;
}

} // namespace

double signed_volume(const TetCorners& t) {
    return det3(t.p[1] - t.p[0], t.p[2] - t.p[0], t.p[3] - t.p[0]) / 6.0;
}

Vec3 centroid(const TetCorners& t) { return (t.p[0] + t.p[1] + t.p[2] + t.p[3]) * 0.25; }

BarycentricCoords solve_barycentric(const TetCorners& t, const Vec3& p) {
    BarycentricCoords bc;
    if (!solve3(t.p[1] - t.p[0], t.p[2] - t.p[0], t.p[3] - t.p[0], p - t.p[0], bc.lambda,
                bc.mu, bc.nu))
        throw DegenerateTetError("tetrahedron volume below degeneracy threshold");
    return bc;
}

bool point_in_tet(const TetCorners& t, const Vec3& p, const Tolerance& tol) {
    check_tolerance(tol);
    const BarycentricCoords bc = solve_barycentric(t, p);
    const double e = tol.epsilon;
    return bc.lambda >= -e && bc.mu >= -e && bc.nu >= -e && bc.lambda + bc.mu + bc.nu <= 1.0 + e;
}

bool face_cone_contains(const TetCorners& t, int face_rank, const Vec3& p, const Tolerance& tol) {
    check_tolerance(tol);
    if (face_rank < 0 || face_rank > 3) throw InvalidArgumentError("face rank must be in 0..3");
    const Vec3 c = centroid(t);
    int corners[3];
    int n = 0;
    for (int r = 0; r < 4; ++r)
        if (r != face_rank) corners[n++] = r;
    double a, b, g;
    if (!solve3(t.p[corners[0]] - c, t.p[corners[1]] - c, t.p[corners[2]] - c, p - c, a, b, g))
        return false;
    const double e = tol.epsilon;
    return a >= -e && b >= -e && g >= -e;
}

int exit_face(const TetCorners& t, const Vec3& p, const Tolerance& tol) {
    if (point_in_tet(t, p, tol)) return kInsideFace;
    for (int r = 0; r < 4; ++r)
        if (face_cone_contains(t, r, p, tol)) return r;
    throw TraversalStuckError("no face cone contains the query direction");
}

} // namespace tmq
