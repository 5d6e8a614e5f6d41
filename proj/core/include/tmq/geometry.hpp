#pragma once

#include <array>

#include "tmq/vec3.hpp"

namespace tmq {

// Corner positions in rank order. Face r is the face opposite corner r;
// that convention is used everywhere a face rank appears in queries.
struct TetCorners {
    std::array<Vec3, 4> p;
};

// Coefficients of p = p0 + lambda*e1 + mu*e2 + nu*e3 with
// e_i = p_i - p0. Containment means all three >= 0 and their sum <= 1.
struct BarycentricCoords {
    double lambda = 0.0;
    double mu = 0.0;
    double nu = 0.0;
};

// One-sided absolute slack applied to the containment and exit-face
// inequalities so points on a face, edge, or corner test as inside.
struct Tolerance {
    double epsilon = 1e-15;
};

// Tets at or below this absolute volume are rejected from query structures.
inline constexpr double kDegenerateVolume = 1e-300;

inline constexpr int kInsideFace = 4; // exit_face result for contained points

double signed_volume(const TetCorners& t);

Vec3 centroid(const TetCorners& t);

// Cramer's rule on the edge-vector frame: four 3x3 determinants and three
// divisions. Throws DegenerateTetError when |volume| <= kDegenerateVolume.
BarycentricCoords solve_barycentric(const TetCorners& t, const Vec3& p);

// True iff lambda, mu, nu >= -eps and lambda + mu + nu <= 1 + eps.
// Boundary points (face/edge/vertex) are inside.
bool point_in_tet(const TetCorners& t, const Vec3& p, const Tolerance& tol = {});

// True iff p - c lies in the non-negative span of the vectors from the
// centroid c to the three corners of the face opposite `face_rank`
// (coefficients >= -eps).
bool face_cone_contains(const TetCorners& t, int face_rank, const Vec3& p,
                        const Tolerance& tol = {});

// Rank of the face crossed by the ray from the centroid toward p, or
// kInsideFace when the point is contained. Faces are tested in rank order
// 0,1,2,3 and the first hit wins (grazing an edge or corner can satisfy
// several cones). Throws TraversalStuckError if no face qualifies.
int exit_face(const TetCorners& t, const Vec3& p, const Tolerance& tol = {});

} // namespace tmq
