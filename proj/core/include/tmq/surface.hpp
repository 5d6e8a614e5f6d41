#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tmq/mesh_model.hpp"

namespace tmq {

// A boundary triangle in normalized form: vertex ids sorted ascending.
// tri_ids are dense, 1-based, assigned in lexicographic order of the
// sorted triples, so surface output files are reproducible byte for byte.
struct UnorientedTriangle {
    std::int32_t tri_id = 0;
    VertexId a = 0;
    VertexId b = 0;
    VertexId c = 0;
};

// A boundary triangle with its vertices in FemLib order for the owning
// element; orderings differing by an even permutation are the same
// oriented triangle.
struct OrientedTriangle {
    std::int32_t tri_id = 0;
    ElemId elem_id = 0;
    std::array<VertexId, 3> v{};
};

// The FemLib face convention for a tetrahedron (v0, v1, v2, v3): the four
// oriented boundary triangles are, in face-rank order,
//   [(v0,v1,v2), (v1,v3,v2), (v2,v3,v0), (v0,v3,v1)].
// (For a positively oriented element these triangles' normals point into
// the element; coherence checks below do not depend on that.)
struct FemLibFaceRow {
    std::uint8_t tet_face_rank;   // 0..3
    std::uint8_t tet_vertex_rank; // 0..3
    std::uint8_t tri_vertex_rank; // 0..2
};

inline constexpr std::array<FemLibFaceRow, 12> kFemLibTetFaces{{
    {0, 0, 0}, {0, 1, 1}, {0, 2, 2},
    {1, 1, 0}, {1, 3, 1}, {1, 2, 2},
    {2, 2, 0}, {2, 3, 1}, {2, 0, 2},
    {3, 0, 0}, {3, 3, 1}, {3, 1, 2},
}};

// Vertices of one FemLib face of the element, in FemLib order.
std::array<VertexId, 3> femlib_face_vertices(const TetQuad& quad, int femlib_face_rank);

// All face triples bounding exactly one element, as normalized triangles.
// Throws ConnectivityError if any triple bounds more than two elements.
std::vector<UnorientedTriangle> extract_unoriented(const MeshStore& store);

// Recovers coherent orientations: finds each triangle's owning element
// through the vertex incidence index and emits its vertices in FemLib
// order. Throws ConnectivityError when a triangle does not match exactly
// one element face.
std::vector<OrientedTriangle> orient(const MeshStore& store,
                                     std::span<const UnorientedTriangle> tris);

} // namespace tmq
