#pragma once

#include <vector>

#include "tmq/mesh_model.hpp"

namespace tmq {

// The unique element on the other side of the face opposite
// `opposite_vertex_rank`, or kNoElement (-1) for a surface face. The result
// is memoized together with its symmetric entry; cold and warm calls are
// indistinguishable. Throws ConnectivityError if more than one element
// shares the face.
ElemId face_neighbor(const MeshStore& store, ElemId elem_id, int opposite_vertex_rank);

// Elements containing the vertex, in ascending element-id insertion order.
// Throws NotFoundError on an unknown vertex.
std::vector<ElemId> elements_of_vertex(const MeshStore& store, VertexId vertex_id);

// Internal-index variant used by the traversal loop.
std::int32_t face_neighbor_index(const MeshStore& store, std::int32_t tet_index,
                                 int opposite_vertex_rank);

} // namespace tmq
