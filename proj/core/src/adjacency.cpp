#include "tmq/adjacency.hpp"

#include <string>

#include "tmq/errors.hpp"

namespace tmq {

namespace {

// Intersects the sorted incidence lists of the three face vertices,
// excluding `self`. Returns the match count; *out holds the first match.
int intersect_incidence(const MeshStore& store, const std::array<std::int32_t, 3>& face_verts,
                        std::int32_t self, std::int32_t* out) {
    const auto a = store.incident_tets(face_verts[0]);
    const auto b = store.incident_tets(face_verts[1]);
    const auto c = store.incident_tets(face_verts[2]);
    std::size_t ia = 0, ib = 0, ic = 0;
    int matches = 0;
    while (ia < a.size() && ib < b.size() && ic < c.size()) {
        const std::int32_t va = a[ia], vb = b[ib], vc = c[ic];
        if (va == vb && vb == vc) {
            if (va != self) {
                if (matches == 0) *out = va;
                ++matches;
            }
            ++ia, ++ib, ++ic;
        } else {
            const std::int32_t m = std::min(va, std::min(vb, vc));
            if (va == m) ++ia;
            if (vb == m) ++ib;
            if (vc == m) ++ic;
        }
    }
    return matches;
}

} // namespace

std::int32_t face_neighbor_index(const MeshStore& store, std::int32_t tet_index,
                                 int opposite_vertex_rank) {
    NeighborCache& cache = store.neighbor_cache();
    const std::int32_t cached = cache.get(tet_index, opposite_vertex_rank);
    if (cached != NeighborCache::kUnknown) return cached;

    const auto& vi = store.tet_vertex_indices(tet_index);
    std::array<std::int32_t, 3> face_verts;
    int n = 0;
    for (int r = 0; r < 4; ++r)
        if (r != opposite_vertex_rank) face_verts[n++] = vi[r];

    std::int32_t neighbor = kNoElement;
    const int matches = intersect_incidence(store, face_verts, tet_index, &neighbor);
    if (matches > 1)
        throw ConnectivityError("face opposite rank " + std::to_string(opposite_vertex_rank) +
                                " of element " +
                                std::to_string(store.tet_id_at(tet_index)) + " is shared by " +
                                std::to_string(matches + 1) + " elements");
    if (matches == 0) neighbor = kNoElement;

    cache.put(tet_index, opposite_vertex_rank, neighbor);
    if (neighbor != kNoElement) {
        // symmetric entry: the neighbor's rank for the shared face is the
        // rank of its vertex that is not on the face
        const auto& nv = store.tet_vertex_indices(neighbor);
        for (int r = 0; r < 4; ++r) {
            if (nv[r] != face_verts[0] && nv[r] != face_verts[1] && nv[r] != face_verts[2]) {
                cache.put(neighbor, r, tet_index);
                break;
            }
        }
    }
    return neighbor;
}

ElemId face_neighbor(const MeshStore& store, ElemId elem_id, int opposite_vertex_rank) {
    if (opposite_vertex_rank < 0 || opposite_vertex_rank > 3)
        throw InvalidArgumentError("face rank must be in 0..3, got " +
                                   std::to_string(opposite_vertex_rank));
    const std::int32_t n =
        face_neighbor_index(store, store.tet_index_of(elem_id), opposite_vertex_rank);
    return n == kNoElement ? kNoElement : store.tet_id_at(n);
}

std::vector<ElemId> elements_of_vertex(const MeshStore& store, VertexId vertex_id) {
    const auto tets = store.incident_tets(store.vertex_index_of(vertex_id));
    std::vector<ElemId> out;
    out.reserve(tets.size());
    for (const std::int32_t t : tets) out.push_back(store.tet_id_at(t));
    return out;
}

} // namespace tmq
