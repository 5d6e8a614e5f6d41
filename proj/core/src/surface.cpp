#include "tmq/surface.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "tmq/errors.hpp"

namespace tmq {

namespace {

struct TripleKey {
    std::array<VertexId, 3> v;
    bool operator==(const TripleKey&) const = default;
};

struct TripleHash {
    std::size_t operator()(const TripleKey& k) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (const VertexId id : k.v) {
            h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(id));
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

// tri-vertex emission order per FemLib face: order[f][tri_rank] = tet_rank
struct FemLibOrders {
    std::array<std::array<int, 3>, 4> order{};
    std::array<int, 4> face_for_missing_rank{}; // opposite corner -> face rank
};

FemLibOrders femlib_orders() {
    FemLibOrders fo;
    std::array<std::array<bool, 4>, 4> uses{};
    for (const FemLibFaceRow& row : kFemLibTetFaces) {
        fo.order[row.tet_face_rank][row.tri_vertex_rank] = row.tet_vertex_rank;
        uses[row.tet_face_rank][row.tet_vertex_rank] = true;
    }
    for (int f = 0; f < 4; ++f)
        for (int r = 0; r < 4; ++r)
            if (!uses[f][r]) fo.face_for_missing_rank[r] = f;
    return fo;
}

std::string triple_str(VertexId a, VertexId b, VertexId c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

} // namespace

std::array<VertexId, 3> femlib_face_vertices(const TetQuad& quad, int femlib_face_rank) {
    if (femlib_face_rank < 0 || femlib_face_rank > 3)
        throw InvalidArgumentError("face rank must be in 0..3");
    static const FemLibOrders fo = femlib_orders();
    const auto& order = fo.order[femlib_face_rank];
    return {quad.v[order[0]], quad.v[order[1]], quad.v[order[2]]};
}

std::vector<UnorientedTriangle> extract_unoriented(const MeshStore& store) {
    std::unordered_map<TripleKey, int, TripleHash> tally;
    tally.reserve(store.tet_count() * 2);

    for (std::size_t t = 0; t < store.tet_count(); ++t) {
        const auto& v = store.tet_vertex_ids(static_cast<std::int32_t>(t));
        for (int opp = 0; opp < 4; ++opp) {
            TripleKey key;
            int n = 0;
            for (int r = 0; r < 4; ++r)
                if (r != opp) key.v[n++] = v[r];
            std::sort(key.v.begin(), key.v.end());
            const int count = ++tally[key];
            if (count > 2)
                throw ConnectivityError("face " + triple_str(key.v[0], key.v[1], key.v[2]) +
                                        " is bounded by more than two elements");
        }
    }

    std::vector<UnorientedTriangle> tris;
    for (const auto& [key, count] : tally)
        if (count == 1) tris.push_back({0, key.v[0], key.v[1], key.v[2]});
    std::sort(tris.begin(), tris.end(), [](const UnorientedTriangle& x, const UnorientedTriangle& y) {
        return std::array{x.a, x.b, x.c} < std::array{y.a, y.b, y.c};
    });
    for (std::size_t i = 0; i < tris.size(); ++i)
        tris[i].tri_id = static_cast<std::int32_t>(i + 1);
    return tris;
}

std::vector<OrientedTriangle> orient(const MeshStore& store,
                                     std::span<const UnorientedTriangle> tris) {
    static const FemLibOrders fo = femlib_orders();

    std::vector<OrientedTriangle> out;
    out.reserve(tris.size());
    for (const UnorientedTriangle& tri : tris) {
        // owning element = the single element containing all three vertices
        const auto ia = store.incident_tets(store.vertex_index_of(tri.a));
        const auto ib = store.incident_tets(store.vertex_index_of(tri.b));
        const auto ic = store.incident_tets(store.vertex_index_of(tri.c));
        std::int32_t owner = -1;
        int matches = 0;
        std::size_t pa = 0, pb = 0, pc = 0;
        while (pa < ia.size() && pb < ib.size() && pc < ic.size()) {
            const std::int32_t va = ia[pa], vb = ib[pb], vc = ic[pc];
            if (va == vb && vb == vc) {
                owner = va;
                ++matches;
                ++pa, ++pb, ++pc;
            } else {
                const std::int32_t m = std::min(va, std::min(vb, vc));
                if (va == m) ++pa;
                if (vb == m) ++pb;
                if (vc == m) ++pc;
            }
        }
        if (matches != 1)
            throw ConnectivityError("surface triangle " + triple_str(tri.a, tri.b, tri.c) +
                                    " matches " + std::to_string(matches) +
                                    " elements, expected exactly 1");

        const auto& quad_v = store.tet_vertex_ids(owner);
        int missing_rank = -1;
        for (int r = 0; r < 4; ++r)
            if (quad_v[r] != tri.a && quad_v[r] != tri.b && quad_v[r] != tri.c)
                missing_rank = r;
        const int face = fo.face_for_missing_rank[missing_rank];
        const auto& order = fo.order[face];

        OrientedTriangle ot;
        ot.tri_id = tri.tri_id;
        ot.elem_id = store.tet_id_at(owner);
        for (int k = 0; k < 3; ++k) ot.v[k] = quad_v[order[k]];
        out.push_back(ot);
    }
    return out;
}

} // namespace tmq
