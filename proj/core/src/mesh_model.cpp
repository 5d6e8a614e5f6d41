#include "tmq/mesh_model.hpp"

#include <algorithm>
#include <map>

#include "tmq/errors.hpp"

namespace tmq {

TetQuad to_quad(std::span<const TetVertexRow> rows) {
    if (rows.size() != 4)
        throw MalformedElementError("element needs exactly 4 rows, got " +
                                    std::to_string(rows.size()));
    TetQuad q;
    q.elem_id = rows[0].elem_id;
    bool seen[4] = {false, false, false, false};
    for (const TetVertexRow& r : rows) {
        if (r.elem_id != q.elem_id)
            throw MalformedElementError("rows mix element ids " + std::to_string(q.elem_id) +
                                        " and " + std::to_string(r.elem_id));
        if (r.rank < 0 || r.rank > 3)
            throw MalformedElementError("rank " + std::to_string(r.rank) +
                                        " outside 0..3 in element " + std::to_string(q.elem_id));
        if (seen[r.rank])
            throw MalformedElementError("duplicate rank " + std::to_string(r.rank) +
                                        " in element " + std::to_string(q.elem_id));
        seen[r.rank] = true;
        q.v[r.rank] = r.vertex_id;
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (q.v[a] == q.v[b])
                throw MalformedElementError("duplicate vertex id " + std::to_string(q.v[a]) +
                                            " in element " + std::to_string(q.elem_id));
    return q;
}

std::array<TetVertexRow, 4> to_normalized(const TetQuad& quad) {
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (quad.v[a] == quad.v[b])
                throw MalformedElementError("duplicate vertex id " + std::to_string(quad.v[a]) +
                                            " in element " + std::to_string(quad.elem_id));
    std::array<TetVertexRow, 4> rows;
    for (int r = 0; r < 4; ++r) rows[r] = {quad.elem_id, r, quad.v[r]};
    return rows;
}

void MeshStore::require_mutable(const char* op) const {
    if (frozen_) throw StateError(std::string(op) + " is not allowed on a frozen store");
}

void MeshStore::add_vertex(const Vertex& v) {
    require_mutable("add_vertex");
    if (!is_finite(v.pos))
        throw InvalidArgumentError("vertex " + std::to_string(v.id) +
                                   " has non-finite coordinates");
    if (!vertex_index_.emplace(v.id, static_cast<std::int32_t>(vertex_ids_.size())).second)
        throw InvalidArgumentError("duplicate vertex id " + std::to_string(v.id));
    if (vertex_ids_.empty())
        bounds_ = Box3{v.pos, v.pos};
    else
        bounds_.expand(v.pos);
    vertex_ids_.push_back(v.id);
    vertex_pos_.push_back(v.pos);
}

void MeshStore::add_vertices(std::span<const Vertex> vs) {
    for (const Vertex& v : vs) add_vertex(v);
}

void MeshStore::add_tet(const TetQuad& q) {
    require_mutable("add_tet");
    if (q.elem_id == kNoElement)
        throw InvalidArgumentError("element id -1 is reserved as the boundary sentinel");
    if (!tet_index_.emplace(q.elem_id, static_cast<std::int32_t>(tet_ids_.size())).second)
        throw InvalidArgumentError("duplicate element id " + std::to_string(q.elem_id));
    tet_ids_.push_back(q.elem_id);
    tet_verts_.push_back(q.v);
}

void MeshStore::add_tets(std::span<const TetQuad> qs) {
    for (const TetQuad& q : qs) add_tet(q);
}

void MeshStore::resolve_vertex_refs() {
    if (refs_resolved_) return;
    tet_vert_idx_.resize(tet_count());
    for (std::size_t t = 0; t < tet_count(); ++t) {
        for (int r = 0; r < 4; ++r) {
            const auto it = vertex_index_.find(tet_verts_[t][r]);
            if (it == vertex_index_.end())
                throw NotFoundError("element " + std::to_string(tet_ids_[t]) +
                                    " references missing vertex " +
                                    std::to_string(tet_verts_[t][r]));
            tet_vert_idx_[t][r] = it->second;
        }
    }
    refs_resolved_ = true;
}

void MeshStore::compute_centroids() {
    if (centroids_done_) return;
    resolve_vertex_refs();
    centroids_.resize(tet_count());
    for (std::size_t t = 0; t < tet_count(); ++t) {
        const auto& vi = tet_vert_idx_[t];
        centroids_[t] = (vertex_pos_[vi[0]] + vertex_pos_[vi[1]] + vertex_pos_[vi[2]] +
                         vertex_pos_[vi[3]]) *
                        0.25;
    }
    centroids_done_ = true;
}

void MeshStore::build_indices() {
    if (indices_done_) return;
    resolve_vertex_refs();

    // degeneracy gate: no zero-volume element enters the query structures
    for (std::size_t t = 0; t < tet_count(); ++t) {
        const double vol = signed_volume(corners_at(static_cast<std::int32_t>(t)));
        if (std::abs(vol) <= kDegenerateVolume)
            throw DegenerateTetError("element " + std::to_string(tet_ids_[t]) +
                                     " has (near-)zero volume");
    }

    // vertex -> element CSR, lists naturally sorted by tet index
    incidence_offsets_.assign(vertex_count() + 1, 0);
    for (const auto& vi : tet_vert_idx_)
        for (int r = 0; r < 4; ++r) ++incidence_offsets_[vi[r] + 1];
    for (std::size_t v = 0; v < vertex_count(); ++v)
        incidence_offsets_[v + 1] += incidence_offsets_[v];
    incidence_tets_.resize(4 * tet_count());
    std::vector<std::int32_t> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
    for (std::size_t t = 0; t < tet_count(); ++t)
        for (int r = 0; r < 4; ++r)
            incidence_tets_[cursor[tet_vert_idx_[t][r]]++] = static_cast<std::int32_t>(t);

    neighbor_cache_ = std::make_unique<NeighborCache>(tet_count());
    indices_done_ = true;
}

void MeshStore::freeze() {
    if (frozen_) return;
    compute_centroids();
    build_indices();
    frozen_ = true;
}

const Vec3& MeshStore::vertex_position(VertexId id) const {
    return vertex_pos_[vertex_index_of(id)];
}

TetQuad MeshStore::tet(ElemId id) const {
    const std::int32_t t = tet_index_of(id);
    return TetQuad{id, tet_verts_[t]};
}

std::array<TetVertexRow, 4> MeshStore::tet_rows(ElemId id) const {
    const std::int32_t t = tet_index_of(id);
    std::array<TetVertexRow, 4> rows;
    for (int r = 0; r < 4; ++r) rows[r] = {id, r, tet_verts_[t][r]};
    return rows;
}

TetCorners MeshStore::corners(ElemId id) const { return corners_at(tet_index_of(id)); }

const Vec3& MeshStore::centroid_of(ElemId id) const {
    if (!centroids_done_) throw StateError("centroids have not been computed");
    return centroids_[tet_index_of(id)];
}

std::int32_t MeshStore::vertex_index_of(VertexId id) const {
    const auto it = vertex_index_.find(id);
    if (it == vertex_index_.end())
        throw NotFoundError("unknown vertex id " + std::to_string(id));
    return it->second;
}

std::int32_t MeshStore::tet_index_of(ElemId id) const {
    const auto it = tet_index_.find(id);
    if (it == tet_index_.end()) throw NotFoundError("unknown element id " + std::to_string(id));
    return it->second;
}

TetCorners MeshStore::corners_at(std::int32_t ti) const {
    const auto& vi = tet_vert_idx_[ti];
    return TetCorners{
        {vertex_pos_[vi[0]], vertex_pos_[vi[1]], vertex_pos_[vi[2]], vertex_pos_[vi[3]]}};
}

const Box3& MeshStore::bounds() const {
    if (vertex_ids_.empty()) throw StateError("bounds of an empty mesh");
    return bounds_;
}

std::span<const std::int32_t> MeshStore::incident_tets(std::int32_t vertex_index) const {
    if (!indices_done_) throw StateError("vertex incidence index has not been built");
    const std::int32_t lo = incidence_offsets_[vertex_index];
    const std::int32_t hi = incidence_offsets_[vertex_index + 1];
    return {incidence_tets_.data() + lo, static_cast<std::size_t>(hi - lo)};
}

NeighborCache& MeshStore::neighbor_cache() const {
    if (!indices_done_) throw StateError("neighbor cache has not been built");
    return *neighbor_cache_;
}

std::uint64_t MeshStore::hcode_of(ElemId id) const {
    if (!has_hcodes()) throw StateError("hcodes have not been assigned");
    return hcodes_[tet_index_of(id)];
}

const Quantizer& MeshStore::quantizer() const {
    if (!quantizer_set_) throw StateError("hcodes have not been assigned");
    return quantizer_;
}

std::span<const HcodeEntry> MeshStore::hcode_index() const {
    if (!has_hcodes()) throw StateError("hcodes have not been assigned");
    return hcode_index_;
}

void MeshStore::install_hcodes(std::vector<std::uint64_t> codes, const Quantizer& q) {
    hcodes_ = std::move(codes);
    quantizer_ = q;
    quantizer_set_ = true;
    hcode_index_.resize(hcodes_.size());
    for (std::size_t t = 0; t < hcodes_.size(); ++t)
        hcode_index_[t] = {hcodes_[t], static_cast<std::int32_t>(t)};
    std::sort(hcode_index_.begin(), hcode_index_.end(), [](const HcodeEntry& a, const HcodeEntry& b) {
        return a.code != b.code ? a.code < b.code : a.tet_index < b.tet_index;
    });
}

ValidationReport validate_mesh(const MeshStore& store) {
    ValidationReport report;

    // dangling references and degenerate quads
    for (std::size_t t = 0; t < store.tet_count(); ++t) {
        const ElemId eid = store.tet_id_at(static_cast<std::int32_t>(t));
        const auto& v = store.tet_vertex_ids(static_cast<std::int32_t>(t));
        for (int r = 0; r < 4; ++r)
            if (!store.has_vertex(v[r]))
                report.findings.push_back(
                    {ValidationFinding::Kind::DanglingVertexRef, eid,
                     "element " + std::to_string(eid) + " references missing vertex " +
                         std::to_string(v[r])});
        bool degenerate = false;
        for (int a = 0; a < 4 && !degenerate; ++a)
            for (int b = a + 1; b < 4 && !degenerate; ++b)
                if (v[a] == v[b]) degenerate = true;
        if (degenerate)
            report.findings.push_back({ValidationFinding::Kind::DegenerateQuad, eid,
                                       "element " + std::to_string(eid) +
                                           " has duplicate vertex ids"});
    }

    // face multiplicity: every normalized face triple must occur once
    // (surface) or twice (interior)
    std::map<std::array<VertexId, 3>, std::vector<ElemId>> faces;
    for (std::size_t t = 0; t < store.tet_count(); ++t) {
        const ElemId eid = store.tet_id_at(static_cast<std::int32_t>(t));
        const auto& v = store.tet_vertex_ids(static_cast<std::int32_t>(t));
        for (int opp = 0; opp < 4; ++opp) {
            std::array<VertexId, 3> tri;
            int n = 0;
            for (int r = 0; r < 4; ++r)
                if (r != opp) tri[n++] = v[r];
            std::sort(tri.begin(), tri.end());
            faces[tri].push_back(eid);
        }
    }
    for (const auto& [tri, elems] : faces) {
        if (elems.size() > 2)
            report.findings.push_back(
                {ValidationFinding::Kind::FaceMultiplicity, elems.front(),
                 "face (" + std::to_string(tri[0]) + "," + std::to_string(tri[1]) + "," +
                     std::to_string(tri[2]) + ") bounded by " + std::to_string(elems.size()) +
                     " elements"});
    }

    // duplicate elements: two tets on the same vertex set share all four faces
    std::map<std::array<VertexId, 4>, std::vector<ElemId>> vertex_sets;
    for (std::size_t t = 0; t < store.tet_count(); ++t) {
        std::array<VertexId, 4> key = store.tet_vertex_ids(static_cast<std::int32_t>(t));
        std::sort(key.begin(), key.end());
        vertex_sets[key].push_back(store.tet_id_at(static_cast<std::int32_t>(t)));
    }
    for (const auto& [key, elems] : vertex_sets) {
        if (elems.size() > 1) {
            std::string ids;
            for (const ElemId e : elems) ids += (ids.empty() ? "" : ",") + std::to_string(e);
            report.findings.push_back({ValidationFinding::Kind::FaceMultiplicity, elems.front(),
                                       "elements {" + ids + "} share all four vertices"});
        }
    }

    return report;
}

} // namespace tmq
