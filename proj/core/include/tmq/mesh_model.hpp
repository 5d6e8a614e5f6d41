#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tmq/geometry.hpp"
#include "tmq/hilbert.hpp"
#include "tmq/neighbor_cache.hpp"
#include "tmq/vec3.hpp"

namespace tmq {

using VertexId = std::int32_t;
using ElemId = std::int32_t;

// Neighbor/locate result value for "no element".
inline constexpr ElemId kNoElement = -1;

struct Vertex {
    VertexId id = 0;
    Vec3 pos;
};

// One row of the normalized tetrahedron-vertex relation.
struct TetVertexRow {
    ElemId elem_id = 0;
    int rank = 0; // 0..3
    VertexId vertex_id = 0;
};

// The denormalized quadruple view of one element: v[r] is the vertex at
// rank r. The four ids must be pairwise distinct.
struct TetQuad {
    ElemId elem_id = 0;
    std::array<VertexId, 4> v{};
};

// Pivot of four normalized rows into the quadruple view.
// Throws MalformedElementError on missing/duplicate ranks, mixed element
// ids, or a wrong row count.
TetQuad to_quad(std::span<const TetVertexRow> rows);

// Unpivot of the quadruple into normalized rows; exact inverse of to_quad.
// Throws MalformedElementError if the four vertex ids are not distinct.
std::array<TetVertexRow, 4> to_normalized(const TetQuad& quad);

struct ValidationFinding {
    enum class Kind {
        DanglingVertexRef, // element references a vertex id that does not exist
        DegenerateQuad,    // element has duplicate vertex ids
        FaceMultiplicity,  // face shared by >2 elements, or duplicate elements
    };
    Kind kind;
    ElemId elem_id = kNoElement;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    bool clean() const { return findings.empty(); }
};

struct HcodeEntry {
    std::uint64_t code = 0;
    std::int32_t tet_index = 0;
};

// Tetrahedral mesh store.
//
// The normalized tet-vertex relation is the stored representation; the
// quadruple form is a view materialized on demand. Ids are sparse: both
// vertex and element ids map through hash indices, so they need not be
// dense or start anywhere particular.
//
// Lifecycle: add vertices and tets (single writer), then derive state in
// stages (compute_centroids, build_indices, assign_hcodes) or simply call
// freeze(), which runs any stage still missing. A frozen store is
// immutable and safe for unlimited concurrent readers; the lazy
// face-neighbor cache is the only mutable-after-freeze state and is
// filled idempotently through atomics.
class MeshStore {
public:
    MeshStore() = default;
    MeshStore(MeshStore&&) noexcept = default;
    MeshStore& operator=(MeshStore&&) noexcept = default;
    MeshStore(const MeshStore&) = delete;
    MeshStore& operator=(const MeshStore&) = delete;

    // --- construction ---

    // Throws InvalidArgumentError on a duplicate id or non-finite
    // coordinates, StateError after freeze.
    void add_vertex(const Vertex& v);
    void add_vertices(std::span<const Vertex> vs);

    // Stores the element's normalized rows. Throws InvalidArgumentError on
    // a duplicate element id, StateError after freeze. Degenerate quads
    // (duplicate vertex ids) are accepted here and reported by
    // validate_mesh.
    void add_tet(const TetQuad& q);
    void add_tets(std::span<const TetQuad> qs);

    // Resolves vertex references and computes per-element centroids.
    // Throws NotFoundError on a dangling vertex reference.
    void compute_centroids();

    // Builds the vertex->element incidence index and the neighbor cache,
    // and rejects geometrically degenerate elements
    // (|signed_volume| <= kDegenerateVolume) with DegenerateTetError.
    void build_indices();

    // Runs any missing derivation stage and marks the store immutable.
    void freeze();

    bool frozen() const noexcept { return frozen_; }
    bool centroids_computed() const noexcept { return centroids_done_; }
    bool indices_built() const noexcept { return indices_done_; }

    // --- sizes ---
    std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
    std::size_t tet_count() const noexcept { return tet_ids_.size(); }

    // --- id-based access ---
    bool has_vertex(VertexId id) const noexcept { return vertex_index_.count(id) != 0; }
    bool has_tet(ElemId id) const noexcept { return tet_index_.count(id) != 0; }
    const Vec3& vertex_position(VertexId id) const;
    TetQuad tet(ElemId id) const;
    std::array<TetVertexRow, 4> tet_rows(ElemId id) const; // normalized view
    TetCorners corners(ElemId id) const;
    const Vec3& centroid_of(ElemId id) const;

    // --- index-based access (query-engine fast path) ---
    std::int32_t vertex_index_of(VertexId id) const; // throws NotFoundError
    std::int32_t tet_index_of(ElemId id) const;      // throws NotFoundError
    VertexId vertex_id_at(std::int32_t vi) const { return vertex_ids_[vi]; }
    ElemId tet_id_at(std::int32_t ti) const { return tet_ids_[ti]; }
    const Vec3& vertex_position_at(std::int32_t vi) const { return vertex_pos_[vi]; }
    const std::array<VertexId, 4>& tet_vertex_ids(std::int32_t ti) const {
        return tet_verts_[ti];
    }
    // Valid once centroids are computed.
    const std::array<std::int32_t, 4>& tet_vertex_indices(std::int32_t ti) const {
        return tet_vert_idx_[ti];
    }
    TetCorners corners_at(std::int32_t ti) const;
    const Vec3& centroid_at(std::int32_t ti) const { return centroids_[ti]; }

    // Bounding box over all vertices. Throws StateError on an empty store.
    const Box3& bounds() const;

    // Sorted internal indices of the elements containing a vertex.
    // Valid once indices are built.
    std::span<const std::int32_t> incident_tets(std::int32_t vertex_index) const;

    // Lazy face-neighbor memo; see adjacency.hpp for the query that fills it.
    NeighborCache& neighbor_cache() const;

    // --- Hilbert key state (installed by assign_hcodes) ---
    bool has_hcodes() const noexcept { return !hcodes_.empty() || (tet_count() == 0 && quantizer_set_); }
    std::uint64_t hcode_at(std::int32_t ti) const { return hcodes_[ti]; }
    std::uint64_t hcode_of(ElemId id) const;
    const Quantizer& quantizer() const; // throws StateError before assign_hcodes
    std::span<const HcodeEntry> hcode_index() const; // sorted by (code, tet_index)

private:
    friend HcodeStats assign_hcodes(MeshStore& store, const Quantizer& q);
    friend MeshStore load_archive(const std::string& path);
    void install_hcodes(std::vector<std::uint64_t> codes, const Quantizer& q);
    void require_mutable(const char* op) const;
    void resolve_vertex_refs();

    std::vector<VertexId> vertex_ids_;
    std::vector<Vec3> vertex_pos_;
    std::unordered_map<VertexId, std::int32_t> vertex_index_;

    std::vector<ElemId> tet_ids_;
    std::vector<std::array<VertexId, 4>> tet_verts_;
    std::unordered_map<ElemId, std::int32_t> tet_index_;

    std::vector<std::array<std::int32_t, 4>> tet_vert_idx_;
    std::vector<Vec3> centroids_;
    Box3 bounds_;

    std::vector<std::int32_t> incidence_offsets_;
    std::vector<std::int32_t> incidence_tets_;
    mutable std::unique_ptr<NeighborCache> neighbor_cache_;

    std::vector<std::uint64_t> hcodes_;
    std::vector<HcodeEntry> hcode_index_;
    Quantizer quantizer_;
    bool quantizer_set_ = false;

    bool refs_resolved_ = false;
    bool centroids_done_ = false;
    bool indices_done_ = false;
    bool frozen_ = false;
};

// Report-based integrity check; never throws on mesh defects. Checks
// dangling vertex references, degenerate quads, faces bounded by more
// than two elements, and element pairs sharing all four vertices.
// Id uniqueness is enforced at insertion and needs no re-check here.
ValidationReport validate_mesh(const MeshStore& store);

} // namespace tmq
