// Acceptance suite: one checked criterion per function, one PASS/FAIL line
// each. Run with no arguments for the whole gate or with an index (1..9)
// for a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tmq/adjacency.hpp"
#include "tmq/box_mesh.hpp"
#include "tmq/hilbert.hpp"
#include "tmq/interpolate.hpp"
#include "tmq/locate.hpp"
#include "tmq/partition.hpp"
#include "tmq/sampling.hpp"
#include "tmq/surface.hpp"
#include "test_support.hpp"

using namespace tmq;

namespace {

struct Criterion {
    int index;
    std::string name;
    std::function<bool(std::string&)> run;
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MeshStore indexed_box(int n) {
    MeshStore store = generate_box(n, n, n);
    assign_hcodes(store, Quantizer(store.bounds()));
    return store;
}

// 1. locate soundness and completeness against the exhaustive scan
bool dls_soundness(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const MeshStore store = indexed_box(8);
    if (store.tet_count() != 3072) {
        detail = "unexpected tet count";
        return false;
    }
    const Tolerance tol{1e-15};
    LocatorConfig cfg;
    cfg.tolerance = tol;

    const auto points = box_cloud(store.bounds(), 10000, 424242);
    std::size_t disagreements = 0;
    for (const Vec3& p : points) {
        const LocateResult r = locate(store, p, cfg);
        if (r.elem_id >= 0) {
            if (!point_in_tet(store.corners(r.elem_id), p, tol)) ++disagreements;
        } else {
            if (test::brute_force_locate(store, p, tol) != kNoElement) ++disagreements;
        }
    }
    detail = "10000 points, " + std::to_string(disagreements) + " disagreements, " +
             std::to_string(seconds_since(t0)) + " s";
    return disagreements == 0;
}

// 2. exhaustive curve properties at orders 1..4, random round trips at 21
bool hilbert_correctness(std::string& detail) {
    std::size_t violations = 0;
    for (int m = 1; m <= 4; ++m) {
        const std::uint32_t side = 1u << m;
        const std::uint64_t total = 1ull << (3 * m);
        std::vector<LatticePoint> by_code(total);
        std::vector<int> seen(total, 0);
        for (std::uint32_t i = 0; i < side; ++i)
            for (std::uint32_t j = 0; j < side; ++j)
                for (std::uint32_t k = 0; k < side; ++k) {
                    const LatticePoint p{i, j, k};
                    const HilbertCode c = h_encode(p, m);
                    if (c >= total || h_decode(c, m) != p) {
                        ++violations;
                        continue;
                    }
                    ++seen[c];
                    by_code[c] = p;
                }
        for (std::uint64_t c = 0; c < total; ++c)
            if (seen[c] != 1) ++violations;
        for (std::uint64_t c = 0; c + 1 < total; ++c) {
            const long d = std::labs(static_cast<long>(by_code[c].i) -
                                     static_cast<long>(by_code[c + 1].i)) +
                           std::labs(static_cast<long>(by_code[c].j) -
                                     static_cast<long>(by_code[c + 1].j)) +
                           std::labs(static_cast<long>(by_code[c].k) -
                                     static_cast<long>(by_code[c + 1].k));
            if (d != 1) ++violations;
        }
    }

    std::mt19937_64 rng(1906);
    const std::uint32_t side = 1u << kMaxBitsPerAxis;
    for (int n = 0; n < 10000; ++n) {
        const LatticePoint p{static_cast<std::uint32_t>(rng() % side),
                             static_cast<std::uint32_t>(rng() % side),
                             static_cast<std::uint32_t>(rng() % side)};
        if (h_decode(h_encode(p)) != p) ++violations;
    }
    detail = std::to_string(violations) + " violations";
    return violations == 0;
}

// 3. 12 n^2 surface triangles and the 1-or-2 multiplicity law
bool surface_counts(std::string& detail) {
    std::size_t violations = 0;
    for (const int n : {1, 2, 3, 4}) {
        const MeshStore store = generate_box(n, n, n);
        const auto tris = extract_unoriented(store);
        if (tris.size() != 12ull * n * n) ++violations;

        const auto tally = test::face_tally(store);
        std::size_t triples = 0;
        for (const auto& [tri, elems] : tally) {
            triples += elems.size();
            if (elems.size() != 1 && elems.size() != 2) ++violations;
        }
        if (triples != 4ull * store.tet_count()) ++violations;
    }
    detail = std::to_string(violations) + " violations over n in {1,2,3,4}";
    return violations == 0;
}

// 4. coherent orientation: directed edges pair up; worked face example
bool orientation_coherence(std::string& detail) {
    std::size_t violations = 0;
    for (const int n : {1, 2, 3, 4}) {
        const MeshStore store = generate_box(n, n, n);
        const auto oriented = orient(store, extract_unoriented(store));
        std::map<std::pair<VertexId, VertexId>, int> directed;
        for (const auto& tri : oriented)
            for (int k = 0; k < 3; ++k) ++directed[{tri.v[k], tri.v[(k + 1) % 3]}];
        for (const auto& [edge, count] : directed) {
            if (count != 1) ++violations;
            const auto rev = directed.find({edge.second, edge.first});
            if (rev == directed.end() || rev->second != 1) ++violations;
        }
    }

    const auto face = femlib_face_vertices(TetQuad{0, {12, 4711, 841, 3}}, 2);
    const bool example_ok = face == std::array<VertexId, 3>{841, 3, 12};
    if (!example_ok) ++violations;
    detail = std::to_string(violations) + " violations; face rank 2 of (12,4711,841,3) = (" +
             std::to_string(face[0]) + "," + std::to_string(face[1]) + "," +
             std::to_string(face[2]) + ")";
    return violations == 0;
}

// 5. affine reproduction at 1e-12 relative, partition of unity, exact
//    nodal values
bool interpolation(std::string& detail) {
    const MeshStore store = indexed_box(4);
    const auto affine = [](const Vec3& p) { return 2.0 * p.x - 3.0 * p.y + p.z + 5.0; };
    const NodalField field = NodalField::from_function(store, "affine", affine);

    std::size_t violations = 0;
    const auto points = box_cloud(store.bounds(), 1000, 777);
    for (const Vec3& p : points) {
        const LocateResult r = locate(store, p);
        if (r.elem_id < 0) {
            ++violations;
            continue;
        }
        const double got = interpolate_in_element(store, field, r.elem_id, p);
        const double expected = affine(p);
        if (std::abs(got - expected) > 1e-12 * std::max(1.0, std::abs(expected))) ++violations;

        const ShapeValues s = shape_values(store.corners(r.elem_id), p);
        if (std::abs(s.s[0] + s.s[1] + s.s[2] + s.s[3] - 1.0) > 1e-12) ++violations;
    }

    std::size_t nodal_misses = 0;
    for (std::size_t v = 0; v < store.vertex_count(); ++v) {
        const auto vi = static_cast<std::int32_t>(v);
        const double got = interpolate(store, field, store.vertex_position_at(vi));
        if (got != field.value_at_index(vi)) ++nodal_misses;
    }
    detail = std::to_string(violations) + " interior violations, " +
             std::to_string(nodal_misses) + " inexact nodal values of " +
             std::to_string(store.vertex_count());
    return violations == 0 && nodal_misses == 0;
}

// 6. NTILE balance and hcode monotonicity for n = 1..64
bool partitioning(std::string& detail) {
    const MeshStore store = indexed_box(4);
    if (store.tet_count() != 384) {
        detail = "unexpected tet count";
        return false;
    }
    std::size_t violations = 0;
    for (std::int32_t n = 1; n <= 64; ++n) {
        const PartitionAssignment pa = partition(store, n);
        const auto sizes = pa.partition_sizes();
        std::size_t lo = store.tet_count(), hi = 0;
        for (const std::size_t s : sizes) {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (hi - lo > 1) ++violations;

        const auto& entries = pa.entries();
        for (std::size_t i = 1; i < entries.size(); ++i) {
            const auto ka =
                std::make_pair(store.hcode_of(entries[i - 1].elem_id), entries[i - 1].elem_id);
            const auto kb =
                std::make_pair(store.hcode_of(entries[i].elem_id), entries[i].elem_id);
            if (!(ka < kb)) ++violations;
            if (entries[i - 1].partition_id > entries[i].partition_id) ++violations;
        }
    }
    detail = std::to_string(violations) + " violations over n in 1..64";
    return violations == 0;
}

// 7. pivot/unpivot round trip across a whole generated mesh
bool pivot_roundtrip(std::string& detail) {
    const MeshStore store = generate_box(4, 4, 4);
    std::size_t violations = 0;
    for (std::size_t t = 0; t < store.tet_count(); ++t) {
        const ElemId id = store.tet_id_at(static_cast<std::int32_t>(t));
        const TetQuad quad = store.tet(id);
        const auto rows = to_normalized(quad);
        const TetQuad back = to_quad(rows);
        if (back.elem_id != quad.elem_id || back.v != quad.v) ++violations;

        const auto stored_rows = store.tet_rows(id);
        for (int r = 0; r < 4; ++r)
            if (stored_rows[r].rank != rows[r].rank ||
                stored_rows[r].vertex_id != rows[r].vertex_id)
                ++violations;
    }
    detail = std::to_string(violations) + " violations over " +
             std::to_string(store.tet_count()) + " elements";
    return violations == 0;
}

// 8. throughput floors: locate_batch >= 2857 points/s single-threaded on a
//    tight cloud; h_encode >= 45455 codes/s
bool throughput_floor(std::string& detail) {
    const MeshStore store = indexed_box(16);
    const ElemId seed_elem = locate(store, {0.52, 0.47, 0.55}).elem_id;
    const Vec3 center = store.centroid_of(seed_elem);
    const double radius = 1e-5 * store.bounds().diagonal();
    const auto points = sphere_cloud(center, radius, 20000, 2857);

    auto t0 = std::chrono::steady_clock::now();
    const BatchResult batch = locate_batch(store, points, {}, /*threads=*/1);
    const double locate_s = seconds_since(t0);
    const double locate_rate = static_cast<double>(points.size()) / locate_s;

    std::mt19937_64 rng(22);
    std::vector<LatticePoint> lattice(2000000);
    const std::uint32_t side = 1u << kMaxBitsPerAxis;
    for (auto& p : lattice)
        p = {static_cast<std::uint32_t>(rng() % side), static_cast<std::uint32_t>(rng() % side),
             static_cast<std::uint32_t>(rng() % side)};
    t0 = std::chrono::steady_clock::now();
    std::uint64_t sink = 0;
    for (const auto& p : lattice) sink ^= h_encode(p);
    const double encode_s = seconds_since(t0);
    const double encode_rate = static_cast<double>(lattice.size()) / encode_s;

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "locate %.0f points/s (floor 2857, distinct %zu), h_encode %.0f codes/s "
                  "(floor 45455, sink %llu)",
                  locate_rate, batch.distinct_elements, encode_rate,
                  static_cast<unsigned long long>(sink & 1));
    detail = buf;
    return locate_rate >= 2857.0 && encode_rate >= 45455.0;
}

// 9. trend: tight clouds locate at least as fast as mesh-spanning clouds
//    (medians of 3 runs)
bool throughput_trend(std::string& detail) {
    const MeshStore store = indexed_box(16);
    const ElemId seed_elem = locate(store, {0.52, 0.47, 0.55}).elem_id;
    const Vec3 tight_center = store.centroid_of(seed_elem);
    const double tight_r = 1e-5 * store.bounds().diagonal();
    const Vec3 span_center = store.bounds().center();
    const Vec3 ext = store.bounds().extent();
    const double span_r = 0.5 * std::min(ext.x, std::min(ext.y, ext.z));

    const auto tight_points = sphere_cloud(tight_center, tight_r, 20000, 31);
    const auto span_points = sphere_cloud(span_center, span_r, 20000, 37);

    const auto rate = [&](const std::vector<Vec3>& pts) {
        const auto t0 = std::chrono::steady_clock::now();
        (void)locate_batch(store, pts, {}, 1);
        return static_cast<double>(pts.size()) / seconds_since(t0);
    };
    std::vector<double> tight_rates, span_rates;
    for (int run = 0; run < 3; ++run) {
        tight_rates.push_back(rate(tight_points));
        span_rates.push_back(rate(span_points));
    }
    std::sort(tight_rates.begin(), tight_rates.end());
    std::sort(span_rates.begin(), span_rates.end());
    const double tight_median = tight_rates[1];
    const double span_median = span_rates[1];

    char buf[160];
    std::snprintf(buf, sizeof buf, "tight %.0f points/s, spanning %.0f points/s",
                  tight_median, span_median);
    detail = buf;
    return tight_median >= span_median;
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "dls-soundness-completeness", dls_soundness},
        {2, "hilbert-correctness", hilbert_correctness},
        {3, "surface-counts", surface_counts},
        {4, "orientation-coherence", orientation_coherence},
        {5, "interpolation", interpolation},
        {6, "partitioning", partitioning},
        {7, "pivot-unpivot-roundtrip", pivot_roundtrip},
        {8, "throughput-floor", throughput_floor},
        {9, "throughput-trend", throughput_trend},
    };

    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "usage: %s [1..%zu]\n", argv[0], criteria.size());
            return 2;
        }
    }

    bool all_ok = true;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.index != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %d %s: %s\n", ok ? "PASS" : "FAIL", c.index,
                    c.name.c_str(), detail.c_str());
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
