#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tmq/geometry.hpp"
#include "tmq/mesh_model.hpp"

namespace tmq {

struct LocateResult {
    ElemId elem_id = kNoElement; // containing element, or -1
    int steps = 0;               // face crossings performed
    ElemId candidate_elem = kNoElement; // seed of the successful walk; -1 for
                                        // brute-force hits and misses
};

struct LocatorConfig {
    Tolerance tolerance{};
    // Face crossings allowed per walk; <= 0 selects the size-scaled
    // default 10 * ceil(cbrt(#tets)) + 100.
    int max_steps = 0;
    // Nearest-hcode entries tried before giving up on the index.
    int candidate_fanout = 4;
    // Scan all elements once every candidate walk fails; guarantees that
    // -1 is returned only for genuinely uncontained points.
    bool fallback_enabled = true;
};

// Up to `fanout` elements whose stored hcodes are nearest to the query
// point's code (by absolute code difference), found by a binary search
// plus predecessor/successor walk on the sorted index.
// Throws NotFoundError on an empty mesh, StateError before assign_hcodes.
std::vector<ElemId> select_candidate(const MeshStore& store, const Vec3& p, int fanout);

// Face-graph walk from `start_elem`: test containment, otherwise step
// through the exit face toward p. Stops when the walk leaves the domain
// or exceeds the step budget; elem_id is -1 in both cases. The walk never
// re-enters the element it just left through the same shared face.
LocateResult traverse(const MeshStore& store, ElemId start_elem, const Vec3& p,
                      const LocatorConfig& cfg = {});

// The public point->element query: bounding-box pre-reject, then a walk
// from each hcode candidate, then (optionally) a brute-force scan.
// Returns elem_id -1 only if no element contains p (with fallback on).
// A point on a shared face may report either incident element.
LocateResult locate(const MeshStore& store, const Vec3& p, const LocatorConfig& cfg = {});

struct BatchResult {
    std::vector<LocateResult> results; // position-stable: results[i] answers points[i]
    std::size_t distinct_elements = 0; // over non-negative elem_ids
};

// Element-wise locate across worker threads. Results do not depend on the
// worker count; `threads` <= 0 uses all hardware threads.
BatchResult locate_batch(const MeshStore& store, std::span<const Vec3> points,
                         const LocatorConfig& cfg = {}, int threads = 0);

int effective_max_steps(const MeshStore& store, const LocatorConfig& cfg);

} // namespace tmq
