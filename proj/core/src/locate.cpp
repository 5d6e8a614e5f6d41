#include "tmq/locate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "tmq/adjacency.hpp"
#include "tmq/errors.hpp"
#include "tmq/hilbert.hpp"

namespace tmq {

namespace {

void check_config(const LocatorConfig& cfg) {
    if (!(cfg.tolerance.epsilon >= 0.0))
        throw InvalidArgumentError("tolerance epsilon must be >= 0");
    if (cfg.candidate_fanout < 1)
        throw InvalidArgumentError("candidate_fanout must be >= 1");
}

std::uint64_t code_distance(std::uint64_t a, std::uint64_t b) { return a < b ? b - a : a - b; }

std::vector<std::int32_t> candidate_indices(const MeshStore& store, const Vec3& p, int fanout) {
    const auto index = store.hcode_index();
    const std::uint64_t code = h_encode(store.quantizer().quantize(p), store.quantizer().bits());

    auto it = std::lower_bound(index.begin(), index.end(), code,
                               [](const HcodeEntry& e, std::uint64_t c) { return e.code < c; });
    std::ptrdiff_t succ = it - index.begin();
    std::ptrdiff_t pred = succ - 1;

    std::vector<std::int32_t> out;
    out.reserve(static_cast<std::size_t>(fanout));
    while (static_cast<int>(out.size()) < fanout &&
           (pred >= 0 || succ < static_cast<std::ptrdiff_t>(index.size()))) {
        const bool has_pred = pred >= 0;
        const bool has_succ = succ < static_cast<std::ptrdiff_t>(index.size());
        bool take_pred;
        if (has_pred && has_succ) {
            // ties go to the predecessor (lower code)
            take_pred = code_distance(index[pred].code, code) <=
                        code_distance(index[succ].code, code);
        } else {
            take_pred = has_pred;
        }
        out.push_back(take_pred ? index[pred--].tet_index : index[succ++].tet_index);
    }
    return out;
}

struct Walk {
    std::int32_t elem = -1; // containing tet index, or -1
    int steps = 0;
};

Walk walk_from(const MeshStore& store, std::int32_t start, const Vec3& p, const Tolerance& tol,
               int max_steps) {
    std::int32_t current = start;
    std::int32_t prev = -1;
    int steps = 0;
    for (;;) {
        const TetCorners tc = store.corners_at(current);
        if (point_in_tet(tc, p, tol)) return {current, steps};

        // first face in rank order whose cone holds p, skipping the face
        // we just came through (anti-bounce)
        std::int32_t next = -1;
        bool any_cone = false;
        for (int r = 0; r < 4; ++r) {
            if (!face_cone_contains(tc, r, p, tol)) continue;
            any_cone = true;
            const std::int32_t n = face_neighbor_index(store, current, r);
            if (n == prev && prev != -1) continue;
            next = n;
            break;
        }
        if (!any_cone)
            throw TraversalStuckError("no exit face from element " +
                                      std::to_string(store.tet_id_at(current)));
        if (next == -1) return {-1, steps}; // left the domain, or only a bounce-back remained
        prev = current;
        current = next;
        if (++steps > max_steps) return {-1, steps};
    }
}

} // namespace

int effective_max_steps(const MeshStore& store, const LocatorConfig& cfg) {
    if (cfg.max_steps > 0) return cfg.max_steps;
    const double n = static_cast<double>(store.tet_count());
    return 10 * static_cast<int>(std::ceil(std::cbrt(std::max(n, 1.0)))) + 100;
}

std::vector<ElemId> select_candidate(const MeshStore& store, const Vec3& p, int fanout) {
    if (fanout < 1) throw InvalidArgumentError("fanout must be >= 1");
    if (store.tet_count() == 0) throw NotFoundError("candidate selection on an empty mesh");
    std::vector<ElemId> out;
    for (const std::int32_t t : candidate_indices(store, p, fanout))
        out.push_back(store.tet_id_at(t));
    return out;
}

LocateResult traverse(const MeshStore& store, ElemId start_elem, const Vec3& p,
                      const LocatorConfig& cfg) {
    check_config(cfg);
    const std::int32_t start = store.tet_index_of(start_elem);
    const Walk w = walk_from(store, start, p, cfg.tolerance, effective_max_steps(store, cfg));
    LocateResult r;
    r.steps = w.steps;
    r.candidate_elem = start_elem;
    r.elem_id = w.elem >= 0 ? store.tet_id_at(w.elem) : kNoElement;
    return r;
}

LocateResult locate(const MeshStore& store, const Vec3& p, const LocatorConfig& cfg) {
    check_config(cfg);
    if (!store.frozen()) throw StateError("locate requires a frozen store");
    if (store.tet_count() == 0) return {};

    LocateResult result;
    if (!store.bounds().contains(p, cfg.tolerance.epsilon)) return result;

    const int max_steps = effective_max_steps(store, cfg);
    for (const std::int32_t c : candidate_indices(store, p, cfg.candidate_fanout)) {
        const Walk w = walk_from(store, c, p, cfg.tolerance, max_steps);
        result.steps += w.steps;
        if (w.elem >= 0) {
            result.elem_id = store.tet_id_at(w.elem);
            result.candidate_elem = store.tet_id_at(c);
            return result;
        }
    }
    if (cfg.fallback_enabled) {
        for (std::size_t t = 0; t < store.tet_count(); ++t) {
            if (point_in_tet(store.corners_at(static_cast<std::int32_t>(t)), p,
                             cfg.tolerance)) {
                result.elem_id = store.tet_id_at(static_cast<std::int32_t>(t));
                return result;
            }
        }
    }
    return result;
}

BatchResult locate_batch(const MeshStore& store, std::span<const Vec3> points,
                         const LocatorConfig& cfg, int threads) {
    check_config(cfg);
    if (!store.frozen()) throw StateError("locate_batch requires a frozen store");

    BatchResult batch;
    batch.results.resize(points.size());

    const std::size_t n = points.size();
    if (n > 0) {
        unsigned t = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
        t = static_cast<unsigned>(std::min<std::size_t>(t, n));

        if (t == 1) {
            for (std::size_t i = 0; i < n; ++i) batch.results[i] = locate(store, points[i], cfg);
        } else {
            std::vector<std::thread> workers;
            std::exception_ptr first_error;
            std::mutex error_mutex;
            const std::size_t chunk = (n + t - 1) / t;
            for (unsigned w = 0; w < t; ++w) {
                const std::size_t lo = w * chunk;
                const std::size_t hi = std::min(n, lo + chunk);
                if (lo >= hi) break;
                workers.emplace_back([&, lo, hi] {
                    try {
                        for (std::size_t i = lo; i < hi; ++i)
                            batch.results[i] = locate(store, points[i], cfg);
                    } catch (...) {
                        const std::lock_guard<std::mutex> g(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                    }
                });
            }
            for (auto& w : workers) w.join();
            if (first_error) std::rethrow_exception(first_error);
        }
    }

    std::unordered_set<ElemId> distinct;
    for (const LocateResult& r : batch.results)
        if (r.elem_id >= 0) distinct.insert(r.elem_id);
    batch.distinct_elements = distinct.size();
    return batch;
}

} // namespace tmq
