#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "tmq/adjacency.hpp"
#include "tmq/box_mesh.hpp"
#include "tmq/hilbert.hpp"
#include "tmq/locate.hpp"
#include "tmq/sampling.hpp"

using namespace tmq;

namespace {

MeshStore indexed_box(int n) {
    MeshStore store = generate_box(n, n, n);
    assign_hcodes(store, Quantizer(store.bounds()));
    return store;
}

// radius as a fraction of the box diagonal; args: (cells, diag_permille)
void BM_locate_cloud(benchmark::State& state) {
    const MeshStore store = indexed_box(static_cast<int>(state.range(0)));
    const double radius =
        store.bounds().diagonal() * static_cast<double>(state.range(1)) / 1000.0;
    const Vec3 center = store.bounds().center();
    const auto points = sphere_cloud(center, std::max(radius, 1e-9), 4096, 7);

    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(locate(store, points[i]));
        i = (i + 1) % points.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_locate_cloud)->Args({8, 0})->Args({8, 50})->Args({8, 500})->Args({16, 0})->Args({16, 500});

void BM_locate_batch_threads(benchmark::State& state) {
    const MeshStore store = indexed_box(12);
    const auto points = box_cloud(store.bounds(), 20000, 11);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const BatchResult b = locate_batch(store, points, {}, threads);
        benchmark::DoNotOptimize(b.distinct_elements);
    }
    state.SetItemsProcessed(state.iterations() * points.size());
}
BENCHMARK(BM_locate_batch_threads)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime();

// Report-only: how often the containing element is already among the
// first `fanout` hcode candidates, measured over random points.
void BM_candidate_hit_rate(benchmark::State& state) {
    const MeshStore store = indexed_box(8);
    const int fanout = static_cast<int>(state.range(0));
    const auto points = box_cloud(store.bounds(), 10000, 13);

    std::size_t hits = 0, total = 0;
    for (auto _ : state) {
        hits = 0;
        total = 0;
        for (const Vec3& p : points) {
            const LocateResult truth = locate(store, p);
            if (truth.elem_id < 0) continue;
            ++total;
            const auto candidates = select_candidate(store, p, fanout);
            if (std::find(candidates.begin(), candidates.end(), truth.elem_id) !=
                candidates.end())
                ++hits;
        }
    }
    state.counters["hit_rate"] =
        static_cast<double>(hits) / static_cast<double>(std::max<std::size_t>(total, 1));
}
BENCHMARK(BM_candidate_hit_rate)->Arg(1)->Arg(4)->Arg(16)->Iterations(1);

void BM_face_neighbor_warm(benchmark::State& state) {
    const MeshStore store = indexed_box(8);
    // warm the cache once
    for (std::size_t t = 0; t < store.tet_count(); ++t)
        for (int r = 0; r < 4; ++r)
            (void)face_neighbor(store, store.tet_id_at(static_cast<std::int32_t>(t)), r);

    std::size_t t = 0;
    int r = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            face_neighbor(store, store.tet_id_at(static_cast<std::int32_t>(t)), r));
        if (++r == 4) {
            r = 0;
            t = (t + 1) % store.tet_count();
        }
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_face_neighbor_warm);

} // namespace
