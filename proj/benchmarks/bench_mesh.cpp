#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "tmq/adjacency.hpp"
#include "tmq/box_mesh.hpp"
#include "tmq/hilbert.hpp"
#include "tmq/partition.hpp"
#include "tmq/surface.hpp"

using namespace tmq;

namespace {

void BM_generate_box(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const MeshStore store = generate_box(n, n, n);
        benchmark::DoNotOptimize(store.tet_count());
    }
    state.SetItemsProcessed(state.iterations() * 6ull * n * n * n);
}
BENCHMARK(BM_generate_box)->Arg(4)->Arg(8)->Arg(16);

void BM_surface_recovery(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MeshStore store = generate_box(n, n, n);
    for (auto _ : state) {
        const auto oriented = orient(store, extract_unoriented(store));
        benchmark::DoNotOptimize(oriented.size());
    }
    state.SetItemsProcessed(state.iterations() * store.tet_count());
}
BENCHMARK(BM_surface_recovery)->Arg(4)->Arg(8)->Arg(16);

void BM_assign_hcodes(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        state.PauseTiming();
        MeshStore store = generate_box(n, n, n);
        state.ResumeTiming();
        assign_hcodes(store, Quantizer(store.bounds()));
        benchmark::DoNotOptimize(store.hcode_index().size());
    }
    state.SetItemsProcessed(state.iterations() * 6ull * n * n * n);
}
BENCHMARK(BM_assign_hcodes)->Arg(8)->Arg(16);

// Interior faces whose two elements land in different partitions -- the
// communication surface a solver would see. Reported for the
// hilbert-ordered NTILE assignment next to a random equal-size one.
std::size_t cut_faces(const MeshStore& store, const std::vector<std::int32_t>& part_of_index) {
    std::size_t cut = 0;
    for (std::size_t t = 0; t < store.tet_count(); ++t) {
        const auto ti = static_cast<std::int32_t>(t);
        for (int r = 0; r < 4; ++r) {
            const std::int32_t n = face_neighbor_index(store, ti, r);
            if (n < 0 || n <= ti) continue; // count each interior face once
            if (part_of_index[t] != part_of_index[n]) ++cut;
        }
    }
    return cut;
}

void BM_partition_cut_report(benchmark::State& state) {
    MeshStore store = generate_box(8, 8, 8);
    assign_hcodes(store, Quantizer(store.bounds()));
    const std::int32_t nparts = static_cast<std::int32_t>(state.range(0));

    std::size_t hilbert_cut = 0, random_cut = 0;
    for (auto _ : state) {
        const PartitionAssignment pa = partition(store, nparts);
        std::vector<std::int32_t> by_index(store.tet_count());
        for (const auto& e : pa.entries()) by_index[store.tet_index_of(e.elem_id)] = e.partition_id;
        hilbert_cut = cut_faces(store, by_index);

        // random assignment with identical bucket sizes
        std::vector<std::int32_t> shuffled = by_index;
        std::mt19937_64 rng(17);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        random_cut = cut_faces(store, shuffled);
    }
    state.counters["hilbert_cut_faces"] = static_cast<double>(hilbert_cut);
    state.counters["random_cut_faces"] = static_cast<double>(random_cut);
    state.counters["cut_ratio"] =
        static_cast<double>(hilbert_cut) / static_cast<double>(std::max<std::size_t>(random_cut, 1));
}
BENCHMARK(BM_partition_cut_report)->Arg(8)->Arg(64)->Iterations(1);

} // namespace
