#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "tmq/hilbert.hpp"
#include "tmq/sampling.hpp"

using namespace tmq;

namespace {

std::vector<LatticePoint> random_lattice_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<LatticePoint> out(n);
    const std::uint32_t side = 1u << kMaxBitsPerAxis;
    for (auto& p : out)
        p = {static_cast<std::uint32_t>(rng() % side), static_cast<std::uint32_t>(rng() % side),
             static_cast<std::uint32_t>(rng() % side)};
    return out;
}

void BM_h_encode(benchmark::State& state) {
    const auto points = random_lattice_points(4096, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h_encode(points[i]));
        i = (i + 1) % points.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_h_encode);

void BM_h_decode(benchmark::State& state) {
    const auto points = random_lattice_points(4096, 2);
    std::vector<HilbertCode> codes;
    codes.reserve(points.size());
    for (const auto& p : points) codes.push_back(h_encode(p));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h_decode(codes[i]));
        i = (i + 1) % codes.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_h_decode);

// Report-only locality statistic: for random lattice point pairs at L1
// distance <= 2, how small the code difference tends to be. The counters
// carry the distribution summary; locality is a tendency, not a bound.
void BM_hilbert_locality_report(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const std::uint32_t side = 1u << kMaxBitsPerAxis;
    const std::size_t pairs = 20000;

    std::vector<double> log2_diffs;
    for (auto _ : state) {
        log2_diffs.clear();
        log2_diffs.reserve(pairs);
        for (std::size_t n = 0; n < pairs; ++n) {
            LatticePoint a{static_cast<std::uint32_t>(1 + rng() % (side - 2)),
                           static_cast<std::uint32_t>(1 + rng() % (side - 2)),
                           static_cast<std::uint32_t>(1 + rng() % (side - 2))};
            LatticePoint b = a;
            // random L1 step of length 1 or 2
            const int steps = 1 + static_cast<int>(rng() % 2);
            for (int s = 0; s < steps; ++s) {
                const int axis = static_cast<int>(rng() % 3);
                const int dir = (rng() & 1) ? 1 : -1;
                std::uint32_t* c = axis == 0 ? &b.i : (axis == 1 ? &b.j : &b.k);
                *c += dir;
            }
            const HilbertCode ca = h_encode(a), cb = h_encode(b);
            const std::uint64_t diff = ca < cb ? cb - ca : ca - cb;
            log2_diffs.push_back(std::log2(static_cast<double>(diff) + 1.0));
        }
    }

    std::sort(log2_diffs.begin(), log2_diffs.end());
    const auto quantile = [&](double q) {
        return log2_diffs[static_cast<std::size_t>(q * (log2_diffs.size() - 1))];
    };
    // full-range codes span 63 bits; small quantiles mean strong locality
    state.counters["log2_diff_p50"] = quantile(0.50);
    state.counters["log2_diff_p90"] = quantile(0.90);
    state.counters["log2_diff_p99"] = quantile(0.99);
    const double small = static_cast<double>(
        std::count_if(log2_diffs.begin(), log2_diffs.end(), [](double d) { return d <= 16.0; }));
    state.counters["frac_diff_le_2^16"] = small / static_cast<double>(log2_diffs.size());
}
BENCHMARK(BM_hilbert_locality_report)->Iterations(1);

} // namespace
