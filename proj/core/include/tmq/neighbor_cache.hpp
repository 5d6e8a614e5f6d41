#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

namespace tmq {

// Memoized (element, face rank) -> neighbor map, filled lazily by the
// adjacency layer. Entries hold internal tet indices, -1 for a surface
// face, kUnknown while unset. Concurrent fills are benign: the value for
// a slot is a pure function of the frozen mesh, so racing writers store
// the same result.
class NeighborCache {
public:
    static constexpr std::int32_t kUnknown = -2;

    NeighborCache() = default;
    explicit NeighborCache(std::size_t tet_count) : slots_(4 * tet_count) {
        for (auto& s : slots_) s.store(kUnknown, std::memory_order_relaxed);
    }

    std::int32_t get(std::int32_t tet_index, int rank) const {
        return slots_[slot(tet_index, rank)].load(std::memory_order_acquire);
    }

    void put(std::int32_t tet_index, int rank, std::int32_t neighbor_index) {
        slots_[slot(tet_index, rank)].store(neighbor_index, std::memory_order_release);
    }

    std::size_t size() const { return slots_.size(); }

private:
    static std::size_t slot(std::int32_t tet_index, int rank) {
        return 4 * static_cast<std::size_t>(tet_index) + static_cast<std::size_t>(rank);
    }

    std::vector<std::atomic<std::int32_t>> slots_;
};

} // namespace tmq
