#include "tmq/partition.hpp"

#include <algorithm>
#include <string>

#include "tmq/errors.hpp"

namespace tmq {

std::int32_t PartitionAssignment::partition_of(ElemId elem) const {
    const auto it = by_elem_.find(elem);
    if (it == by_elem_.end()) throw NotFoundError("unknown element id " + std::to_string(elem));
    return it->second;
}

std::vector<std::size_t> PartitionAssignment::partition_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(n_), 0);
    for (const Entry& e : entries_) ++sizes[e.partition_id - 1];
    return sizes;
}

PartitionAssignment partition(const MeshStore& store, std::int32_t n) {
    const std::size_t count = store.tet_count();
    if (n < 1 || static_cast<std::size_t>(n) > count)
        throw InvalidArgumentError("partition count " + std::to_string(n) +
                                   " outside 1..#elements (" + std::to_string(count) + ")");
    if (!store.has_hcodes()) throw StateError("partition requires assigned hcodes");

    struct Key {
        std::uint64_t code;
        ElemId elem;
    };
    std::vector<Key> order(count);
    for (std::size_t t = 0; t < count; ++t)
        order[t] = {store.hcode_at(static_cast<std::int32_t>(t)),
                    store.tet_id_at(static_cast<std::int32_t>(t))};
    std::sort(order.begin(), order.end(), [](const Key& a, const Key& b) {
        return a.code != b.code ? a.code < b.code : a.elem < b.elem;
    });

    const std::size_t base = count / static_cast<std::size_t>(n);
    const std::size_t remainder = count % static_cast<std::size_t>(n);

    PartitionAssignment pa;
    pa.n_ = n;
    pa.entries_.reserve(count);
    std::size_t pos = 0;
    for (std::int32_t p = 1; p <= n; ++p) {
        const std::size_t size = base + (static_cast<std::size_t>(p) <= remainder ? 1 : 0);
        for (std::size_t i = 0; i < size; ++i, ++pos) {
            pa.entries_.push_back({order[pos].elem, p});
            pa.by_elem_.emplace(order[pos].elem, p);
        }
    }
    return pa;
}

} // namespace tmq
