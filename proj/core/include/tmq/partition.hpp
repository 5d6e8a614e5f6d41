#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tmq/mesh_model.hpp"

namespace tmq {

// NTILE-style bucketing of elements along the Hilbert curve. Partition ids
// run 1..n; sizes differ by at most one; ids are non-decreasing in
// (hcode, elem_id) order.
class PartitionAssignment {
public:
    struct Entry {
        ElemId elem_id;
        std::int32_t partition_id;
    };

    // Rows in (hcode, elem_id) order — the order the assignment was made in.
    const std::vector<Entry>& entries() const { return entries_; }
    std::int32_t partition_of(ElemId elem) const;
    std::int32_t partition_count() const { return n_; }
    std::vector<std::size_t> partition_sizes() const;

private:
    friend PartitionAssignment partition(const MeshStore&, std::int32_t);
    std::vector<Entry> entries_;
    std::unordered_map<ElemId, std::int32_t> by_elem_;
    std::int32_t n_ = 0;
};

// Splits the Hilbert-ordered element sequence into n buckets: the first
// (#tets mod n) buckets take ceil(#tets/n) elements, the rest floor.
// Ties on equal hcodes break by elem_id, so the assignment is total-order
// deterministic. Requires assigned hcodes; throws InvalidArgumentError
// unless 1 <= n <= #tets.
PartitionAssignment partition(const MeshStore& store, std::int32_t n);

} // namespace tmq
