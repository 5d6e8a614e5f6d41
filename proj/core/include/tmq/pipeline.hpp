#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmq/mesh_model.hpp"

namespace tmq {

// Dependency-ordered CSV-to-query-ready loader. Stage graph:
//
//   {load-vertices, load-tets} -> derive-normalized -> validate
//     -> compute-centroids -> {assign-hcodes, build-indices}
//
// A stage runs only after all its dependencies succeeded; independent
// stages run concurrently. On a failure every dependent stage is skipped
// and no store is returned.

struct PipelineConfig {
    std::string vertices_path;
    std::string tets_path;
    char delimiter = ',';
    int hilbert_bits = kMaxBitsPerAxis;
};

struct StageResult {
    enum class Status { Ok, Failed, Skipped };
    std::string name;
    Status status = Status::Skipped;
    std::string message; // failure cause, or a short success note
};

struct PipelineResult {
    std::vector<StageResult> stages; // in declaration order
    std::optional<MeshStore> store;  // frozen, hcodes assigned; empty on failure
    bool ok() const { return store.has_value(); }
    const StageResult* stage(const std::string& name) const;
};

PipelineResult run_pipeline(const PipelineConfig& cfg);

} // namespace tmq
