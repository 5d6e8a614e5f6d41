#include "tmq/pipeline.hpp"

#include <functional>
#include <future>

#include "tmq/errors.hpp"
#include "tmq/hilbert.hpp"
#include "tmq/io.hpp"

namespace tmq {

namespace {

struct Stage {
    std::string name;
    std::vector<std::size_t> deps;
    std::function<std::string()> run; // returns a success note
};

// Runs stages respecting dependencies; ready stages of each wave execute
// concurrently. Results come back in declaration order.
std::vector<StageResult> run_stages(std::vector<Stage>& stages) {
    std::vector<StageResult> results(stages.size());
    std::vector<bool> done(stages.size(), false);
    for (std::size_t i = 0; i < stages.size(); ++i) results[i].name = stages[i].name;

    while (true) {
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < stages.size(); ++i) {
            if (done[i]) continue;
            bool ok = true;
            for (const std::size_t d : stages[i].deps) {
                if (!done[d]) {
                    ok = false;
                    break;
                }
                if (results[d].status != StageResult::Status::Ok) {
                    results[i].status = StageResult::Status::Skipped;
                    results[i].message = "dependency " + results[d].name + " did not succeed";
                    done[i] = true;
                    ok = false;
                    break;
                }
            }
            if (ok && !done[i]) ready.push_back(i);
        }
        if (ready.empty()) break;

        std::vector<std::future<void>> futures;
        futures.reserve(ready.size());
        for (const std::size_t i : ready) {
            futures.push_back(std::async(std::launch::async, [&stages, &results, i] {
                try {
                    results[i].message = stages[i].run();
                    results[i].status = StageResult::Status::Ok;
                } catch (const std::exception& e) {
                    results[i].status = StageResult::Status::Failed;
                    results[i].message = e.what();
                }
            }));
        }
        for (auto& f : futures) f.get();
        for (const std::size_t i : ready) done[i] = true;
    }
    return results;
}

} // namespace

const StageResult* PipelineResult::stage(const std::string& name) const {
    for (const StageResult& s : stages)
        if (s.name == name) return &s;
    return nullptr;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    auto store = std::make_unique<MeshStore>();
    std::vector<Vertex> vertices;
    std::vector<TetQuad> tets;

    std::vector<Stage> stages;
    stages.push_back({"load-vertices", {}, [&] {
                          vertices = load_vertices_csv(cfg.vertices_path, cfg.delimiter);
                          return std::to_string(vertices.size()) + " vertices";
                      }});
    stages.push_back({"load-tets", {}, [&] {
                          tets = load_tets_csv(cfg.tets_path, cfg.delimiter);
                          return std::to_string(tets.size()) + " elements";
                      }});
    stages.push_back({"derive-normalized", {0, 1}, [&] {
                          store->add_vertices(vertices);
                          store->add_tets(tets);
                          return std::to_string(4 * tets.size()) + " rows";
                      }});
    stages.push_back({"validate", {2}, [&] {
                          const ValidationReport report = validate_mesh(*store);
                          if (!report.clean()) {
                              std::string msg = std::to_string(report.findings.size()) +
                                                " finding(s); first: " +
                                                report.findings.front().message;
                              throw Error(msg);
                          }
                          return std::string("clean");
                      }});
    stages.push_back({"compute-centroids", {3}, [&] {
                          store->compute_centroids();
                          return std::string("done");
                      }});
    stages.push_back({"assign-hcodes", {4}, [&] {
                          const Quantizer q(store->bounds(), cfg.hilbert_bits);
                          const HcodeStats stats = assign_hcodes(*store, q);
                          return std::to_string(stats.assigned) + " codes, " +
                                 std::to_string(stats.clamped) + " clamped";
                      }});
    stages.push_back({"build-indices", {4}, [&] {
                          store->build_indices();
                          return std::string("done");
                      }});

    PipelineResult result;
    result.stages = run_stages(stages);
    for (const StageResult& s : result.stages)
        if (s.status != StageResult::Status::Ok) return result;

    store->freeze();
    result.store.emplace(std::move(*store));
    return result;
}

} // namespace tmq
