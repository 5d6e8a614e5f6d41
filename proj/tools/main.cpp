// tmq -- tetrahedral mesh store and spatial query engine, command line front end.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tmq/box_mesh.hpp"
#include "tmq/errors.hpp"
#include "tmq/hilbert.hpp"
#include "tmq/interpolate.hpp"
#include "tmq/io.hpp"
#include "tmq/locate.hpp"
#include "tmq/mesh_model.hpp"
#include "tmq/partition.hpp"
#include "tmq/pipeline.hpp"
#include "tmq/sampling.hpp"
#include "tmq/surface.hpp"

namespace {

using namespace tmq;

char parse_delimiter(const std::string& s) {
    if (s == "tab" || s == "\\t" || s == "\t") return '\t';
    if (s.size() == 1) return s[0];
    throw InvalidArgumentError("unsupported delimiter \"" + s + "\" (use ',' or 'tab')");
}

Box3 parse_box(const std::vector<double>& v) {
    if (v.size() != 6)
        throw InvalidArgumentError("--box needs 6 values: xmin ymin zmin xmax ymax zmax");
    return Box3{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
}

// Archives are the mesh currency between commands; anything lacking hcodes
// gets them assigned over its own bounds so it is immediately query-ready.
MeshStore load_mesh(const std::string& path, int bits) {
    MeshStore store = load_archive(path);
    if (!store.has_hcodes() && store.tet_count() > 0)
        assign_hcodes(store, Quantizer(store.bounds(), bits));
    return store;
}

struct LocatorFlags {
    double epsilon = 1e-15;
    int max_steps = 0;
    int fanout = 4;
    bool no_fallback = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--epsilon", epsilon, "containment tolerance")->capture_default_str();
        cmd->add_option("--max-steps", max_steps,
                        "walk step budget (0 = scaled default)");
        cmd->add_option("--fanout", fanout, "hcode candidates tried per query")
            ->capture_default_str();
        cmd->add_flag("--no-fallback", no_fallback,
                      "skip the exhaustive scan when every walk fails");
    }
    LocatorConfig config() const {
        LocatorConfig cfg;
        cfg.tolerance.epsilon = epsilon;
        cfg.max_steps = max_steps;
        cfg.candidate_fanout = fanout;
        cfg.fallback_enabled = !no_fallback;
        return cfg;
    }
};

int print_stage_report(const PipelineResult& result) {
    for (const StageResult& s : result.stages) {
        const char* tag = s.status == StageResult::Status::Ok        ? "ok"
                          : s.status == StageResult::Status::Failed ? "FAILED"
                                                                    : "skipped";
        std::cout << "[" << tag << "] " << s.name;
        if (!s.message.empty()) std::cout << ": " << s.message;
        std::cout << "\n";
    }
    return result.ok() ? 0 : 1;
}

// ---- bench ----

struct BenchSpec {
    enum class Mode { FixedCloud, RandomClouds };
    Mode mode = Mode::FixedCloud;
    Vec3 center{};
    bool center_set = false;
    double radius = 0.1;
    int clouds = 10;           // N
    int points_per_cloud = 0;  // N_cr; 0 = total/clouds
    std::size_t total_points = 20000;
    std::uint64_t seed = 12345;
};

struct BenchRow {
    double mu_r = 0.0;
    double sigma_r = 0.0;
    std::size_t points = 0;
    double seconds = 0.0;
    double points_per_s = 0.0;
    std::size_t distinct = 0;
};

BenchRow run_cloud_bench(const MeshStore& store, const std::vector<Vec3>& points,
                         const std::vector<double>& radii, const LocatorConfig& cfg,
                         int threads) {
    BenchRow row;
    row.points = points.size();
    if (!radii.empty()) {
        double sum = 0.0;
        for (const double r : radii) sum += r;
        row.mu_r = sum / static_cast<double>(radii.size());
        if (radii.size() > 1) {
            double ss = 0.0;
            for (const double r : radii) ss += (r - row.mu_r) * (r - row.mu_r);
            row.sigma_r = std::sqrt(ss / static_cast<double>(radii.size() - 1));
        }
    }
    const auto start = std::chrono::steady_clock::now();
    const BatchResult batch = locate_batch(store, points, cfg, threads);
    const auto stop = std::chrono::steady_clock::now();
    row.seconds = std::chrono::duration<double>(stop - start).count();
    row.points_per_s =
        row.seconds > 0.0 ? static_cast<double>(row.points) / row.seconds : 0.0;
    row.distinct = batch.distinct_elements;
    return row;
}

int cmd_bench(const std::string& mesh_path, BenchSpec spec, const LocatorFlags& flags,
              int threads, const std::string& out_path) {
    const MeshStore store = load_mesh(mesh_path, kMaxBitsPerAxis);
    if (!spec.center_set) spec.center = store.bounds().center();

    std::ostringstream report;
    if (spec.mode == BenchSpec::Mode::FixedCloud) {
        const auto points = sphere_cloud(spec.center, spec.radius, spec.total_points, spec.seed);
        const BenchRow row =
            run_cloud_bench(store, points, {spec.radius}, flags.config(), threads);
        report << "cx,cy,cz,r,points,seconds,points_per_s,distinct\n"
               << format_double(spec.center.x) << ',' << format_double(spec.center.y) << ','
               << format_double(spec.center.z) << ',' << format_double(spec.radius) << ','
               << row.points << ',' << format_double(row.seconds) << ','
               << format_double(row.points_per_s) << ',' << row.distinct << "\n";
    } else {
        if (spec.points_per_cloud <= 0)
            spec.points_per_cloud =
                static_cast<int>(spec.total_points / static_cast<std::size_t>(spec.clouds));
        if (static_cast<std::size_t>(spec.clouds) *
                static_cast<std::size_t>(spec.points_per_cloud) !=
            spec.total_points)
            throw InvalidArgumentError("clouds * points-per-cloud must equal total points");

        // centers uniform in the mesh box, radii uniform in (0, r]
        std::mt19937_64 rng(spec.seed);
        std::vector<Vec3> points;
        points.reserve(spec.total_points);
        std::vector<double> radii;
        radii.reserve(static_cast<std::size_t>(spec.clouds));
        for (int c = 0; c < spec.clouds; ++c) {
            const Vec3 center = uniform_in_box(rng, store.bounds());
            const double r = spec.radius * (1.0 - uniform01(rng));
            radii.push_back(r);
            const auto cloud = sphere_cloud(center, r, spec.points_per_cloud, rng());
            points.insert(points.end(), cloud.begin(), cloud.end());
        }
        const BenchRow row = run_cloud_bench(store, points, radii, flags.config(), threads);
        report << "clouds,points_per_cloud,mu_r,sigma_r,points,seconds,points_per_s,distinct\n"
               << spec.clouds << ',' << spec.points_per_cloud << ','
               << format_double(row.mu_r) << ',' << format_double(row.sigma_r) << ','
               << row.points << ',' << format_double(row.seconds) << ','
               << format_double(row.points_per_s) << ',' << row.distinct << "\n";
    }

    std::cout << report.str();
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios_base::trunc);
        if (!out) throw Error(out_path + ": cannot open for writing");
        out << report.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tetrahedral mesh store and spatial query engine"};
    app.require_subcommand(1);

    std::string mesh_path, out_path, delimiter = ",";
    int threads = 0;

    // gen
    auto* gen = app.add_subcommand("gen", "generate a structured box mesh archive");
    int nx = 1, ny = 1, nz = 1, bits = kMaxBitsPerAxis;
    std::vector<double> box_values;
    gen->add_option("--nx", nx, "cells along x")->required();
    gen->add_option("--ny", ny, "cells along y")->required();
    gen->add_option("--nz", nz, "cells along z")->required();
    gen->add_option("--box", box_values, "bounding box: xmin ymin zmin xmax ymax zmax")
        ->expected(6);
    gen->add_option("--bits", bits, "hilbert bits per axis")->capture_default_str();
    gen->add_option("--out", out_path, "output archive path")->required();

    // load
    auto* load = app.add_subcommand("load", "run the CSV load pipeline into an archive");
    std::string vertices_path, tets_path;
    load->add_option("--vertices", vertices_path, "vertices CSV (VertexID,x,y,z)")->required();
    load->add_option("--tets", tets_path, "tets CSV (ElemID,v0,v1,v2,v3)")->required();
    load->add_option("--delimiter", delimiter, "field delimiter (',' or 'tab')");
    load->add_option("--bits", bits, "hilbert bits per axis")->capture_default_str();
    load->add_option("--out", out_path, "output archive path")->required();

    // save
    auto* save = app.add_subcommand("save", "export an archive back to CSV files");
    std::string vertices_out, tets_out;
    save->add_option("--mesh", mesh_path, "input archive")->required();
    save->add_option("--vertices-out", vertices_out, "vertices CSV path")->required();
    save->add_option("--tets-out", tets_out, "tets CSV path")->required();
    save->add_option("--delimiter", delimiter, "field delimiter (',' or 'tab')");

    // validate
    auto* validate = app.add_subcommand("validate", "check mesh integrity");
    validate->add_option("--mesh", mesh_path, "archive to validate");
    validate->add_option("--vertices", vertices_path, "vertices CSV");
    validate->add_option("--tets", tets_path, "tets CSV");
    validate->add_option("--delimiter", delimiter, "field delimiter (',' or 'tab')");

    // locate
    auto* locate_cmd = app.add_subcommand("locate", "point -> containing element queries");
    std::string points_path;
    LocatorFlags locator_flags;
    locate_cmd->add_option("--mesh", mesh_path, "input archive")->required();
    locate_cmd->add_option("--points", points_path, "points CSV (x,y,z)")->required();
    locate_cmd->add_option("--out", out_path, "locate output CSV (x,y,z,ElemID)")->required();
    locate_cmd->add_option("--delimiter", delimiter, "field delimiter (',' or 'tab')");
    locate_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
    locator_flags.attach(locate_cmd);

    // interp
    auto* interp = app.add_subcommand("interp", "interpolate a nodal field at points");
    std::string field_path;
    interp->add_option("--mesh", mesh_path, "input archive")->required();
    interp->add_option("--field", field_path, "nodal field CSV (VertexID,value)")->required();
    interp->add_option("--points", points_path, "points CSV (x,y,z)")->required();
    interp->add_option("--out", out_path, "output CSV (x,y,z,value)")->required();
    interp->add_option("--delimiter", delimiter, "field delimiter (',' or 'tab')");
    locator_flags.attach(interp);

    // surface
    auto* surface = app.add_subcommand("surface", "recover the oriented boundary surface");
    std::string normalized_out;
    surface->add_option("--mesh", mesh_path, "input archive")->required();
    surface->add_option("--out", out_path, "oriented output CSV (TriID,v0,v1,v2)")->required();
    surface->add_option("--normalized-out", normalized_out,
                        "normalized output CSV (TriID,Rank,VertexID)");
    surface->add_option("--delimiter", delimiter, "field delimiter (',' or 'tab')");

    // partition
    auto* part = app.add_subcommand("partition", "hilbert-order NTILE partitioning");
    int nparts = 0;
    part->add_option("--mesh", mesh_path, "input archive")->required();
    part->add_option("--n", nparts, "partition count")->required();
    part->add_option("--out", out_path, "output CSV (ElemID,PartitionID)")->required();
    part->add_option("--delimiter", delimiter, "field delimiter (',' or 'tab')");

    // bench
    auto* bench = app.add_subcommand("bench", "point-cloud locate throughput");
    BenchSpec spec;
    std::vector<double> center_values;
    std::string mode = "fixed";
    LocatorFlags bench_flags;
    bench->add_option("--mesh", mesh_path, "input archive")->required();
    bench->add_option("--mode", mode, "fixed | random")->capture_default_str();
    bench->add_option("--center", center_values, "cloud center (fixed mode)")->expected(3);
    bench->add_option("--radius", spec.radius,
                      "cloud radius (fixed) or max radius (random)")
        ->capture_default_str();
    bench->add_option("--clouds", spec.clouds, "number of clouds (random mode)")
        ->capture_default_str();
    bench->add_option("--points-per-cloud", spec.points_per_cloud,
                      "points per cloud (random mode; 0 = total/clouds)");
    bench->add_option("--total", spec.total_points, "total points")->capture_default_str();
    bench->add_option("--seed", spec.seed, "RNG seed")->capture_default_str();
    bench->add_option("--threads", threads, "worker threads (0 = all cores)");
    bench->add_option("--out", out_path, "also write the report CSV here");
    bench_flags.attach(bench);

    CLI11_PARSE(app, argc, argv);

    try {
        const char delim = parse_delimiter(delimiter);

        if (gen->parsed()) {
            const Box3 box = box_values.empty() ? Box3::unit() : parse_box(box_values);
            MeshStore store = generate_box(nx, ny, nz, box);
            assign_hcodes(store, Quantizer(store.bounds(), bits));
            save_archive(store, out_path);
            std::cout << "generated " << store.vertex_count() << " vertices, "
                      << store.tet_count() << " tets -> " << out_path << "\n";
            return 0;
        }

        if (load->parsed()) {
            PipelineConfig cfg;
            cfg.vertices_path = vertices_path;
            cfg.tets_path = tets_path;
            cfg.delimiter = delim;
            cfg.hilbert_bits = bits;
            const PipelineResult result = run_pipeline(cfg);
            const int rc = print_stage_report(result);
            if (rc != 0) return rc;
            save_archive(*result.store, out_path);
            std::cout << "archive -> " << out_path << "\n";
            return 0;
        }

        if (save->parsed()) {
            const MeshStore store = load_archive(mesh_path);
            save_vertices_csv(store, vertices_out, delim);
            save_tets_csv(store, tets_out, delim);
            std::cout << store.vertex_count() << " vertices -> " << vertices_out << "\n"
                      << store.tet_count() << " tets -> " << tets_out << "\n";
            return 0;
        }

        if (validate->parsed()) {
            MeshStore store;
            if (!mesh_path.empty()) {
                store = load_archive(mesh_path);
            } else if (!vertices_path.empty() && !tets_path.empty()) {
                store.add_vertices(load_vertices_csv(vertices_path, delim));
                store.add_tets(load_tets_csv(tets_path, delim));
            } else {
                throw InvalidArgumentError("validate needs --mesh or --vertices/--tets");
            }
            const ValidationReport report = validate_mesh(store);
            for (const auto& finding : report.findings)
                std::cout << "finding: " << finding.message << "\n";
            std::cout << (report.clean() ? "clean" : std::to_string(report.findings.size()) +
                                                         " finding(s)")
                      << "\n";
            return report.clean() ? 0 : 1;
        }

        if (locate_cmd->parsed()) {
            const MeshStore store = load_mesh(mesh_path, kMaxBitsPerAxis);
            const auto points = load_points_csv(points_path, delim);
            const BatchResult batch =
                locate_batch(store, points, locator_flags.config(), threads);
            write_locate_csv(out_path, points, batch.results, delim);
            std::cout << points.size() << " points, " << batch.distinct_elements
                      << " distinct elements -> " << out_path << "\n";
            return 0;
        }

        if (interp->parsed()) {
            const MeshStore store = load_mesh(mesh_path, kMaxBitsPerAxis);
            const NodalField field = load_field_csv(store, field_path, delim);
            const auto points = load_points_csv(points_path, delim);
            const LocatorConfig cfg = locator_flags.config();
            std::vector<double> values(points.size());
            const BatchResult batch = locate_batch(store, points, cfg, threads);
            for (std::size_t i = 0; i < points.size(); ++i) {
                values[i] = batch.results[i].elem_id == kNoElement
                                ? std::numeric_limits<double>::quiet_NaN()
                                : interpolate_in_element(store, field,
                                                         batch.results[i].elem_id, points[i]);
            }
            write_interp_csv(out_path, points, values, delim);
            std::cout << points.size() << " points -> " << out_path << "\n";
            return 0;
        }

        if (surface->parsed()) {
            const MeshStore store = load_archive(mesh_path);
            const auto tris = extract_unoriented(store);
            const auto oriented = orient(store, tris);
            write_oriented_csv(out_path, oriented, delim);
            std::cout << oriented.size() << " triangles -> " << out_path << "\n";
            if (!normalized_out.empty()) {
                write_normalized_csv(normalized_out, oriented, delim);
                std::cout << 3 * oriented.size() << " rows -> " << normalized_out << "\n";
            }
            return 0;
        }

        if (part->parsed()) {
            const MeshStore store = load_mesh(mesh_path, kMaxBitsPerAxis);
            const PartitionAssignment pa = partition(store, nparts);
            write_partition_csv(out_path, pa, delim);
            std::cout << store.tet_count() << " elements into " << nparts << " partitions -> "
                      << out_path << "\n";
            return 0;
        }

        if (bench->parsed()) {
            if (mode == "fixed") {
                spec.mode = BenchSpec::Mode::FixedCloud;
            } else if (mode == "random") {
                spec.mode = BenchSpec::Mode::RandomClouds;
            } else {
                throw InvalidArgumentError("--mode must be fixed or random");
            }
            if (!center_values.empty()) {
                if (center_values.size() != 3)
                    throw InvalidArgumentError("--center needs 3 values");
                spec.center = {center_values[0], center_values[1], center_values[2]};
                spec.center_set = true;
            }
            if (spec.radius <= 0) throw InvalidArgumentError("--radius must be > 0");
            return cmd_bench(mesh_path, spec, bench_flags, threads, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
