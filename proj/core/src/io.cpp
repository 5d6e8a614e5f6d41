#include "tmq/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_set>

#include "tmq/errors.hpp"

namespace tmq {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_line(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::int32_t parse_i32(std::string_view field, const std::string& path, std::size_t line) {
    std::int32_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        parse_fail(path, line, "bad integer field \"" + std::string(field) + "\"");
    return value;
}

double parse_f64(std::string_view field, const std::string& path, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        parse_fail(path, line, "bad real field \"" + std::string(field) + "\"");
    if (!std::isfinite(value))
        parse_fail(path, line, "non-finite value \"" + std::string(field) + "\"");
    return value;
}

// Calls row(fields, line_number) for every non-empty line.
template <typename RowFn>
void for_each_row(const std::string& path, char delimiter, std::size_t expected_fields,
                  RowFn&& row) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open for reading");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_line(line, delimiter);
        if (fields.size() != expected_fields)
            parse_fail(path, line_no,
                       "expected " + std::to_string(expected_fields) + " fields, got " +
                           std::to_string(fields.size()));
        row(fields, line_no);
    }
}

std::ofstream open_out(const std::string& path, std::ios_base::openmode mode = std::ios_base::out) {
    std::ofstream out(path, mode);
    if (!out) throw Error(path + ": cannot open for writing");
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::vector<Vertex> load_vertices_csv(const std::string& path, char delimiter) {
    std::vector<Vertex> out;
    std::unordered_set<VertexId> seen;
    for_each_row(path, delimiter, 4, [&](const auto& f, std::size_t line) {
        Vertex v;
        v.id = parse_i32(f[0], path, line);
        v.pos = {parse_f64(f[1], path, line), parse_f64(f[2], path, line),
                 parse_f64(f[3], path, line)};
        if (!seen.insert(v.id).second)
            parse_fail(path, line, "duplicate vertex id " + std::to_string(v.id));
        out.push_back(v);
    });
    return out;
}

std::vector<TetQuad> load_tets_csv(const std::string& path, char delimiter) {
    std::vector<TetQuad> out;
    std::unordered_set<ElemId> seen;
    for_each_row(path, delimiter, 5, [&](const auto& f, std::size_t line) {
        TetQuad q;
        q.elem_id = parse_i32(f[0], path, line);
        for (int r = 0; r < 4; ++r) q.v[r] = parse_i32(f[r + 1], path, line);
        if (!seen.insert(q.elem_id).second)
            parse_fail(path, line, "duplicate element id " + std::to_string(q.elem_id));
        out.push_back(q);
    });
    return out;
}

std::vector<Vec3> load_points_csv(const std::string& path, char delimiter) {
    std::vector<Vec3> out;
    for_each_row(path, delimiter, 3, [&](const auto& f, std::size_t line) {
        out.push_back({parse_f64(f[0], path, line), parse_f64(f[1], path, line),
                       parse_f64(f[2], path, line)});
    });
    return out;
}

NodalField load_field_csv(const MeshStore& store, const std::string& path, char delimiter,
                          const std::string& name) {
    std::vector<std::pair<VertexId, double>> values;
    std::unordered_set<VertexId> seen;
    for_each_row(path, delimiter, 2, [&](const auto& f, std::size_t line) {
        const VertexId id = parse_i32(f[0], path, line);
        if (!seen.insert(id).second)
            parse_fail(path, line, "duplicate vertex id " + std::to_string(id));
        if (!store.has_vertex(id))
            parse_fail(path, line, "unknown vertex id " + std::to_string(id));
        values.emplace_back(id, parse_f64(f[1], path, line));
    });
    return NodalField::from_values(store, name, values);
}

void save_vertices_csv(const MeshStore& store, const std::string& path, char delimiter) {
    auto out = open_out(path);
    for (std::size_t v = 0; v < store.vertex_count(); ++v) {
        const auto vi = static_cast<std::int32_t>(v);
        const Vec3& p = store.vertex_position_at(vi);
        out << store.vertex_id_at(vi) << delimiter << format_double(p.x) << delimiter
            << format_double(p.y) << delimiter << format_double(p.z) << '\n';
    }
}

void save_tets_csv(const MeshStore& store, const std::string& path, char delimiter) {
    auto out = open_out(path);
    for (std::size_t t = 0; t < store.tet_count(); ++t) {
        const auto ti = static_cast<std::int32_t>(t);
        const auto& v = store.tet_vertex_ids(ti);
        out << store.tet_id_at(ti);
        for (int r = 0; r < 4; ++r) out << delimiter << v[r];
        out << '\n';
    }
}

void write_locate_csv(const std::string& path, std::span<const Vec3> points,
                      std::span<const LocateResult> results, char delimiter) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < points.size(); ++i) {
        out << format_double(points[i].x) << delimiter << format_double(points[i].y) << delimiter
            << format_double(points[i].z) << delimiter << results[i].elem_id << '\n';
    }
}

void write_partition_csv(const std::string& path, const PartitionAssignment& pa, char delimiter) {
    auto out = open_out(path);
    for (const auto& e : pa.entries()) out << e.elem_id << delimiter << e.partition_id << '\n';
}

void write_oriented_csv(const std::string& path, std::span<const OrientedTriangle> tris,
                        char delimiter) {
    auto out = open_out(path);
    for (const OrientedTriangle& t : tris)
        out << t.tri_id << delimiter << t.v[0] << delimiter << t.v[1] << delimiter << t.v[2]
            << '\n';
}

void write_normalized_csv(const std::string& path, std::span<const OrientedTriangle> tris,
                          char delimiter) {
    auto out = open_out(path);
    for (const OrientedTriangle& t : tris)
        for (int r = 0; r < 3; ++r)
            out << t.tri_id << delimiter << r << delimiter << t.v[r] << '\n';
}

void write_interp_csv(const std::string& path, std::span<const Vec3> points,
                      std::span<const double> values, char delimiter) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < points.size(); ++i) {
        out << format_double(points[i].x) << delimiter << format_double(points[i].y) << delimiter
            << format_double(points[i].z) << delimiter;
        if (std::isnan(values[i]))
            out << "nan";
        else
            out << format_double(values[i]);
        out << '\n';
    }
}

// ---- binary archive ----

namespace {

constexpr char kMagic[4] = {'T', 'M', 'Q', '1'};
constexpr std::uint32_t kFlagHcodes = 1u;

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_i32(std::string& buf, std::int32_t v) { put_u32(buf, static_cast<std::uint32_t>(v)); }
void put_f64(std::string& buf, double v) { put_u64(buf, std::bit_cast<std::uint64_t>(v)); }

class Reader {
public:
    Reader(std::string data, std::string path) : data_(std::move(data)), path_(std::move(path)) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return v;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }

    void expect_magic() {
        need(4);
        if (std::memcmp(data_.data(), kMagic, 4) != 0)
            throw ArchiveError(path_ + ": bad magic, not a mesh archive");
        pos_ = 4;
    }
    void expect_eof() const {
        if (pos_ != data_.size()) throw ArchiveError(path_ + ": trailing bytes after archive");
    }

private:
    void need(std::size_t n) const {
        if (pos_ + n > data_.size()) throw ArchiveError(path_ + ": truncated archive");
    }
    std::string data_;
    std::string path_;
    std::size_t pos_ = 0;
};

} // namespace

void save_archive(const MeshStore& store, const std::string& path) {
    std::string buf;
    buf.reserve(16 + 28 * store.vertex_count() + 20 * store.tet_count());
    buf.append(kMagic, 4);
    put_u32(buf, kArchiveVersion);
    put_u32(buf, store.has_hcodes() ? kFlagHcodes : 0u);
    put_u64(buf, store.vertex_count());
    put_u64(buf, store.tet_count());
    for (std::size_t v = 0; v < store.vertex_count(); ++v) {
        const auto vi = static_cast<std::int32_t>(v);
        const Vec3& p = store.vertex_position_at(vi);
        put_i32(buf, store.vertex_id_at(vi));
        put_f64(buf, p.x);
        put_f64(buf, p.y);
        put_f64(buf, p.z);
    }
    for (std::size_t t = 0; t < store.tet_count(); ++t) {
        const auto ti = static_cast<std::int32_t>(t);
        put_i32(buf, store.tet_id_at(ti));
        for (const VertexId v : store.tet_vertex_ids(ti)) put_i32(buf, v);
    }
    if (store.has_hcodes()) {
        const Quantizer& q = store.quantizer();
        put_f64(buf, q.box().min.x);
        put_f64(buf, q.box().min.y);
        put_f64(buf, q.box().min.z);
        put_f64(buf, q.box().max.x);
        put_f64(buf, q.box().max.y);
        put_f64(buf, q.box().max.z);
        put_u32(buf, static_cast<std::uint32_t>(q.bits()));
        for (std::size_t t = 0; t < store.tet_count(); ++t)
            put_u64(buf, store.hcode_at(static_cast<std::int32_t>(t)));
    }

    auto out = open_out(path, std::ios_base::out | std::ios_base::binary | std::ios_base::trunc);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw Error(path + ": write failed");
}

MeshStore load_archive(const std::string& path) {
    std::ifstream in(path, std::ios_base::in | std::ios_base::binary);
    if (!in) throw ArchiveError(path + ": cannot open for reading");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Reader r(std::move(data), path);
    r.expect_magic();
    const std::uint32_t version = r.u32();
    if (version != kArchiveVersion)
        throw ArchiveError(path + ": unsupported archive version " + std::to_string(version));
    const std::uint32_t flags = r.u32();
    const std::uint64_t nverts = r.u64();
    const std::uint64_t ntets = r.u64();

    MeshStore store;
    for (std::uint64_t v = 0; v < nverts; ++v) {
        Vertex vert;
        vert.id = r.i32();
        vert.pos = {r.f64(), r.f64(), r.f64()};
        store.add_vertex(vert);
    }
    for (std::uint64_t t = 0; t < ntets; ++t) {
        TetQuad q;
        q.elem_id = r.i32();
        for (int k = 0; k < 4; ++k) q.v[k] = r.i32();
        store.add_tet(q);
    }

    std::vector<std::uint64_t> codes;
    Quantizer quantizer;
    const bool has_hcodes = (flags & kFlagHcodes) != 0;
    if (has_hcodes) {
        Box3 box;
        box.min = {r.f64(), r.f64(), r.f64()};
        box.max = {r.f64(), r.f64(), r.f64()};
        const auto bits = static_cast<int>(r.u32());
        try {
            quantizer = Quantizer(box, bits);
        } catch (const InvalidArgumentError& e) {
            throw ArchiveError(path + ": bad quantizer block: " + e.what());
        }
        codes.resize(ntets);
        for (std::uint64_t t = 0; t < ntets; ++t) codes[t] = r.u64();
    }
    r.expect_eof();

    store.freeze();
    // stored codes are trusted as-is; no recomputation
    if (has_hcodes) store.install_hcodes(std::move(codes), quantizer);
    return store;
}

} // namespace tmq
