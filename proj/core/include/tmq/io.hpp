#pragma once

#include <span>
#include <string>
#include <vector>

#include "tmq/interpolate.hpp"
#include "tmq/locate.hpp"
#include "tmq/mesh_model.hpp"
#include "tmq/partition.hpp"
#include "tmq/surface.hpp"

namespace tmq {

// CSV layouts, no header rows. The delimiter defaults to comma; tab is the
// other supported choice. Parse failures throw ParseError naming the file
// and line; non-finite values are rejected.

// rows: VertexID,x,y,z
std::vector<Vertex> load_vertices_csv(const std::string& path, char delimiter = ',');
// rows: ElemID,v0,v1,v2,v3
std::vector<TetQuad> load_tets_csv(const std::string& path, char delimiter = ',');
// rows: x,y,z
std::vector<Vec3> load_points_csv(const std::string& path, char delimiter = ',');
// rows: VertexID,value — must cover every mesh vertex
NodalField load_field_csv(const MeshStore& store, const std::string& path, char delimiter = ',',
                          const std::string& name = "field");

void save_vertices_csv(const MeshStore& store, const std::string& path, char delimiter = ',');
void save_tets_csv(const MeshStore& store, const std::string& path, char delimiter = ',');

// rows: x,y,z,ElemID (-1 for not-contained)
void write_locate_csv(const std::string& path, std::span<const Vec3> points,
                      std::span<const LocateResult> results, char delimiter = ',');
// rows: ElemID,PartitionID in (hcode, elem_id) order
void write_partition_csv(const std::string& path, const PartitionAssignment& pa,
                         char delimiter = ',');
// rows: TriID,v0,v1,v2
void write_oriented_csv(const std::string& path, std::span<const OrientedTriangle> tris,
                        char delimiter = ',');
// rows: TriID,Rank,VertexID (three per triangle)
void write_normalized_csv(const std::string& path, std::span<const OrientedTriangle> tris,
                          char delimiter = ',');
// rows: x,y,z,value (value printed as nan when not contained)
void write_interp_csv(const std::string& path, std::span<const Vec3> points,
                      std::span<const double> values, char delimiter = ',');

// Single-file binary snapshot: magic "TMQ1", version, counts, vertex and
// tet blocks, optional hcode block (quantizer + codes). Fixed-width
// little-endian integers, IEEE 64-bit reals. save -> load -> save is byte
// identical.
inline constexpr std::uint32_t kArchiveVersion = 1;

void save_archive(const MeshStore& store, const std::string& path);
// Returns a frozen store; hcodes are taken from the archive when present
// instead of being recomputed. Throws ArchiveError on bad magic/version
// or truncation.
MeshStore load_archive(const std::string& path);

// Shortest round-trip decimal form of a double (used by all CSV writers,
// so written files are reproducible).
std::string format_double(double v);

} // namespace tmq
