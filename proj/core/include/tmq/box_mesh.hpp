#pragma once

#include "tmq/mesh_model.hpp"

namespace tmq {

// Structured test mesh: an nx * ny * nz cell grid over `box`, each cell
// split into 6 tetrahedra by the Kuhn subdivision around the cell's main
// diagonal (conforming without parity alternation). Produces
// (nx+1)(ny+1)(nz+1) vertices and 6*nx*ny*nz positively oriented tets.
// The returned store is frozen; hcodes are not assigned.
// Throws InvalidArgumentError on non-positive cell counts.
MeshStore generate_box(int nx, int ny, int nz, const Box3& box = Box3::unit());

} // namespace tmq
