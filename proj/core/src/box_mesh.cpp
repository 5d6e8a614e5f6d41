#include "tmq/box_mesh.hpp"

#include <string>

#include "tmq/errors.hpp"
#include "tmq/geometry.hpp"

namespace tmq {

namespace {

// the six axis orders of the Kuhn split, with their permutation parity
struct AxisOrder {
    int first, second;
    bool even;
};
constexpr AxisOrder kKuhnOrders[6] = {
    {0, 1, true},  // x,y,z
    {0, 2, false}, // x,z,y
    {1, 0, false}, // y,x,z
    {1, 2, true},  // y,z,x
    {2, 0, true},  // z,x,y
    {2, 1, false}, // z,y,x
};

} // namespace

MeshStore generate_box(int nx, int ny, int nz, const Box3& box) {
    if (nx < 1 || ny < 1 || nz < 1)
        throw InvalidArgumentError("cell counts must be >= 1, got " + std::to_string(nx) + "," +
                                   std::to_string(ny) + "," + std::to_string(nz));

    MeshStore store;

    const auto vertex_id = [&](int ix, int iy, int iz) -> VertexId {
        return static_cast<VertexId>((ix * (ny + 1) + iy) * (nz + 1) + iz);
    };

    const Vec3 span = box.extent();
    for (int ix = 0; ix <= nx; ++ix)
        for (int iy = 0; iy <= ny; ++iy)
            for (int iz = 0; iz <= nz; ++iz)
                store.add_vertex({vertex_id(ix, iy, iz),
                                  {box.min.x + span.x * ix / nx, box.min.y + span.y * iy / ny,
                                   box.min.z + span.z * iz / nz}});

    ElemId next_elem = 0;
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            for (int iz = 0; iz < nz; ++iz) {
                int base[3] = {ix, iy, iz};
                for (const AxisOrder& ord : kKuhnOrders) {
                    int c0[3] = {base[0], base[1], base[2]};
                    int c1[3] = {base[0], base[1], base[2]};
                    c1[ord.first] += 1;
                    int c2[3] = {c1[0], c1[1], c1[2]};
                    c2[ord.second] += 1;

                    TetQuad q;
                    q.elem_id = next_elem++;
                    q.v[0] = vertex_id(c0[0], c0[1], c0[2]);
                    // odd axis orders flip the volume sign; swap two
                    // corners so every tet comes out positively oriented
                    q.v[1] = ord.even ? vertex_id(c1[0], c1[1], c1[2])
                                      : vertex_id(c2[0], c2[1], c2[2]);
                    q.v[2] = ord.even ? vertex_id(c2[0], c2[1], c2[2])
                                      : vertex_id(c1[0], c1[1], c1[2]);
                    q.v[3] = vertex_id(base[0] + 1, base[1] + 1, base[2] + 1);
                    store.add_tet(q);
                }
            }
        }
    }

    store.freeze();
    return store;
}

} // namespace tmq
