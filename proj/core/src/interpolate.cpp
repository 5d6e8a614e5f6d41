#include "tmq/interpolate.hpp"

#include <cmath>
#include <limits>

#include "tmq/errors.hpp"

namespace tmq {

NodalField NodalField::from_values(const MeshStore& store, std::string name,
                                   const std::vector<std::pair<VertexId, double>>& values) {
    NodalField f;
    f.name_ = std::move(name);
    f.values_.assign(store.vertex_count(), std::numeric_limits<double>::quiet_NaN());
    for (const auto& [id, value] : values) {
        if (!std::isfinite(value))
            throw InvalidArgumentError("non-finite field value at vertex " + std::to_string(id));
        f.values_[store.vertex_index_of(id)] = value;
    }
    for (std::size_t v = 0; v < f.values_.size(); ++v)
        if (std::isnan(f.values_[v]))
            throw InvalidArgumentError("field \"" + f.name_ + "\" missing a value for vertex " +
                                       std::to_string(store.vertex_id_at(static_cast<std::int32_t>(v))));
    return f;
}

NodalField NodalField::from_function(const MeshStore& store, std::string name,
                                     const std::function<double(const Vec3&)>& fn) {
    NodalField f;
    f.name_ = std::move(name);
    f.values_.resize(store.vertex_count());
    for (std::size_t v = 0; v < f.values_.size(); ++v)
        f.values_[v] = fn(store.vertex_position_at(static_cast<std::int32_t>(v)));
    return f;
}

ShapeValues shape_values(const TetCorners& t, const Vec3& p) {
    const BarycentricCoords bc = solve_barycentric(t, p);
    return {{1.0 - bc.lambda - bc.mu - bc.nu, bc.lambda, bc.mu, bc.nu}};
}

double interpolate_in_element(const MeshStore& store, const NodalField& field, ElemId elem,
                              const Vec3& p) {
    const std::int32_t ti = store.tet_index_of(elem);
    const ShapeValues s = shape_values(store.corners_at(ti), p);
    const auto& vi = store.tet_vertex_indices(ti);
    double value = 0.0;
    for (int r = 0; r < 4; ++r) value += s.s[r] * field.value_at_index(vi[r]);
    return value;
}

double interpolate(const MeshStore& store, const NodalField& field, const Vec3& p,
                   const LocatorConfig& cfg) {
    const LocateResult loc = locate(store, p, cfg);
    if (loc.elem_id == kNoElement)
        throw NotContainedError("point is not contained in any mesh element");
    return interpolate_in_element(store, field, loc.elem_id, p);
}

} // namespace tmq
