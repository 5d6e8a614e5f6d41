#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tmq/locate.hpp"
#include "tmq/mesh_model.hpp"

namespace tmq {

// A scalar value per mesh vertex. Every vertex must carry a finite value.
class NodalField {
public:
    NodalField() = default;

    // Values listed per vertex id.
    static NodalField from_values(const MeshStore& store, std::string name,
                                  const std::vector<std::pair<VertexId, double>>& values);
    // Values sampled from a function of position (test/synthetic fields).
    static NodalField from_function(const MeshStore& store, std::string name,
                                    const std::function<double(const Vec3&)>& f);

    const std::string& name() const { return name_; }
    double value_at_index(std::int32_t vertex_index) const { return values_[vertex_index]; }
    double value_of(const MeshStore& store, VertexId id) const {
        return values_[store.vertex_index_of(id)];
    }
    std::size_t size() const { return values_.size(); }

private:
    std::string name_;
    std::vector<double> values_; // by vertex index
};

// Linear shape-function weights at p: (1 - l - m - n, l, m, n) in rank
// order. They sum to 1 and interpolate nodal values exactly at corners.
struct ShapeValues {
    std::array<double, 4> s{};
};

ShapeValues shape_values(const TetCorners& t, const Vec3& p);

// Field value at p: locates the containing element and forms the weighted
// sum of its four nodal values. Throws NotContainedError when no element
// contains p.
double interpolate(const MeshStore& store, const NodalField& field, const Vec3& p,
                   const LocatorConfig& cfg = {});

// Same weighted sum for an already-known element (no point location).
double interpolate_in_element(const MeshStore& store, const NodalField& field, ElemId elem,
                              const Vec3& p);

} // namespace tmq
