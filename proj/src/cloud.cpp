#include "pct/cloud.hpp"

#include <cmath>
#include <unordered_set>

namespace pct {

void PointCloud::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3& p = points[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
            throw InvalidArgument("non-finite coordinate at point " + std::to_string(i));
        }
    }
    if (intensity) {
        if (intensity->size() != points.size()) {
            throw InvalidArgument("intensity count " + std::to_string(intensity->size()) +
                                  " does not match point count " + std::to_string(points.size()));
        }
        for (std::size_t i = 0; i < intensity->size(); ++i) {
            const double v = (*intensity)[i];
            if (!(v >= 0.0 && v <= 1.0)) {
                throw InvalidArgument("intensity out of [0,1] at point " + std::to_string(i));
            }
        }
    }
}

void LabeledCloud::validate() const {
    cloud.validate();
    if (labels.size() != cloud.size()) {
        throw InvalidArgument("label count " + std::to_string(labels.size()) +
                              " does not match point count " + std::to_string(cloud.size()));
    }
}

bool SemanticClassMap::contains(std::uint32_t id) const {
    for (const ClassEntry& e : entries) {
        if (e.id == id) return true;
    }
    return false;
}

const ClassEntry& SemanticClassMap::entry(std::uint32_t id) const {
    for (const ClassEntry& e : entries) {
        if (e.id == id) return e;
    }
    throw InvalidArgument("class id " + std::to_string(id) + " not in class map");
}

std::size_t SemanticClassMap::index_of(std::uint32_t id) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].id == id) return i;
    }
    throw InvalidArgument("class id " + std::to_string(id) + " not in class map");
}

void SemanticClassMap::validate() const {
    std::unordered_set<std::uint32_t> seen;
    for (const ClassEntry& e : entries) {
        if (!seen.insert(e.id).second) {
            throw InvalidArgument("duplicate class id " + std::to_string(e.id));
        }
    }
    if (!contains(ignore_id)) {
        throw InvalidArgument("ignore id " + std::to_string(ignore_id) + " missing from class map");
    }
}

}  // namespace pct
