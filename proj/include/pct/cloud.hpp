#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pct/error.hpp"

namespace pct {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// A scan: N points in meters, optionally with per-point intensity in [0,1].
struct PointCloud {
    std::vector<Vec3> points;
    std::optional<std::vector<double>> intensity;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    // Throws InvalidArgument when an invariant is broken.
    void validate() const;
};

// Points plus one semantic class id per point.
struct LabeledCloud {
    PointCloud cloud;
    std::vector<std::uint32_t> labels;

    std::size_t size() const { return cloud.size(); }

    void validate() const;
};

struct ClassEntry {
    std::uint32_t id = 0;
    std::string name;
    std::array<std::uint8_t, 3> color = {0, 0, 0};
};

// Ordered id -> (name, color) table. Ids absent from the table collapse to
// ignore_id when labels are read from disk.
struct SemanticClassMap {
    std::vector<ClassEntry> entries;
    std::uint32_t ignore_id = 0;

    bool contains(std::uint32_t id) const;
    const ClassEntry& entry(std::uint32_t id) const;
    // Index of a class id in entry order; throws when absent.
    std::size_t index_of(std::uint32_t id) const;
    std::size_t class_count() const { return entries.size(); }

    void validate() const;
};

}  // namespace pct
