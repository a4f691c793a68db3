#include "pct/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "pct/kdtree.hpp"
#include "pct/rng.hpp"

namespace pct {

PointCloud upsample(const PointCloud& cloud, int factor, int neighbors) {
    if (factor < 1) throw InvalidArgument("upsample factor must be >= 1");
    if (neighbors < 1) throw InvalidArgument("upsample neighbors must be >= 1");
    if (factor == 1) return cloud;
    const std::size_t n = cloud.size();
    if (n < 2) throw InvalidArgument("upsample needs at least 2 points when factor > 1");

    const std::size_t target = static_cast<std::size_t>(factor) * n;
    const int distinct = static_cast<int>(std::min<std::size_t>(neighbors, n - 1));

    KdTree tree(cloud.points);
    // j-th neighbor of every original point, j = 1..distinct.
    std::vector<std::vector<std::size_t>> nn(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto hits = tree.knn(cloud.points[i], static_cast<std::size_t>(distinct), i);
        nn[i].reserve(hits.size());
        for (const auto& h : hits) nn[i].push_back(h.index);
    }

    PointCloud out;
    out.points = cloud.points;
    out.points.reserve(target);
    if (cloud.intensity) {
        out.intensity = *cloud.intensity;
        out.intensity->reserve(target);
    }

    int round = 0;
    while (out.points.size() < target) {
        const std::size_t rank = (round % neighbors) % distinct;  // cycles 1..neighbors
        for (std::size_t i = 0; i < n && out.points.size() < target; ++i) {
            const std::size_t j = nn[i][rank];
            out.points.push_back((cloud.points[i] + cloud.points[j]) * 0.5);
            if (out.intensity) {
                out.intensity->push_back(0.5 * ((*cloud.intensity)[i] + (*cloud.intensity)[j]));
            }
        }
        ++round;
    }
    return out;
}

namespace {

struct VoxelKey {
    std::int64_t x, y, z;
    bool operator==(const VoxelKey& o) const { return x == o.x && y == o.y && z == o.z; }
};

struct VoxelKeyHash {
    std::size_t operator()(const VoxelKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t v : {k.x, k.y, k.z}) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

LabeledCloud voxel_downsample(const LabeledCloud& cloud, double voxel_size) {
    if (!(voxel_size > 0.0)) throw InvalidArgument("voxel size must be positive");
    cloud.validate();

    struct Voxel {
        Vec3 sum{};
        double intensity_sum = 0.0;
        std::vector<std::size_t> members;
    };
    std::unordered_map<VoxelKey, std::size_t, VoxelKeyHash> index;
    std::vector<Voxel> voxels;  // in order of first membership

    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.cloud.points[i];
        const VoxelKey key{static_cast<std::int64_t>(std::floor(p.x / voxel_size)),
                           static_cast<std::int64_t>(std::floor(p.y / voxel_size)),
                           static_cast<std::int64_t>(std::floor(p.z / voxel_size))};
        auto [it, inserted] = index.try_emplace(key, voxels.size());
        if (inserted) voxels.emplace_back();
        Voxel& v = voxels[it->second];
        v.sum = v.sum + p;
        if (cloud.cloud.intensity) v.intensity_sum += (*cloud.cloud.intensity)[i];
        v.members.push_back(i);
    }

    LabeledCloud out;
    out.cloud.points.reserve(voxels.size());
    out.labels.reserve(voxels.size());
    if (cloud.cloud.intensity) out.cloud.intensity.emplace();
    for (const Voxel& v : voxels) {
        const double inv = 1.0 / static_cast<double>(v.members.size());
        const Vec3 centroid = v.sum * inv;
        std::size_t best = v.members.front();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t m : v.members) {
            const Vec3 d = cloud.cloud.points[m] - centroid;
            const double dist = dot(d, d);
            if (dist < best_d) {
                best_d = dist;
                best = m;
            }
        }
        out.cloud.points.push_back(centroid);
        out.labels.push_back(cloud.labels[best]);
        if (out.cloud.intensity) out.cloud.intensity->push_back(v.intensity_sum * inv);
    }
    return out;
}

LabeledCloud cap_points(const LabeledCloud& cloud, std::size_t max_points, std::uint64_t seed) {
    if (max_points < 1) throw InvalidArgument("max_points must be >= 1");
    cloud.validate();
    const std::size_t n = cloud.size();
    if (n <= max_points) return cloud;

    // Partial Fisher-Yates gives a uniform subset; sorting restores input order.
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    Rng rng(seed);
    for (std::size_t i = 0; i < max_points; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
        std::swap(indices[i], indices[j]);
    }
    indices.resize(max_points);
    std::sort(indices.begin(), indices.end());

    LabeledCloud out;
    out.cloud.points.reserve(max_points);
    out.labels.reserve(max_points);
    if (cloud.cloud.intensity) out.cloud.intensity.emplace();
    for (std::size_t i : indices) {
        out.cloud.points.push_back(cloud.cloud.points[i]);
        out.labels.push_back(cloud.labels[i]);
        if (out.cloud.intensity) out.cloud.intensity->push_back((*cloud.cloud.intensity)[i]);
    }
    return out;
}

}  // namespace pct
