#pragma once

#include <cstdint>

#include "pct/cloud.hpp"

namespace pct {

// Densifies a cloud to exactly factor * N points. The originals come first in
// input order; each inserted point is the midpoint of (p_i, j-th nearest
// neighbor of p_i), j cycling 1..neighbors per insertion round, until the
// target count is met. Neighbor ranks are taken over the original points and
// distance ties resolve to the lower index. Inserted intensity is the mean of
// the two endpoints when present.
PointCloud upsample(const PointCloud& cloud, int factor, int neighbors);

inline constexpr int kDefaultUpsampleFactor = 2;
inline constexpr int kDefaultUpsampleNeighbors = 4;
inline constexpr double kDefaultVoxelSize = 0.05;
inline constexpr std::size_t kDefaultMaxPoints = 80000;

// One point per occupied voxel at the member centroid; the label is that of
// the member nearest the centroid (ties by lower index). Output voxels appear
// in order of first membership.
LabeledCloud voxel_downsample(const LabeledCloud& cloud, double voxel_size = kDefaultVoxelSize);

// Seeded uniform subsample to at most max_points, preserving input order.
LabeledCloud cap_points(const LabeledCloud& cloud, std::size_t max_points, std::uint64_t seed);

}  // namespace pct
