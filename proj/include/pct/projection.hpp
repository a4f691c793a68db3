#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pct/cloud.hpp"

namespace pct {

// Sensor geometry shared by projection and ray casting. Defaults approximate
// a 64-beam highway sensor.
struct BeamModel {
    int rows = 64;
    int cols = 1024;
    double fov_up = 3.0 * M_PI / 180.0;
    double fov_down = -25.0 * M_PI / 180.0;
    double max_range = 120.0;

    double fov_span() const { return fov_up - fov_down; }
    void validate() const;

    // Pixel-center beam direction, also used by the simulator's rays.
    double pixel_yaw(int col) const { return M_PI * (1.0 - 2.0 * (col + 0.5) / cols); }
    double pixel_pitch(int row) const {
        return fov_down + (1.0 - (row + 0.5) / rows) * fov_span();
    }
};

// H x W depth grid; depth 0 means empty. index_map holds the winning source
// point index per occupied pixel, -1 elsewhere.
struct RangeImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> depth;         // row-major, meters
    std::vector<std::int32_t> index_map;
    std::size_t out_of_fov_count = 0;

    std::size_t pixel(int row, int col) const {
        return static_cast<std::size_t>(row) * cols + col;
    }
    bool occupied(int row, int col) const { return depth[pixel(row, col)] > 0.0; }
    std::size_t occupied_count() const;
    void validate(const BeamModel& beam) const;
};

// Spherical projection T. Points outside the vertical FOV or beyond max_range
// are excluded and counted; pixel collisions keep the smaller range (ties by
// lower point index).
RangeImage project(const PointCloud& cloud, const BeamModel& beam);

// Inverse of T at pixel-center angles, row-major order.
PointCloud backproject(const RangeImage& image, const BeamModel& beam);

// Row/col of a point under the projection formula; false when the point falls
// outside the image or beyond max_range.
bool project_pixel(const Vec3& point, const BeamModel& beam, int& row, int& col);

// Flat binary float32 LE grid with a structured-text header.
std::string save_range_image(const RangeImage& image, const BeamModel& beam);
void load_range_image(const std::string& bytes, RangeImage& image, BeamModel& beam);

}  // namespace pct
