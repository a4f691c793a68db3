#include "pct/projection.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

namespace pct {

void BeamModel::validate() const {
    if (rows < 1) throw InvalidArgument("beam rows must be >= 1");
    if (cols < 1) throw InvalidArgument("beam cols must be >= 1");
    if (!(fov_up > fov_down)) throw InvalidArgument("fov_up must exceed fov_down");
    if (!(max_range > 0.0)) throw InvalidArgument("max_range must be positive");
}

std::size_t RangeImage::occupied_count() const {
    std::size_t n = 0;
    for (double d : depth) n += d > 0.0 ? 1 : 0;
    return n;
}

void RangeImage::validate(const BeamModel& beam) const {
    const std::size_t total = static_cast<std::size_t>(rows) * cols;
    if (depth.size() != total || index_map.size() != total) {
        throw ShapeError("range image grid size does not match rows*cols");
    }
    for (std::size_t i = 0; i < total; ++i) {
        if (depth[i] < 0.0 || depth[i] > beam.max_range) {
            throw InvalidArgument("depth out of (0, max_range] at pixel " + std::to_string(i));
        }
        if (index_map[i] >= 0 && depth[i] <= 0.0) {
            throw InvalidArgument("index map set on empty pixel " + std::to_string(i));
        }
    }
}

bool project_pixel(const Vec3& point, const BeamModel& beam, int& row, int& col) {
    const double r = norm(point);
    if (!(r > 0.0) || r > beam.max_range) return false;
    const double yaw = std::atan2(point.y, point.x);
    const double pitch = std::asin(point.z / r);
    col = static_cast<int>(std::floor(0.5 * (1.0 - yaw / M_PI) * beam.cols));
    col = std::min(std::max(col, 0), beam.cols - 1);
    row = static_cast<int>(std::floor((1.0 - (pitch - beam.fov_down) / beam.fov_span()) * beam.rows));
    return row >= 0 && row < beam.rows;
}

RangeImage project(const PointCloud& cloud, const BeamModel& beam) {
    beam.validate();
    if (cloud.empty()) throw InvalidArgument("cannot project an empty cloud");
    cloud.validate();

    RangeImage image;
    image.rows = beam.rows;
    image.cols = beam.cols;
    const std::size_t total = static_cast<std::size_t>(beam.rows) * beam.cols;
    image.depth.assign(total, 0.0);
    image.index_map.assign(total, -1);

    for (std::size_t i = 0; i < cloud.size(); ++i) {
        int row = 0, col = 0;
        if (!project_pixel(cloud.points[i], beam, row, col)) {
            ++image.out_of_fov_count;
            continue;
        }
        const double r = norm(cloud.points[i]);
        const std::size_t px = image.pixel(row, col);
        // Nearer return wins; exact ties keep the lower point index, which the
        // scan order already guarantees.
        if (image.index_map[px] < 0 || r < image.depth[px]) {
            image.depth[px] = r;
            image.index_map[px] = static_cast<std::int32_t>(i);
        }
    }
    return image;
}

PointCloud backproject(const RangeImage& image, const BeamModel& beam) {
    PointCloud cloud;
    for (int row = 0; row < image.rows; ++row) {
        for (int col = 0; col < image.cols; ++col) {
            const double d = image.depth[image.pixel(row, col)];
            if (d <= 0.0) continue;
            const double yaw = beam.pixel_yaw(col);
            const double pitch = beam.pixel_pitch(row);
            cloud.points.push_back({d * std::cos(pitch) * std::cos(yaw),
                                    d * std::cos(pitch) * std::sin(yaw),
                                    d * std::sin(pitch)});
        }
    }
    return cloud;
}

std::string save_range_image(const RangeImage& image, const BeamModel& beam) {
    std::ostringstream out;
    out << "PCTRIMG 1\n";
    out << "rows " << image.rows << "\n";
    out << "cols " << image.cols << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "fov_up %.17g\n", beam.fov_up);
    out << buf;
    std::snprintf(buf, sizeof(buf), "fov_down %.17g\n", beam.fov_down);
    out << buf;
    std::snprintf(buf, sizeof(buf), "max_range %.17g\n", beam.max_range);
    out << buf;
    out << "DATA\n";
    std::string result = out.str();
    result.reserve(result.size() + image.depth.size() * 4);
    for (double d : image.depth) {
        const float f = static_cast<float>(d);
        char b[4];
        std::memcpy(b, &f, 4);
        result.append(b, 4);
    }
    return result;
}

void load_range_image(const std::string& bytes, RangeImage& image, BeamModel& beam) {
    std::size_t pos = 0;
    auto next_line = [&]() {
        const std::size_t end = bytes.find('\n', pos);
        if (end == std::string::npos) throw IoError("truncated range image header");
        std::string line = bytes.substr(pos, end - pos);
        pos = end + 1;
        return line;
    };
    if (next_line() != "PCTRIMG 1") throw IoError("not a range image file");
    image = RangeImage{};
    beam = BeamModel{};
    for (;;) {
        const std::string line = next_line();
        if (line == "DATA") break;
        std::istringstream fields(line);
        std::string key;
        fields >> key;
        if (key == "rows") fields >> image.rows;
        else if (key == "cols") fields >> image.cols;
        else if (key == "fov_up") fields >> beam.fov_up;
        else if (key == "fov_down") fields >> beam.fov_down;
        else if (key == "max_range") fields >> beam.max_range;
        else throw IoError("unknown range image header key: " + key);
        if (fields.fail()) throw IoError("bad range image header value for " + key);
    }
    beam.rows = image.rows;
    beam.cols = image.cols;
    beam.validate();
    const std::size_t total = static_cast<std::size_t>(image.rows) * image.cols;
    if (bytes.size() - pos != total * 4) {
        throw IoError("range image payload size mismatch: expected " + std::to_string(total * 4) +
                      " bytes, got " + std::to_string(bytes.size() - pos));
    }
    image.depth.resize(total);
    image.index_map.assign(total, -1);
    for (std::size_t i = 0; i < total; ++i) {
        float f;
        std::memcpy(&f, bytes.data() + pos + 4 * i, 4);
        image.depth[i] = f;
    }
}

}  // namespace pct
