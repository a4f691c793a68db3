#include "pct/cloud_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace pct {
namespace {

static_assert(std::endian::native == std::endian::little,
              "scan/label record layout assumes a little-endian host");

float read_f32(const std::uint8_t* p) {
    float v;
    std::memcpy(&v, p, 4);
    return v;
}

void append_f32(std::vector<std::uint8_t>& out, float v) {
    std::uint8_t b[4];
    std::memcpy(b, &v, 4);
    out.insert(out.end(), b, b + 4);
}

std::uint32_t read_u32(const std::uint8_t* p) {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return v;
}

}  // namespace

PointCloud read_point_bin(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() % 16 != 0) {
        throw IoError("malformed scan record: byte length " + std::to_string(bytes.size()) +
                      " is not a multiple of 16");
    }
    const std::size_t n = bytes.size() / 16;
    PointCloud cloud;
    cloud.points.resize(n);
    cloud.intensity.emplace(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t* rec = bytes.data() + 16 * i;
        const float x = read_f32(rec + 0);
        const float y = read_f32(rec + 4);
        const float z = read_f32(rec + 8);
        const float in = read_f32(rec + 12);
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
            throw IoError("non-finite coordinate at point " + std::to_string(i));
        }
        cloud.points[i] = {x, y, z};
        (*cloud.intensity)[i] = in;
    }
    return cloud;
}

std::vector<std::uint8_t> write_point_bin(const PointCloud& cloud) {
    std::vector<std::uint8_t> out;
    out.reserve(cloud.size() * 16);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.points[i];
        append_f32(out, static_cast<float>(p.x));
        append_f32(out, static_cast<float>(p.y));
        append_f32(out, static_cast<float>(p.z));
        append_f32(out, cloud.intensity ? static_cast<float>((*cloud.intensity)[i]) : 0.0f);
    }
    return out;
}

std::vector<std::uint32_t> read_labels(const std::vector<std::uint8_t>& bytes,
                                       const SemanticClassMap& map,
                                       std::size_t expected_count) {
    if (bytes.size() % 4 != 0) {
        throw IoError("malformed label record: byte length " + std::to_string(bytes.size()) +
                      " is not a multiple of 4");
    }
    const std::size_t n = bytes.size() / 4;
    if (n != expected_count) {
        throw IoError("label count mismatch: decoded " + std::to_string(n) + ", expected " +
                      std::to_string(expected_count));
    }
    std::vector<std::uint32_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t raw = read_u32(bytes.data() + 4 * i);
        const std::uint32_t semantic = raw & 0xFFFFu;
        labels[i] = map.contains(semantic) ? semantic : map.ignore_id;
    }
    return labels;
}

std::vector<std::uint8_t> write_labels(const std::vector<std::uint32_t>& labels) {
    std::vector<std::uint8_t> out;
    out.reserve(labels.size() * 4);
    for (std::uint32_t v : labels) {
        std::uint8_t b[4];
        std::memcpy(b, &v, 4);
        out.insert(out.end(), b, b + 4);
    }
    return out;
}

std::string export_ply(const LabeledCloud& cloud, const SemanticClassMap& map) {
    cloud.validate();
    std::string out;
    out += "ply\n";
    out += "format ascii 1.0\n";
    out += "element vertex " + std::to_string(cloud.size()) + "\n";
    out += "property float x\n";
    out += "property float y\n";
    out += "property float z\n";
    out += "property uchar red\n";
    out += "property uchar green\n";
    out += "property uchar blue\n";
    out += "end_header\n";
    char row[128];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.cloud.points[i];
        const std::uint32_t label = cloud.labels[i];
        const ClassEntry& e = map.contains(label) ? map.entry(label) : map.entry(map.ignore_id);
        std::snprintf(row, sizeof(row), "%.6f %.6f %.6f %u %u %u\n", p.x, p.y, p.z,
                      unsigned(e.color[0]), unsigned(e.color[1]), unsigned(e.color[2]));
        out += row;
    }
    return out;
}

SemanticClassMap parse_class_map(const std::string& text) {
    SemanticClassMap map;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream fields(line);
        long long id = 0;
        std::string name;
        int r = 0, g = 0, b = 0;
        if (!(fields >> id)) continue;  // blank line
        if (!(fields >> name >> r >> g >> b)) {
            throw ParseError("expected `id name r g b`", line_no);
        }
        if (id < 0) throw ParseError("negative class id", line_no);
        if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) {
            throw ParseError("color component out of [0,255]", line_no);
        }
        map.entries.push_back({static_cast<std::uint32_t>(id), name,
                               {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                static_cast<std::uint8_t>(b)}});
    }
    if (!map.contains(map.ignore_id)) {
        map.entries.insert(map.entries.begin(), {map.ignore_id, "unlabeled", {0, 0, 0}});
    }
    map.validate();
    return map;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

}  // namespace pct
