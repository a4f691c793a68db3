#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pct/cloud.hpp"

namespace pct {

// KITTI-style scan records: consecutive float32 LE quadruples x, y, z, intensity.
PointCloud read_point_bin(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> write_point_bin(const PointCloud& cloud);

// Label records: uint32 LE per point; lower 16 bits semantic, upper 16 bits
// instance (discarded). Ids absent from the map collapse to map.ignore_id.
std::vector<std::uint32_t> read_labels(const std::vector<std::uint8_t>& bytes,
                                       const SemanticClassMap& map,
                                       std::size_t expected_count);
std::vector<std::uint8_t> write_labels(const std::vector<std::uint32_t>& labels);

// ASCII PLY with per-vertex position and class-map color.
std::string export_ply(const LabeledCloud& cloud, const SemanticClassMap& map);

// Class map text: one `id name r g b` entry per line, `#` comments.
SemanticClassMap parse_class_map(const std::string& text);

// Whole-file helpers used by the CLI and tests.
std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pct
