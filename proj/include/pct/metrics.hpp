#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pct/cloud.hpp"
#include "pct/projection.hpp"

namespace pct {

// Minimum-cost bijection between two equal-size clouds (Earth Mover's
// Distance under Euclidean point distance).
struct Matching {
    std::vector<std::size_t> assignment;  // index into b for each point of a
    double total_cost = 0.0;              // sum of matched Euclidean distances

    void validate(const PointCloud& a, const PointCloud& b) const;
};

inline constexpr std::size_t kEmdExactLimit = 512;

// Exact EMD via an assignment solver; |a| = |b| <= kEmdExactLimit.
Matching emd_exact(const PointCloud& a, const PointCloud& b);

struct SinkhornResult {
    double cost = 0.0;  // sum-scale transport cost, comparable to emd_exact
    bool converged = false;
    int iterations_used = 0;
};

// Entropic-regularized transport cost with uniform marginals, log-domain
// stabilized. Drifts toward the exact cost as epsilon decreases.
SinkhornResult emd_sinkhorn(const PointCloud& a, const PointCloud& b, double epsilon,
                            int iterations);

// Entropic transport plan (n x n row-major, sums to 1). Exposed for the
// training path, which differentiates the linear cost term under a frozen plan.
std::vector<double> sinkhorn_plan(const PointCloud& a, const PointCloud& b, double epsilon,
                                  int iterations);

// Symmetric mean-of-squared nearest-neighbor distance.
double chamfer(const PointCloud& a, const PointCloud& b);

// RMS depth difference over pixels occupied in both images; empty overlap
// yields 0 by definition.
double geometry_consistency(const RangeImage& a, const RangeImage& b);

// Row/column-indexed by class-map entry order; ignored ground truth is never
// accumulated.
struct ConfusionMatrix {
    std::size_t class_count = 0;
    std::vector<std::uint64_t> counts;  // class_count x class_count, rows = gt

    explicit ConfusionMatrix(std::size_t classes)
        : class_count(classes), counts(classes * classes, 0) {}

    std::uint64_t& at(std::size_t gt, std::size_t pred) { return counts[gt * class_count + pred]; }
    std::uint64_t at(std::size_t gt, std::size_t pred) const {
        return counts[gt * class_count + pred];
    }
    std::uint64_t total() const;

    void accumulate(const std::vector<std::uint32_t>& ground_truth,
                    const std::vector<std::uint32_t>& prediction, const SemanticClassMap& map);
};

struct IouReport {
    std::vector<double> per_class;  // NaN for classes with zero union
    std::vector<bool> included;
    double mean = 0.0;
};

// Mean of per-class IoU values (e.g. rows of a published table).
double mean_iou(const std::vector<double>& per_class);

// IoU_c = TP / (TP + FP + FN); zero-union classes are excluded from the mean.
IouReport miou(const ConfusionMatrix& cm);

// Per-class table (name, TP, FP, FN, IoU) with the mean on the final row.
std::string format_iou_report(const ConfusionMatrix& cm, const SemanticClassMap& map);

}  // namespace pct
