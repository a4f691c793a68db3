#include "pct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pct/hungarian.hpp"
#include "pct/kdtree.hpp"

namespace pct {

void Matching::validate(const PointCloud& a, const PointCloud& b) const {
    if (a.size() != b.size() || assignment.size() != a.size()) {
        throw InvalidArgument("matching size mismatch");
    }
    std::vector<char> used(b.size(), 0);
    double cost = 0.0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const std::size_t j = assignment[i];
        if (j >= b.size() || used[j]) throw InvalidArgument("assignment is not a bijection");
        used[j] = 1;
        cost += distance(a.points[i], b.points[j]);
    }
    if (std::abs(cost - total_cost) > 1e-9 * std::max(1.0, std::abs(cost))) {
        throw InvalidArgument("matching total_cost inconsistent with assignment");
    }
}

Matching emd_exact(const PointCloud& a, const PointCloud& b) {
    if (a.size() != b.size()) {
        throw InvalidArgument("emd_exact requires equal sizes, got " + std::to_string(a.size()) +
                              " and " + std::to_string(b.size()));
    }
    if (a.empty()) throw InvalidArgument("emd_exact requires non-empty clouds");
    if (a.size() > kEmdExactLimit) {
        throw InvalidArgument("emd_exact limited to " + std::to_string(kEmdExactLimit) +
                              " points; use emd_sinkhorn for larger clouds");
    }
    const int n = static_cast<int>(a.size());
    std::vector<double> cost(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cost[static_cast<std::size_t>(i) * n + j] = distance(a.points[i], b.points[j]);
        }
    }
    const std::vector<int> row_to_col = solve_assignment(cost, n);

    Matching m;
    m.assignment.resize(n);
    for (int i = 0; i < n; ++i) {
        m.assignment[i] = static_cast<std::size_t>(row_to_col[i]);
        m.total_cost += cost[static_cast<std::size_t>(i) * n + row_to_col[i]];
    }
    return m;
}

namespace {

double log_sum_exp(const double* values, std::size_t n) {
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) hi = std::max(hi, values[i]);
    if (!std::isfinite(hi)) return hi;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::exp(values[i] - hi);
    return hi + std::log(sum);
}

struct SinkhornState {
    std::size_t n = 0;
    std::vector<double> cost;  // n x n Euclidean distances
    std::vector<double> f, g;  // potentials
    bool converged = false;
    int iterations_used = 0;
};

SinkhornState run_sinkhorn(const PointCloud& a, const PointCloud& b, double epsilon,
                           int iterations) {
    if (a.size() != b.size()) throw InvalidArgument("emd_sinkhorn requires equal sizes");
    if (a.empty()) throw InvalidArgument("emd_sinkhorn requires non-empty clouds");
    if (!(epsilon > 0.0)) throw InvalidArgument("sinkhorn epsilon must be positive");
    if (iterations < 1) throw InvalidArgument("sinkhorn iterations must be >= 1");

    SinkhornState s;
    s.n = a.size();
    const std::size_t n = s.n;
    s.cost.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s.cost[i * n + j] = distance(a.points[i], b.points[j]);
        }
    }

    const double log_marginal = -std::log(static_cast<double>(n));
    s.f.assign(n, 0.0);
    s.g.assign(n, 0.0);
    std::vector<double> scratch(n);
    constexpr double kTol = 1e-9;

    for (int it = 0; it < iterations; ++it) {
        s.iterations_used = it + 1;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) scratch[j] = (s.g[j] - s.cost[i * n + j]) / epsilon;
            s.f[i] = epsilon * (log_marginal - log_sum_exp(scratch.data(), n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) scratch[i] = (s.f[i] - s.cost[i * n + j]) / epsilon;
            s.g[j] = epsilon * (log_marginal - log_sum_exp(scratch.data(), n));
        }
        // Row marginals are exact right after the f update; check columns.
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                scratch[j] = (s.f[i] + s.g[j] - s.cost[i * n + j]) / epsilon;
            }
            err = std::max(err, std::abs(std::exp(log_sum_exp(scratch.data(), n)) -
                                         1.0 / static_cast<double>(n)) *
                                    static_cast<double>(n));
        }
        if (err < kTol) {
            s.converged = true;
            break;
        }
    }
    return s;
}

}  // namespace

SinkhornResult emd_sinkhorn(const PointCloud& a, const PointCloud& b, double epsilon,
                            int iterations) {
    const SinkhornState s = run_sinkhorn(a, b, epsilon, iterations);
    const std::size_t n = s.n;
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double p = std::exp((s.f[i] + s.g[j] - s.cost[i * n + j]) / epsilon);
            cost += p * s.cost[i * n + j];
        }
    }
    // Plan mass is 1; rescale so the value is comparable to the exact sum.
    return {cost * static_cast<double>(n), s.converged, s.iterations_used};
}

std::vector<double> sinkhorn_plan(const PointCloud& a, const PointCloud& b, double epsilon,
                                  int iterations) {
    const SinkhornState s = run_sinkhorn(a, b, epsilon, iterations);
    const std::size_t n = s.n;
    std::vector<double> plan(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            plan[i * n + j] = std::exp((s.f[i] + s.g[j] - s.cost[i * n + j]) / epsilon);
        }
    }
    return plan;
}

double chamfer(const PointCloud& a, const PointCloud& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("chamfer requires non-empty clouds");
    const KdTree tree_a(a.points);
    const KdTree tree_b(b.points);
    double sum_ab = 0.0;
    for (const Vec3& p : a.points) sum_ab += tree_b.nearest(p).dist_sq;
    double sum_ba = 0.0;
    for (const Vec3& p : b.points) sum_ba += tree_a.nearest(p).dist_sq;
    return sum_ab / static_cast<double>(a.size()) + sum_ba / static_cast<double>(b.size());
}

double geometry_consistency(const RangeImage& a, const RangeImage& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw ShapeError("geometry_consistency requires equal image dimensions");
    }
    double sum_sq = 0.0;
    std::size_t overlap = 0;
    for (std::size_t i = 0; i < a.depth.size(); ++i) {
        if (a.depth[i] > 0.0 && b.depth[i] > 0.0) {
            const double d = a.depth[i] - b.depth[i];
            sum_sq += d * d;
            ++overlap;
        }
    }
    if (overlap == 0) return 0.0;
    return std::sqrt(sum_sq / static_cast<double>(overlap));
}

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t t = 0;
    for (std::uint64_t c : counts) t += c;
    return t;
}

void ConfusionMatrix::accumulate(const std::vector<std::uint32_t>& ground_truth,
                                 const std::vector<std::uint32_t>& prediction,
                                 const SemanticClassMap& map) {
    if (ground_truth.size() != prediction.size()) {
        throw InvalidArgument("ground truth and prediction counts differ");
    }
    if (class_count != map.class_count()) {
        throw InvalidArgument("confusion matrix size does not match class map");
    }
    for (std::size_t i = 0; i < ground_truth.size(); ++i) {
        if (ground_truth[i] == map.ignore_id) continue;
        const std::size_t g = map.index_of(ground_truth[i]);
        const std::size_t p = map.index_of(prediction[i]);
        ++at(g, p);
    }
}

double mean_iou(const std::vector<double>& per_class) {
    if (per_class.empty()) throw InvalidArgument("mean_iou over empty class list");
    double sum = 0.0;
    for (double v : per_class) sum += v;
    return sum / static_cast<double>(per_class.size());
}

IouReport miou(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw InvalidArgument("mIoU undefined on an all-zero confusion matrix");
    IouReport report;
    report.per_class.assign(cm.class_count, std::numeric_limits<double>::quiet_NaN());
    report.included.assign(cm.class_count, false);
    std::vector<double> included_values;
    for (std::size_t c = 0; c < cm.class_count; ++c) {
        const std::uint64_t tp = cm.at(c, c);
        std::uint64_t fp = 0, fn = 0;
        for (std::size_t k = 0; k < cm.class_count; ++k) {
            if (k == c) continue;
            fp += cm.at(k, c);
            fn += cm.at(c, k);
        }
        const std::uint64_t union_count = tp + fp + fn;
        if (union_count == 0) continue;
        report.per_class[c] = static_cast<double>(tp) / static_cast<double>(union_count);
        report.included[c] = true;
        included_values.push_back(report.per_class[c]);
    }
    report.mean = mean_iou(included_values);
    return report;
}

std::string format_iou_report(const ConfusionMatrix& cm, const SemanticClassMap& map) {
    const IouReport report = miou(cm);
    std::string out = "class,tp,fp,fn,iou\n";
    char row[160];
    for (std::size_t c = 0; c < cm.class_count; ++c) {
        const std::uint64_t tp = cm.at(c, c);
        std::uint64_t fp = 0, fn = 0;
        for (std::size_t k = 0; k < cm.class_count; ++k) {
            if (k == c) continue;
            fp += cm.at(k, c);
            fn += cm.at(c, k);
        }
        if (!report.included[c]) {
            std::snprintf(row, sizeof(row), "%s,%llu,%llu,%llu,-\n", map.entries[c].name.c_str(),
                          (unsigned long long)tp, (unsigned long long)fp, (unsigned long long)fn);
        } else {
            std::snprintf(row, sizeof(row), "%s,%llu,%llu,%llu,%.4f\n", map.entries[c].name.c_str(),
                          (unsigned long long)tp, (unsigned long long)fp, (unsigned long long)fn,
                          report.per_class[c]);
        }
        out += row;
    }
    std::snprintf(row, sizeof(row), "mean,,,,%.4f\n", report.mean);
    out += row;
    return out;
}

}  // namespace pct
