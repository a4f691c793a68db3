#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pct/cloud.hpp"
#include "pct/error.hpp"

namespace pct::nn {

// Dense value grid. The gradient, when present, mirrors the value shape.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> values;
    std::optional<std::vector<double>> gradient;

    Tensor() = default;
    Tensor(std::vector<int> s, std::vector<double> v) : shape(std::move(s)), values(std::move(v)) {}

    static Tensor zeros(std::vector<int> shape);
    std::size_t count() const;
    void validate() const;
};

std::size_t shape_count(const std::vector<int>& shape);
std::string shape_str(const std::vector<int>& shape);

// One vertex of the reverse-mode graph. Gradients accumulate into `grad`
// during backward(); `backward_fn` pushes them to the parents.
struct Node {
    std::vector<int> shape;
    std::vector<double> val;
    std::vector<double> grad;
    bool requires_grad = false;
    std::vector<std::shared_ptr<Node>> parents;
    std::function<void(Node&)> backward_fn;

    std::size_t count() const { return val.size(); }
};

using Var = std::shared_ptr<Node>;

// Leaf that participates in differentiation.
Var leaf(std::vector<int> shape, std::vector<double> values);
// Leaf excluded from differentiation.
Var constant(std::vector<int> shape, std::vector<double> values);
// Copy of `v`'s values with the graph history cut.
Var detach(const Var& v);

// Reverse-mode sweep from a scalar node.
void backward(const Var& loss);

// Throws NumericError naming `where` when any entry is non-finite.
void check_finite(const Var& v, const std::string& where);

// ---- elementwise ----
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var scale(const Var& a, double s);
Var add_scalar(const Var& a, double s);
Var square(const Var& a);
Var leaky_relu(const Var& a, double negative_slope = 0.2);
Var sigmoid(const Var& a);
Var tanh_act(const Var& a);
// log(1 + e^x), overflow-safe; -log(sigmoid(x)) == softplus(-x).
Var softplus(const Var& a);

// Forward thresholds at `threshold` to {0,1}; backward passes gradients
// through unchanged (straight-through estimator for the occupancy channel).
Var hard_threshold_ste(const Var& a, double threshold);

// ---- matrix / pooling ----
Var matmul(const Var& a, const Var& b);             // [m,k] x [k,n]
Var add_rowvec(const Var& a, const Var& bias);      // [m,n] + [1,n]
Var mean_rows(const Var& a);                        // [m,n] -> [1,n]
Var tile_rows(const Var& a, int m);                 // [1,n] -> [m,n]
Var concat_cols(const Var& a, const Var& b);        // [m,n1],[m,n2] -> [m,n1+n2]
Var mean_all(const Var& a);                         // -> [1]

// ---- 2D convolution (tensors are [C,H,W]) ----
Var conv2d(const Var& input, const Var& weight, const Var& bias, int stride, int pad);
Var conv_transpose2d(const Var& input, const Var& weight, const Var& bias, int stride, int pad);

// ---- loss heads ----
// sum_i ||target_i - pred_{assignment[i]}||_2 with the assignment frozen.
Var matched_l2(const Var& pred, const std::vector<Vec3>& target,
               const std::vector<std::size_t>& assignment);
// n * sum_ij plan_ij * ||target_i - pred_j||_2 with the plan frozen.
Var plan_weighted_l2(const Var& pred, const std::vector<Vec3>& target,
                     const std::vector<double>& plan);
// RMS of (pred - target) over mask; empty mask yields 0.
Var masked_rms(const Var& pred, const std::vector<double>& target,
               const std::vector<char>& mask);

}  // namespace pct::nn
