#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "pct/cloud.hpp"

namespace pct {

// Static 3D kd-tree. Distance ties resolve to the lower point index so every
// query is a pure function of the input cloud.
class KdTree {
public:
    struct Hit {
        std::size_t index = 0;
        double dist_sq = std::numeric_limits<double>::infinity();
    };

    explicit KdTree(const std::vector<Vec3>& points) : points_(points) {
        indices_.resize(points_.size());
        for (std::size_t i = 0; i < indices_.size(); ++i) indices_[i] = i;
        nodes_.reserve(points_.size());
        if (!points_.empty()) root_ = build(0, points_.size(), 0);
    }

    std::size_t size() const { return points_.size(); }

    // Nearest neighbor; pass exclude to skip one index (self-queries).
    Hit nearest(const Vec3& query, std::size_t exclude = npos) const {
        Hit best;
        if (root_ >= 0) search_one(root_, query, exclude, best);
        return best;
    }

    // k nearest neighbors ordered by (distance, index) ascending.
    std::vector<Hit> knn(const Vec3& query, std::size_t k, std::size_t exclude = npos) const {
        std::vector<Hit> heap;  // max-heap on (dist_sq, index)
        if (root_ >= 0 && k > 0) search_k(root_, query, exclude, k, heap);
        std::sort(heap.begin(), heap.end(), [](const Hit& a, const Hit& b) {
            return a.dist_sq != b.dist_sq ? a.dist_sq < b.dist_sq : a.index < b.index;
        });
        return heap;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    struct Node {
        std::size_t point = 0;
        int left = -1;
        int right = -1;
        int axis = 0;
    };

    static double coord(const Vec3& p, int axis) {
        return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
    }

    int build(std::size_t begin, std::size_t end, int depth) {
        if (begin >= end) return -1;
        const int axis = depth % 3;
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(indices_.begin() + begin, indices_.begin() + mid, indices_.begin() + end,
                         [&](std::size_t a, std::size_t b) {
                             const double ca = coord(points_[a], axis);
                             const double cb = coord(points_[b], axis);
                             return ca != cb ? ca < cb : a < b;
                         });
        Node node;
        node.point = indices_[mid];
        node.axis = axis;
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(node);
        const int left = build(begin, mid, depth + 1);
        const int right = build(mid + 1, end, depth + 1);
        nodes_[id].left = left;
        nodes_[id].right = right;
        return id;
    }

    static bool better(double dist_sq, std::size_t index, const Hit& than) {
        return dist_sq != than.dist_sq ? dist_sq < than.dist_sq : index < than.index;
    }

    void search_one(int node_id, const Vec3& query, std::size_t exclude, Hit& best) const {
        const Node& node = nodes_[node_id];
        const Vec3& p = points_[node.point];
        if (node.point != exclude) {
            const Vec3 d = p - query;
            const double dist_sq = dot(d, d);
            if (better(dist_sq, node.point, best)) best = {node.point, dist_sq};
        }
        const double delta = coord(query, node.axis) - coord(p, node.axis);
        const int near_child = delta < 0 ? node.left : node.right;
        const int far_child = delta < 0 ? node.right : node.left;
        if (near_child >= 0) search_one(near_child, query, exclude, best);
        if (far_child >= 0 && delta * delta <= best.dist_sq) {
            search_one(far_child, query, exclude, best);
        }
    }

    // Heap comparator: the worst candidate (largest distance, then largest
    // index) sits on top so ties evict higher indices first.
    static bool heap_less(const Hit& a, const Hit& b) {
        return a.dist_sq != b.dist_sq ? a.dist_sq < b.dist_sq : a.index < b.index;
    }

    void search_k(int node_id, const Vec3& query, std::size_t exclude, std::size_t k,
                  std::vector<Hit>& heap) const {
        const Node& node = nodes_[node_id];
        const Vec3& p = points_[node.point];
        if (node.point != exclude) {
            const Vec3 d = p - query;
            const double dist_sq = dot(d, d);
            const Hit cand{node.point, dist_sq};
            if (heap.size() < k) {
                heap.push_back(cand);
                std::push_heap(heap.begin(), heap.end(), heap_less);
            } else if (heap_less(cand, heap.front())) {
                std::pop_heap(heap.begin(), heap.end(), heap_less);
                heap.back() = cand;
                std::push_heap(heap.begin(), heap.end(), heap_less);
            }
        }
        const double delta = coord(query, node.axis) - coord(p, node.axis);
        const int near_child = delta < 0 ? node.left : node.right;
        const int far_child = delta < 0 ? node.right : node.left;
        if (near_child >= 0) search_k(near_child, query, exclude, k, heap);
        if (far_child >= 0 && (heap.size() < k || delta * delta <= heap.front().dist_sq)) {
            search_k(far_child, query, exclude, k, heap);
        }
    }

    std::vector<Vec3> points_;
    std::vector<std::size_t> indices_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace pct
