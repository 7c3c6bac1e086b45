#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ccluster/geo.hpp"
#include "ccluster/kmeans.hpp"
#include "ccluster/order.hpp"
#include "ccluster/rng.hpp"

namespace ccluster {

enum class SplitMethod { kmeans, volume_bisection, none };

struct BranchSummary {
    std::vector<std::string> members;  // order ids
    double total_vol = 0.0;
    double total_weight = 0.0;
    Point2D centroid{};  // mean member position in the clustering plane
};

// One node of the recursive bisection tree. A child exists only under the
// branch whose load still exceeds the cap; in-cap branches stay as leaves of
// this node and are collected by traverse_leaves.
struct ClusterNode {
    std::vector<Order> data;
    BranchSummary branch[2];
    std::vector<Order> branch_orders[2];
    std::unique_ptr<ClusterNode> left;
    std::unique_ptr<ClusterNode> right;
    SplitMethod split_method = SplitMethod::none;
};

// A numbered leaf cluster, ready for one vehicle.
struct TerritoryCluster {
    std::size_t cluster_id = 0;  // 1-based, traversal order
    std::vector<Order> members;
    double total_vol = 0.0;
    double total_weight = 0.0;
    Point2D centroid{};
    double centroid_lon = 0.0;
    double centroid_lat = 0.0;
    bool from_fallback = false;
    bool over_cap = false;  // forced singleton that exceeds the cap
};

struct TreeConfig {
    double vol_cap = 2.8;
    double weight_cap = 2.0;
    bool strict_weight = false;  // also recurse on branch weight > weight_cap
    std::uint64_t seed = 0;
    std::size_t max_iterations = 300;
    double rel_tolerance = 1e-4;
    MetricSpace metric{};
};

struct TreeStats {
    std::size_t fallback_splits = 0;
    std::size_t node_count = 0;
    std::size_t max_depth = 0;
};

namespace detail {

inline BranchSummary summarize_branch(const std::vector<Order>& orders,
                                      const MetricSpace& metric) {
    BranchSummary s;
    s.members.reserve(orders.size());
    double sx = 0.0, sy = 0.0;
    for (const Order& o : orders) {
        s.members.push_back(o.id);
        s.total_vol += o.vol_cbm;
        s.total_weight += o.weight_ton;
        const Point2D p = metric.project(o);
        sx += p.x;
        sy += p.y;
    }
    if (!orders.empty()) {
        s.centroid = {sx / static_cast<double>(orders.size()),
                      sy / static_cast<double>(orders.size())};
    }
    return s;
}

}  // namespace detail

// Splits orders geographically with 2-means. Branch index equals the k-means
// label. One branch may come back empty on inseparable geometry; the caller
// falls back to volume bisection in that case.
inline KMeansResult split_node(const std::vector<Order>& orders,
                               const MetricSpace& metric,
                               const KMeansConfig& cfg) {
    std::vector<Point2D> points;
    points.reserve(orders.size());
    for (const Order& o : orders) points.push_back(metric.project(o));
    return lloyd(points, cfg);
}

// Geometry-free split: orders sorted by descending volume (id ascending on
// ties) go one at a time to the lighter branch. Guarantees two non-empty
// branches, so the recursion always shrinks.
inline void volume_bisection_fallback(const std::vector<Order>& orders,
                                      std::vector<Order>& branch0,
                                      std::vector<Order>& branch1) {
    std::vector<const Order*> sorted;
    sorted.reserve(orders.size());
    for (const Order& o : orders) sorted.push_back(&o);
    std::sort(sorted.begin(), sorted.end(), [](const Order* a, const Order* b) {
        if (a->vol_cbm != b->vol_cbm) return a->vol_cbm > b->vol_cbm;
        return a->id < b->id;
    });
    double vol0 = 0.0, vol1 = 0.0;
    for (const Order* o : sorted) {
        bool to_first;
        if (vol0 != vol1)
            to_first = vol0 < vol1;
        else
            to_first = branch0.size() <= branch1.size();
        if (to_first) {
            branch0.push_back(*o);
            vol0 += o->vol_cbm;
        } else {
            branch1.push_back(*o);
            vol1 += o->vol_cbm;
        }
    }
}

namespace detail {

inline bool branch_over_cap(const BranchSummary& b, const TreeConfig& cfg) {
    if (b.total_vol > cfg.vol_cap) return true;
    if (cfg.strict_weight && b.total_weight > cfg.weight_cap) return true;
    return false;
}

inline std::unique_ptr<ClusterNode> build_node(std::vector<Order> orders,
                                               const TreeConfig& cfg,
                                               std::uint64_t node_seed,
                                               std::size_t depth,
                                               TreeStats& stats) {
    auto node = std::make_unique<ClusterNode>();
    node->data = std::move(orders);
    ++stats.node_count;
    stats.max_depth = std::max(stats.max_depth, depth);
    if (node->data.size() <= 1) {
        node->split_method = SplitMethod::none;
        return node;
    }

    KMeansConfig kcfg;
    kcfg.k = 2;
    kcfg.seed = node_seed;
    kcfg.max_iterations = cfg.max_iterations;
    kcfg.rel_tolerance = cfg.rel_tolerance;
    const KMeansResult km = split_node(node->data, cfg.metric, kcfg);

    std::vector<Order>& b0 = node->branch_orders[0];
    std::vector<Order>& b1 = node->branch_orders[1];
    for (std::size_t i = 0; i < node->data.size(); ++i)
        (km.labels[i] == 0 ? b0 : b1).push_back(node->data[i]);

    if (b0.empty() || b1.empty()) {
        b0.clear();
        b1.clear();
        volume_bisection_fallback(node->data, b0, b1);
        node->split_method = SplitMethod::volume_bisection;
        ++stats.fallback_splits;
    } else {
        node->split_method = SplitMethod::kmeans;
    }

    node->branch[0] = summarize_branch(b0, cfg.metric);
    node->branch[1] = summarize_branch(b1, cfg.metric);

    // descend only where the load still breaks the cap; per-child seeds are
    // derived from the tree path so subtree results are order-independent
    if (branch_over_cap(node->branch[0], cfg))
        node->left = build_node(b0, cfg, mix_seed(node_seed, 2), depth + 1, stats);
    if (branch_over_cap(node->branch[1], cfg))
        node->right = build_node(b1, cfg, mix_seed(node_seed, 3), depth + 1, stats);
    return node;
}

}  // namespace detail

// Builds the full bisection tree over the eligible orders.
inline std::unique_ptr<ClusterNode> bt_insert(std::vector<Order> orders,
                                              const TreeConfig& cfg,
                                              TreeStats* stats_out = nullptr) {
    TreeStats stats;
    auto root = detail::build_node(std::move(orders), cfg, cfg.seed, 1, stats);
    if (stats_out) *stats_out = stats;
    return root;
}

namespace detail {

inline TerritoryCluster make_cluster(std::size_t id, const std::vector<Order>& members,
                                     const BranchSummary& summary,
                                     bool from_fallback, bool over_cap) {
    TerritoryCluster c;
    c.cluster_id = id;
    c.members = members;
    c.total_vol = summary.total_vol;
    c.total_weight = summary.total_weight;
    c.centroid = summary.centroid;
    c.from_fallback = from_fallback;
    c.over_cap = over_cap;
    double slon = 0.0, slat = 0.0;
    for (const Order& o : members) {
        slon += o.lon;
        slat += o.lat;
    }
    if (!members.empty()) {
        c.centroid_lon = slon / static_cast<double>(members.size());
        c.centroid_lat = slat / static_cast<double>(members.size());
    }
    return c;
}

inline void traverse(const ClusterNode* node, const TreeConfig& cfg,
                     const MetricSpace& metric, std::size_t& counter,
                     std::vector<TerritoryCluster>& out) {
    if (!node) return;
    if (node->split_method == SplitMethod::none) {
        // unsplit node: a single order, either the whole input or a forced
        // singleton whose volume alone breaks the cap
        const BranchSummary s = summarize_branch(node->data, metric);
        out.push_back(make_cluster(++counter, node->data, s, false,
                                   branch_over_cap(s, cfg)));
        return;
    }
    const bool fb = node->split_method == SplitMethod::volume_bisection;
    for (int b = 0; b < 2; ++b) {
        if (!branch_over_cap(node->branch[b], cfg))
            out.push_back(make_cluster(++counter, node->branch_orders[b],
                                       node->branch[b], fb, false));
    }
    traverse(node->left.get(), cfg, metric, counter, out);
    traverse(node->right.get(), cfg, metric, counter, out);
}

}  // namespace detail

// Pre-order collection of all in-cap branches, numbered from 1.
inline std::vector<TerritoryCluster> traverse_leaves(const ClusterNode* root,
                                                     const TreeConfig& cfg) {
    std::vector<TerritoryCluster> out;
    std::size_t counter = 0;
    detail::traverse(root, cfg, cfg.metric, counter, out);
    return out;
}

}  // namespace ccluster
