#pragma once

// Test-only oracles and data generators. Everything here is independent of
// the library's algorithm paths: inertia is recomputed by naive summation and
// optimal 2-partitions are found by exhaustive enumeration.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ccluster/geo.hpp"
#include "ccluster/order.hpp"
#include "ccluster/rng.hpp"

namespace testutil {

using ccluster::Order;
using ccluster::Point2D;

inline double naive_inertia(const std::vector<Point2D>& pts,
                            const std::vector<std::size_t>& labels,
                            const std::vector<Point2D>& centroids) {
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double dx = pts[i].x - centroids[labels[i]].x;
        const double dy = pts[i].y - centroids[labels[i]].y;
        s += dx * dx + dy * dy;
    }
    return s;
}

inline double partition_inertia(const std::vector<Point2D>& pts, std::uint32_t mask) {
    double sx[2] = {0, 0}, sy[2] = {0, 0};
    std::size_t cnt[2] = {0, 0};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const int side = (mask >> i) & 1u;
        sx[side] += pts[i].x;
        sy[side] += pts[i].y;
        ++cnt[side];
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const int side = (mask >> i) & 1u;
        const double mx = sx[side] / static_cast<double>(cnt[side]);
        const double my = sy[side] / static_cast<double>(cnt[side]);
        total += (pts[i].x - mx) * (pts[i].x - mx) + (pts[i].y - my) * (pts[i].y - my);
    }
    return total;
}

// Exhaustive minimum within-cluster sum of squares over all 2-partitions with
// both sides non-empty. Feasible for n <= ~20.
inline double best_two_partition_inertia(const std::vector<Point2D>& pts,
                                         std::uint32_t* best_mask = nullptr) {
    const std::size_t n = pts.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        const double v = partition_inertia(pts, mask);
        if (v < best) {
            best = v;
            if (best_mask) *best_mask = mask;
        }
    }
    return best;
}

// Brute-force nearest-centroid labels, lowest index on ties.
inline std::vector<std::size_t> brute_nearest(const std::vector<Point2D>& pts,
                                              const std::vector<Point2D>& cents) {
    std::vector<std::size_t> labels;
    for (const Point2D& p : pts) {
        std::size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < cents.size(); ++j) {
            const double dx = p.x - cents[j].x, dy = p.y - cents[j].y;
            const double d = dx * dx + dy * dy;
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        labels.push_back(best);
    }
    return labels;
}

// Synthetic order set: volumes uniform in [0.05, 1.5] m3, weights uniform in
// [0, 2.5] tons, positions uniform in a 0.5x0.5 degree box near Jakarta.
inline std::vector<Order> synthetic_orders(std::uint64_t seed, std::size_t n) {
    ccluster::SplitMix64 g(seed ^ 0xfeedULL);
    std::vector<Order> orders;
    orders.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Order o;
        o.id = "o" + std::to_string(i);
        o.vol_cbm = 0.05 + 1.45 * g.next_double();
        o.weight_ton = 2.5 * g.next_double();
        o.lon = 106.6 + 0.5 * g.next_double();
        o.lat = -6.4 + 0.5 * g.next_double();
        orders.push_back(std::move(o));
    }
    return orders;
}

inline std::vector<Point2D> synthetic_points(std::uint64_t seed, std::size_t n) {
    ccluster::SplitMix64 g(seed ^ 0xabcULL);
    std::vector<Point2D> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back({10.0 * g.next_double(), 10.0 * g.next_double()});
    return pts;
}

// The seven-leaf layout: two four-order groups far left, a lone order plus a
// pair far right. Three split levels, seven in-cap branches.
inline std::vector<Order> seven_leaf_orders() {
    auto mk = [](const char* id, double x, double vol) {
        Order o;
        o.id = id;
        o.vol_cbm = vol;
        o.weight_ton = 0.1;
        o.lon = x;
        o.lat = 0.0;
        return o;
    };
    return {mk("a", 0.0, 2.0),  mk("b", 1.0, 2.0),   mk("c", 10.0, 2.0),
            mk("d", 11.0, 2.0), mk("e", 100.0, 2.5), mk("f", 110.0, 2.0),
            mk("g", 111.0, 2.0)};
}

}  // namespace testutil
