#pragma once

#include <cmath>
#include <vector>

#include "ccluster/order.hpp"

namespace ccluster {

struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline double squared_distance(const Point2D& a, const Point2D& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

enum class DistanceMode {
    degrees,          // cluster on raw (lon, lat)
    equirectangular,  // project to meters at the dataset's mean latitude
};

// The plane the clustering runs in. `degrees` is the identity map;
// `equirectangular` scales longitudes by cos(mean latitude) and converts both
// axes to meters, which keeps east-west and north-south distances comparable.
struct MetricSpace {
    DistanceMode mode = DistanceMode::degrees;
    double cos_lat0 = 1.0;
    static constexpr double meters_per_degree = 111320.0;

    static MetricSpace fit(const std::vector<Order>& orders, DistanceMode mode) {
        MetricSpace m;
        m.mode = mode;
        if (mode == DistanceMode::equirectangular && !orders.empty()) {
            double sum = 0.0;
            for (const Order& o : orders) sum += o.lat;
            const double lat0 = sum / static_cast<double>(orders.size());
            m.cos_lat0 = std::cos(lat0 * M_PI / 180.0);
        }
        return m;
    }

    Point2D project(double lon, double lat) const {
        if (mode == DistanceMode::degrees) return {lon, lat};
        return {lon * cos_lat0 * meters_per_degree, lat * meters_per_degree};
    }

    Point2D project(const Order& o) const { return project(o.lon, o.lat); }
};

}  // namespace ccluster
