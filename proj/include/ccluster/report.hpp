#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccluster/capacity_tree.hpp"
#include "ccluster/geo.hpp"
#include "ccluster/ingest.hpp"
#include "ccluster/numfmt.hpp"
#include "ccluster/order.hpp"

namespace ccluster {

struct PerClusterStats {
    std::size_t cluster_id = 0;
    std::size_t size = 0;
    double total_vol = 0.0;
    double total_weight = 0.0;
    double utilization = 0.0;  // total_vol / cap
    double mean_member_distance_to_centroid = 0.0;
};

struct FleetStats {
    double total_vol = 0.0;
    double mean_utilization = 0.0;
    std::array<std::size_t, 10> utilization_histogram{};  // bins of width 0.1
    std::size_t oversized_count = 0;
    std::size_t fallback_split_count = 0;
};

struct ClusterReport {
    std::size_t cluster_count = 0;
    std::vector<PerClusterStats> per_cluster;
    FleetStats fleet;
};

// Per-cluster and fleet-level summaries. Utilization uses the volume cap
// only; low values make poorly filled vehicles visible. Bins are half-open
// [0.1*i, 0.1*(i+1)) with the top bin closed at 1.0.
inline ClusterReport summarize(const std::vector<TerritoryCluster>& clusters,
                               const std::vector<Order>& oversized, double cap,
                               const MetricSpace& metric = {}) {
    ClusterReport r;
    r.cluster_count = clusters.size();
    r.fleet.oversized_count = oversized.size();
    double util_sum = 0.0;
    for (const TerritoryCluster& c : clusters) {
        PerClusterStats s;
        s.cluster_id = c.cluster_id;
        s.size = c.members.size();
        s.total_vol = c.total_vol;
        s.total_weight = c.total_weight;
        s.utilization = c.total_vol / cap;
        double dist_sum = 0.0;
        for (const Order& o : c.members)
            dist_sum += std::sqrt(squared_distance(metric.project(o), c.centroid));
        if (!c.members.empty())
            s.mean_member_distance_to_centroid =
                dist_sum / static_cast<double>(c.members.size());
        util_sum += s.utilization;
        r.fleet.total_vol += c.total_vol;
        if (c.from_fallback) ++r.fleet.fallback_split_count;
        int bin = static_cast<int>(std::floor(s.utilization * 10.0));
        bin = std::clamp(bin, 0, 9);
        ++r.fleet.utilization_histogram[static_cast<std::size_t>(bin)];
        r.per_cluster.push_back(s);
    }
    if (!clusters.empty())
        r.fleet.mean_utilization = util_sum / static_cast<double>(clusters.size());
    return r;
}

// clusters.csv: one row per order with its cluster id, sorted by
// (cluster_id, id) so the file is stable across runs.
inline std::string export_clusters_csv(const std::vector<TerritoryCluster>& clusters,
                                       const ColumnSchema& schema = {}) {
    std::string out = schema.id + ',' + schema.vol + ',' + schema.weight + ',' +
                      schema.lon + ',' + schema.lat + ",cluster_id\n";
    struct Row {
        std::size_t cluster_id;
        const Order* order;
    };
    std::vector<Row> rows;
    for (const TerritoryCluster& c : clusters)
        for (const Order& o : c.members) rows.push_back({c.cluster_id, &o});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.cluster_id != b.cluster_id) return a.cluster_id < b.cluster_id;
        return a.order->id < b.order->id;
    });
    for (const Row& row : rows) {
        out += csv_escape(row.order->id);
        out += ',';
        out += format_double(row.order->vol_cbm);
        out += ',';
        out += format_double(row.order->weight_ton);
        out += ',';
        out += format_double(row.order->lon);
        out += ',';
        out += format_double(row.order->lat);
        out += ',';
        out += std::to_string(row.cluster_id);
        out += '\n';
    }
    return out;
}

// GeoJSON FeatureCollection: a Point per order (property cluster_id) plus a
// Point per cluster centroid (kind=centroid). Coordinates are [lon, lat].
inline std::string export_geojson(const std::vector<TerritoryCluster>& clusters) {
    nlohmann::ordered_json fc;
    fc["type"] = "FeatureCollection";
    fc["features"] = nlohmann::ordered_json::array();
    for (const TerritoryCluster& c : clusters) {
        for (const Order& o : c.members) {
            nlohmann::ordered_json f;
            f["type"] = "Feature";
            f["geometry"] = {{"type", "Point"}, {"coordinates", {o.lon, o.lat}}};
            f["properties"] = {{"id", o.id}, {"cluster_id", c.cluster_id}};
            fc["features"].push_back(std::move(f));
        }
        nlohmann::ordered_json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "Point"},
                         {"coordinates", {c.centroid_lon, c.centroid_lat}}};
        f["properties"] = {{"kind", "centroid"}, {"cluster_id", c.cluster_id}};
        fc["features"].push_back(std::move(f));
    }
    return fc.dump(2) + "\n";
}

// report.json payload, keys in fixed order.
inline std::string export_report_json(const ClusterReport& r,
                                      const std::vector<RejectedRow>& rejected = {}) {
    nlohmann::ordered_json j;
    j["cluster_count"] = r.cluster_count;
    j["clusters"] = nlohmann::ordered_json::array();
    for (const PerClusterStats& s : r.per_cluster) {
        j["clusters"].push_back({{"cluster_id", s.cluster_id},
                                 {"size", s.size},
                                 {"total_vol", s.total_vol},
                                 {"total_weight", s.total_weight},
                                 {"utilization", s.utilization},
                                 {"mean_member_distance_to_centroid",
                                  s.mean_member_distance_to_centroid}});
    }
    j["fleet"] = {{"total_vol", r.fleet.total_vol},
                  {"mean_utilization", r.fleet.mean_utilization},
                  {"utilization_histogram", r.fleet.utilization_histogram},
                  {"oversized_count", r.fleet.oversized_count},
                  {"fallback_split_count", r.fleet.fallback_split_count}};
    j["rejected_rows"] = nlohmann::ordered_json::array();
    for (const RejectedRow& rr : rejected)
        j["rejected_rows"].push_back({{"row", rr.row_index}, {"reason", rr.reason}});
    return j.dump(2) + "\n";
}

namespace detail {

constexpr std::array<const char*, 20> kClusterColors = {
    "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c",
    "#98df8a", "#d62728", "#ff9896", "#9467bd", "#c5b0d5",
    "#8c564b", "#c49c94", "#e377c2", "#f7b6d2", "#7f7f7f",
    "#c7c7c7", "#bcbd22", "#dbdb8d", "#17becf", "#9edae5"};

}  // namespace detail

// Self-contained SVG scatter of the result: members colored per cluster from
// a fixed 20-color cycle, centroids drawn as crosses, oversized orders as
// hollow gray circles. The viewport is a linear fit of the data bounding box
// with a 5% margin; byte output is deterministic.
inline std::string export_svg_plot(const std::vector<TerritoryCluster>& clusters,
                                   const std::vector<Order>& oversized) {
    constexpr double width = 800.0, height = 600.0;

    double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
    bool have = false;
    auto extend = [&](double lon, double lat) {
        if (!have) {
            min_x = max_x = lon;
            min_y = max_y = lat;
            have = true;
        } else {
            min_x = std::min(min_x, lon);
            max_x = std::max(max_x, lon);
            min_y = std::min(min_y, lat);
            max_y = std::max(max_y, lat);
        }
    };
    for (const TerritoryCluster& c : clusters)
        for (const Order& o : c.members) extend(o.lon, o.lat);
    for (const Order& o : oversized) extend(o.lon, o.lat);

    double span_x = max_x - min_x, span_y = max_y - min_y;
    if (span_x <= 0.0) span_x = 1.0;
    if (span_y <= 0.0) span_y = 1.0;
    const double mx = 0.05 * span_x, my = 0.05 * span_y;
    const double x0 = min_x - mx, x1 = max_x + mx;
    const double y0 = min_y - my, y1 = max_y + my;

    auto sx = [&](double lon) { return (lon - x0) / (x1 - x0) * width; };
    auto sy = [&](double lat) { return height - (lat - y0) / (y1 - y0) * height; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\" "
           "stroke=\"#333\"/>\n";
    for (const Order& o : oversized) {
        svg += "<circle cx=\"" + format_fixed(sx(o.lon), 2) + "\" cy=\"" +
               format_fixed(sy(o.lat), 2) +
               "\" r=\"4\" fill=\"none\" stroke=\"#888\"/>\n";
    }
    for (const TerritoryCluster& c : clusters) {
        const char* color =
            detail::kClusterColors[(c.cluster_id - 1) % detail::kClusterColors.size()];
        for (const Order& o : c.members) {
            svg += "<circle cx=\"" + format_fixed(sx(o.lon), 2) + "\" cy=\"" +
                   format_fixed(sy(o.lat), 2) + "\" r=\"3\" fill=\"" + color +
                   "\"/>\n";
        }
    }
    for (const TerritoryCluster& c : clusters) {
        const std::string cx = format_fixed(sx(c.centroid_lon), 2);
        const std::string cy = format_fixed(sy(c.centroid_lat), 2);
        svg += "<path d=\"M " + cx + " " + cy + " m -5 0 l 10 0 m -5 -5 l 0 10\" "
               "stroke=\"black\" stroke-width=\"1.5\" fill=\"none\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace ccluster
