#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "ccluster/capacity_tree.hpp"
#include "ccluster/ingest.hpp"
#include "ccluster/report.hpp"

namespace ccluster {

struct RunConfig {
    std::string input_path;
    std::string output_dir;
    double vol_cap = 2.8;
    double weight_cap = 2.0;
    std::uint64_t seed = 0;
    DistanceMode distance_mode = DistanceMode::degrees;
    bool strict_weight = false;
    std::size_t max_iterations = 300;
    double rel_tolerance = 1e-4;
    bool plot = true;
    bool plot_depths = false;
    char delimiter = ',';
    ColumnSchema schema{};
};

// 0 success, 1 fatal config/IO error, 2 completed with row rejections.
struct RunResult {
    int exit_code = 1;
    std::string error;  // single-line reason when exit_code == 1
    std::size_t cluster_count = 0;
    std::size_t oversized_count = 0;
    std::size_t rejected_count = 0;
    double mean_utilization = 0.0;
    double elapsed_seconds = 0.0;
};

namespace detail {

// write temp then rename, so a crash never leaves a half-written artifact
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

// per-depth snapshots for --plot-depths: clusters whose branch closed at or
// above the given depth, plus still-open subtrees shown as one blob each
inline void collect_depth_snapshot(const ClusterNode* node, const TreeConfig& cfg,
                                   std::size_t depth, std::size_t limit,
                                   std::size_t& counter,
                                   std::vector<TerritoryCluster>& out) {
    if (!node) return;
    auto emit = [&](const std::vector<Order>& members) {
        const BranchSummary s = summarize_branch(members, cfg.metric);
        out.push_back(make_cluster(++counter, members, s, false, false));
    };
    if (depth >= limit || node->split_method == SplitMethod::none) {
        emit(node->data);
        return;
    }
    for (int b = 0; b < 2; ++b) {
        const bool open = (b == 0) ? node->left != nullptr : node->right != nullptr;
        if (!open) emit(node->branch_orders[b]);
    }
    collect_depth_snapshot(node->left.get(), cfg, depth + 1, limit, counter, out);
    collect_depth_snapshot(node->right.get(), cfg, depth + 1, limit, counter, out);
}

}  // namespace detail

// Full pipeline: ingest, pre-filter, recursive bisection, traversal, exports.
// Nothing is written on a fatal error.
inline RunResult run(const RunConfig& cfg, std::ostream* log = nullptr) {
    namespace fs = std::filesystem;
    const auto t0 = std::chrono::steady_clock::now();
    RunResult res;

    std::ifstream in(cfg.input_path, std::ios::binary);
    if (!in) {
        res.error = "cannot open input: " + cfg.input_path;
        return res;
    }
    if (cfg.vol_cap <= 0.0 || cfg.weight_cap <= 0.0) {
        res.error = "caps must be positive";
        return res;
    }

    IngestResult parsed;
    try {
        parsed = parse_orders(in, cfg.schema, cfg.delimiter);
    } catch (const IngestError& e) {
        res.error = e.what();
        return res;
    }
    const IngestResult split =
        partition_oversized(parsed.eligible, cfg.vol_cap, cfg.weight_cap);

    TreeConfig tcfg;
    tcfg.vol_cap = cfg.vol_cap;
    tcfg.weight_cap = cfg.weight_cap;
    tcfg.strict_weight = cfg.strict_weight;
    tcfg.seed = cfg.seed;
    tcfg.max_iterations = cfg.max_iterations;
    tcfg.rel_tolerance = cfg.rel_tolerance;
    tcfg.metric = MetricSpace::fit(split.eligible, cfg.distance_mode);

    std::unique_ptr<ClusterNode> root;
    TreeStats stats;
    std::vector<TerritoryCluster> clusters;
    if (!split.eligible.empty()) {
        root = bt_insert(split.eligible, tcfg, &stats);
        clusters = traverse_leaves(root.get(), tcfg);
    }

    const ClusterReport report =
        summarize(clusters, split.oversized, cfg.vol_cap, tcfg.metric);

    try {
        fs::create_directories(cfg.output_dir);
        const fs::path out(cfg.output_dir);
        detail::write_atomic(out / "clusters.csv",
                             export_clusters_csv(clusters, cfg.schema));
        detail::write_atomic(out / "clusters.geojson", export_geojson(clusters));
        detail::write_atomic(out / "report.json",
                             export_report_json(report, parsed.rejected));
        detail::write_atomic(out / "oversized.csv",
                             export_oversized_csv(split.oversized, cfg.vol_cap,
                                                  cfg.weight_cap, cfg.schema));
        if (cfg.plot) {
            detail::write_atomic(out / "plot.svg",
                                 export_svg_plot(clusters, split.oversized));
        }
        if (cfg.plot_depths && root) {
            for (std::size_t d = 1; d <= stats.max_depth; ++d) {
                std::vector<TerritoryCluster> snap;
                std::size_t counter = 0;
                detail::collect_depth_snapshot(root.get(), tcfg, 1, d, counter, snap);
                detail::write_atomic(out / ("plot_depth_" + std::to_string(d) + ".svg"),
                                     export_svg_plot(snap, split.oversized));
            }
        }
    } catch (const std::exception& e) {
        res.error = e.what();
        return res;
    }

    res.cluster_count = clusters.size();
    res.oversized_count = split.oversized.size();
    res.rejected_count = parsed.rejected.size();
    res.mean_utilization = report.fleet.mean_utilization;
    res.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.exit_code = parsed.rejected.empty() ? 0 : 2;

    if (log) {
        *log << "orders:       " << parsed.eligible.size() << " parsed, "
             << parsed.rejected.size() << " rejected\n"
             << "oversized:    " << res.oversized_count << "\n"
             << "clusters:     " << res.cluster_count << "\n"
             << "mean util:    " << format_fixed(res.mean_utilization, 3) << "\n"
             << "fallbacks:    " << stats.fallback_splits << "\n"
             << "elapsed:      " << format_fixed(res.elapsed_seconds, 3) << " s\n";
    }
    return res;
}

}  // namespace ccluster
