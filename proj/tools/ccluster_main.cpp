#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ccluster/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Partition delivery orders into capacity-bounded sub-area clusters"};

    ccluster::RunConfig cfg;
    std::string distance = "degrees";
    std::string delimiter = ",";

    app.add_option("--input", cfg.input_path, "Input order CSV")->required();
    app.add_option("--out-dir", cfg.output_dir, "Output directory")->required();
    app.add_option("--capacity-cbm", cfg.vol_cap, "Vehicle volume cap in m3")
        ->capture_default_str();
    app.add_option("--weight-cap-ton", cfg.weight_cap, "Single-order weight cap in tons")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--distance", distance, "Distance space: degrees | equirectangular")
        ->check(CLI::IsMember({"degrees", "equirectangular"}))
        ->capture_default_str();
    app.add_flag("--strict-weight", cfg.strict_weight,
                 "Also split clusters whose weight exceeds the weight cap");
    app.add_flag("!--no-plot", cfg.plot, "Skip plot.svg");
    app.add_flag("--plot-depths", cfg.plot_depths,
                 "Also write one plot per tree depth");
    app.add_option("--max-iterations", cfg.max_iterations, "Lloyd iteration cap")
        ->capture_default_str();
    app.add_option("--rel-tolerance", cfg.rel_tolerance,
                   "Centroid-shift stop threshold, relative to coordinate span")
        ->capture_default_str();
    app.add_option("--delimiter", delimiter, "CSV field delimiter")
        ->capture_default_str();
    app.add_option("--col-id", cfg.schema.id, "Id column name")->capture_default_str();
    app.add_option("--col-vol", cfg.schema.vol, "Volume column name")
        ->capture_default_str();
    app.add_option("--col-weight", cfg.schema.weight, "Weight column name")
        ->capture_default_str();
    app.add_option("--col-lon", cfg.schema.lon, "Longitude column name")
        ->capture_default_str();
    app.add_option("--col-lat", cfg.schema.lat, "Latitude column name")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (delimiter.size() != 1) {
        std::cerr << "error: --delimiter must be a single character\n";
        return 1;
    }
    cfg.delimiter = delimiter[0];
    cfg.distance_mode = distance == "degrees" ? ccluster::DistanceMode::degrees
                                              : ccluster::DistanceMode::equirectangular;

    const ccluster::RunResult res = ccluster::run(cfg, &std::cout);
    if (res.exit_code == 1) std::cerr << "error: " << res.error << "\n";
    return res.exit_code;
}
