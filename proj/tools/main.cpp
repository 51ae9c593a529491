#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "amucd/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "amucd - greedy sparse approximation in reproducing kernel Hilbert\n"
        "spaces over complete dictionaries (Hardy and Paley-Wiener backends)"};
    app.set_help_flag("--help", "Print this help message and exit");

    std::string space;
    double h = 0.0;
    std::string signal;
    std::string mode = "adaptive";
    std::string grid;
    std::string points;
    std::string out_dir;
    std::string format = "json,csv";
    amucd::RunConfig config;

    app.add_option("--space", space, "Space backend: hardy | pw")
        ->check(CLI::IsMember({"hardy", "pw"}));
    app.add_option("--h", h, "Paley-Wiener band parameter (default 1)");
    app.add_option("--signal", signal, "Signal spec JSON file")->required();
    app.add_option("--mode", mode, "adaptive | fixed (default adaptive)")
        ->check(CLI::IsMember({"adaptive", "fixed"}));
    app.add_option("--grid", grid,
                   "Candidate grid: \"radial:64,angular:128,rmax:0.995\" or "
                   "\"rect:8,8,step:0.125\"");
    app.add_option("--points", points, "Fixed element list JSON file (fixed mode)");
    app.add_option("--iters", config.stopping.max_iterations,
                   "Maximum iterations (default 50)")
        ->check(CLI::PositiveNumber);
    app.add_option("--energy-tol", config.stopping.energy_tol,
                   "Stop when residual <= tol * ||f||^2 (default 1e-10)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--stagnation-tol", config.stopping.stagnation_tol,
                   "Stop when best gain < tol * ||f||^2 (default 0, inactive)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", out_dir, "Output directory")->required();
    app.add_option("--format", format, "Outputs to write: json,csv (default both)");

    CLI11_PARSE(app, argc, argv);

    if (!space.empty())
        config.space = (space == "hardy") ? amucd::SpaceKind::Hardy
                                          : amucd::SpaceKind::PaleyWiener;
    if (app.count("--h") > 0) config.h = h;
    config.signal_path = signal;
    config.mode = (mode == "fixed") ? amucd::RunMode::Fixed : amucd::RunMode::Adaptive;
    if (!grid.empty()) config.grid_spec = grid;
    if (!points.empty()) config.points_path = points;
    config.out_dir = out_dir;

    config.write_json = format.find("json") != std::string::npos;
    config.write_csv = format.find("csv") != std::string::npos;
    if (!config.write_json && !config.write_csv) {
        std::cerr << "amucd: --format must name json and/or csv\n";
        return amucd::kExitUsage;
    }

    if (const char* env = std::getenv("AMUCD_THREADS")) {
        try {
            config.threads = std::stoi(env);
        } catch (const std::exception&) {
            std::cerr << "amucd: AMUCD_THREADS must be an integer (0 = auto)\n";
            return amucd::kExitUsage;
        }
    }

    return amucd::run(config, std::cerr);
}
