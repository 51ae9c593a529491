#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "amucd/greedy.hpp"

namespace amucd {

// Process exit codes used by run() and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitDependence = 4;

/// Signal file schema:
///   {"space": "hardy"|"pw", "h": number?, "variant": "taylor"|"kernels"|"spectrum",
///    "data": [...]}
/// with complex numbers as [re, im] pairs. See README for the per-variant
/// payloads. Errors carry the offending path/position in the message.
SignalSpec parse_signal_spec(const std::filesystem::path& file);
SignalSpec parse_signal_spec_text(const std::string& text,
                                  const std::string& origin = "<memory>");

/// {"elements":[{"center":[re,im],"order":m}], "kernel_coeffs":[[re,im]],
///  "ortho_coeffs":[[re,im]], "energy_track":[...], "norm_sq_f": x}
std::string decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const std::string& text);

/// The reconstruction f* of a decomposition as a kernel-combination signal.
SignalSpec decomposition_as_signal(SpaceKind kind, double h,
                                   const Decomposition& d);

/// Element list file: [{"center":[re,im], "order": m?}, ...]. Omitted orders
/// are assigned by the coincidence-count rule.
std::vector<DictionaryElement> parse_points_file(const std::filesystem::path& file);

std::string iteration_log_csv(const std::vector<IterationRow>& rows);

enum class RunMode { Adaptive, Fixed };

struct RunConfig {
    std::optional<SpaceKind> space;  // must agree with the signal file if set
    std::optional<double> h;
    std::filesystem::path signal_path;
    RunMode mode = RunMode::Adaptive;
    std::optional<std::string> grid_spec;  // "radial:..,angular:..,rmax:.." | "rect:X,Y,step:S"
    std::optional<std::filesystem::path> points_path;  // fixed mode
    StoppingRule stopping;
    std::filesystem::path out_dir;
    bool write_json = true;
    bool write_csv = true;
    int threads = 0;  // 0 = auto (hardware concurrency)
};

CandidateGrid parse_grid_spec(const std::string& text, const SpaceModel& space);

/// Executes a batch run and writes decomposition.json / iterations.csv /
/// summary.json under out_dir. Returns a process exit code; diagnostics are
/// written to `log`. Identical configs produce byte-identical outputs.
int run(const RunConfig& config, std::ostream& log);

}  // namespace amucd
