#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "soliton/checks.hpp"
#include "soliton/constants.hpp"

namespace soliton {

enum class Mode { Solve, Sweep, Verify, Reconstruct };

std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view s);

/// Cartesian product of these lists; every list must be nonempty.
struct SweepRanges {
    std::vector<int> n{2};
    std::vector<double> lambda{0.0};
    std::vector<double> c0{1.0};
    std::vector<double> c1{0.0};
};

struct RunConfig {
    Mode mode = Mode::Solve;
    SolitonInputs inputs;
    SweepRanges sweep;
    CheckSettings settings;
    std::filesystem::path output_dir = "soliton_out";
};

/// Strict: unknown keys and wrong types raise ConfigError.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig load_config(const std::filesystem::path& file);

/// Tolerances positive, K even and >= 64, R_max > 0, sweep lists nonempty.
void validate(const RunConfig& cfg);

/// Sweep tuples in row-major order (n outermost).
std::vector<SolitonInputs> sweep_tuples(const SweepRanges& r);

/// Subdirectory name of one sweep tuple.
std::string tuple_dirname(const SolitonInputs& in);

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kConfig = 2;
inline constexpr int kSolver = 3;
}  // namespace exit_code

/// Executes the configured mode and maps errors to exit codes; never throws.
int run(const RunConfig& cfg);

/// Parses flags (and --config) then calls run. Precedence for the output
/// directory: config file, then SOLITON_OUT, then --out.
int run_cli(int argc, char** argv);

}  // namespace soliton
