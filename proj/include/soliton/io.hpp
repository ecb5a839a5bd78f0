#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "soliton/asymptotics.hpp"
#include "soliton/metric.hpp"
#include "soliton/picard.hpp"
#include "soliton/profile.hpp"

namespace soliton {

inline constexpr std::string_view kVersion = "0.1.0";

/// Shortest round-trip-safe text with 17 significant digits, '.' decimal, no locale.
std::string format_double(double v);

/// A named CSV column.
struct Column {
    std::string name;
    std::span<const double> values;
};

/// CSV text with a header row and LF line endings. All columns must have equal length.
std::string csv_text(const std::vector<Column>& cols);

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal line chart; log axes drop nonpositive points.
std::string svg_chart(const std::string& title, const std::vector<Series>& series, bool log_x,
                      bool log_y);

/// Writes through a temporary file and renames, so a failed write leaves nothing behind.
void write_text_file(const std::filesystem::path& path, std::string_view text);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

/// Creates the directory (and parents); throws IoError if that fails or it is not writable.
void ensure_output_dir(const std::filesystem::path& dir);

struct CheckRecord {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    nlohmann::json provenance = nlohmann::json::object();

    /// Throws SolitonError if a check with the same name is already present.
    void add(CheckRecord rec);
    bool all_pass() const;
};

void to_json(nlohmann::json& j, const CheckRecord& c);
void to_json(nlohmann::json& j, const VerificationReport& r);

nlohmann::json local_metadata(const LocalSolution& sol);
nlohmann::json profile_metadata(const GlobalProfile& g);

/// local.csv (r, w, v, h, h_r) and local.json.
void emit_local(const std::filesystem::path& dir, const LocalSolution& sol);

/// profile.csv (r, h, h_r) resampled on a log-uniform grid, profile.json,
/// h_vs_r.csv and a log-log h_vs_r.svg. Throws RangeError on an empty profile
/// before any file is written.
void emit_profile(const std::filesystem::path& dir, const GlobalProfile& g,
                  std::size_t samples = 1001);

/// qtail.csv with header "r,q".
void emit_rate_fit(const std::filesystem::path& dir, const RateFit& fit);

/// remainder.csv (r, remainder, scaled_remainder) and remainder.svg.
void emit_remainder(const std::filesystem::path& dir, const std::vector<RemainderSample>& rem);

/// metric.csv (t, a, a_t, a_tt, f_t, f_tt, f).
void emit_metric(const std::filesystem::path& dir, const MetricProfile& mp);

/// report.json.
void emit_report(const std::filesystem::path& dir, const VerificationReport& report);

/// <name>.csv with columns (x_name, name) and a linear-scale <name>.svg.
void emit_residual(const std::filesystem::path& dir, const std::string& name,
                   const std::string& x_name, const std::vector<double>& x,
                   const std::vector<double>& y);

}  // namespace soliton
