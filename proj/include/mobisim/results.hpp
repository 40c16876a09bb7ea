#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobisim/engine.hpp"

namespace mobisim {

/// One line of results.csv.
struct ResultRow {
    std::uint64_t seed = 0;
    double speed_kmph = 0.0;
    std::string scheduler;
    std::size_t tx = 0;
    std::size_t rx = 0;
    double avg_throughput_mbps = 0.0;
    double cell_edge_mbps = 0.0;
    double spectral_eff_bps_hz = 0.0;
    double fairness = 0.0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr std::string_view kResultsHeader =
    "seed,speed_kmph,scheduler,tx,rx,avg_throughput_mbps,cell_edge_mbps,spectral_eff_bps_hz,"
    "fairness";

ResultRow to_result_row(const RunResult& run);

/// Shortest "%.6g" rendering.
std::string format_number(double value);

/// Row with every numeric field rounded to its 6-significant-digit text.
ResultRow rounded(const ResultRow& row);

void write_results_csv(std::span<const ResultRow> rows, std::ostream& out);
std::vector<ResultRow> read_results_csv(std::istream& in);

/// Sweep-point key "{scheduler}/{tx}x{rx}/{speed}".
std::string sweep_key(const ResultRow& row);

/// summary.json text: per sweep point, seed list and mean/min/max of each KPI.
std::string summary_json(std::span<const ResultRow> rows);

/// Writes results.csv and summary.json into `dir` (created if missing).
void write_outputs(std::span<const ResultRow> rows, const std::filesystem::path& dir);

}  // namespace mobisim
