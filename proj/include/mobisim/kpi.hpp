#pragma once

#include <span>
#include <vector>

namespace mobisim {

/// Arithmetic mean of per-UE throughputs.
double average_throughput(std::span<const double> per_ue);

/// 5th percentile, nearest-rank: sorted ascending, element ⌈0.05·n⌉ (1-based).
double cell_edge_throughput(std::span<const double> per_ue);

/// Nearest-rank percentile for p in (0, 100].
double nearest_rank_percentile(std::span<const double> values, double p);

/// Σ T_k / bandwidth.
double spectral_efficiency(std::span<const double> per_ue, double bandwidth_hz);

/// Jain index (ΣT)² / (n·ΣT²). All-zero input counts as an equal share (1).
double jain_fairness(std::span<const double> per_ue);

struct KpiValues {
    double average_bps = 0.0;
    double cell_edge_bps = 0.0;
    double spectral_efficiency = 0.0;
    double fairness = 1.0;
};

KpiValues compute_kpis(std::span<const double> per_ue, double bandwidth_hz);

}  // namespace mobisim
