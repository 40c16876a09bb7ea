#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mobisim/config.hpp"
#include "mobisim/fading.hpp"
#include "mobisim/geometry.hpp"
#include "mobisim/kpi.hpp"
#include "mobisim/link.hpp"
#include "mobisim/scheduler.hpp"

namespace mobisim {

struct SweepPoint {
    double speed_kmph = 0.0;
    SchedulerPolicy scheduler = SchedulerPolicy::proportional_fair;
    AntennaMode mode;
    std::uint64_t seed = 1;
};

/// Delayed UE report: per-subband CQI with wideband PMI and RI.
struct FeedbackReport {
    std::vector<int> cqi;
    std::size_t pmi = 0;
    std::size_t ri = 1;
    std::size_t sector = 0;  ///< serving sector the report was measured on
    std::size_t created_at = 0;  ///< global TTI index
};

struct RunResult {
    SweepPoint point;
    KpiValues kpis;
    std::vector<double> per_ue_bps;  ///< UEs inside the KPI scope
    std::size_t simulated_ues = 0;
    std::size_t handovers = 0;
    long transmitted_blocks = 0;
    long failed_blocks = 0;
};

/// Snapshot handed to an observer after each measured TTI.
struct TtiTrace {
    std::size_t tti = 0;  ///< global index (warm-up TTIs precede the first measured one)
    std::span<const Allocation> allocations;  ///< per sector
    std::span<const long> delivered_bits;  ///< per UE, this TTI
    std::span<const long> granted_bits;  ///< per UE, transport bits of blocks sent this TTI
    std::span<const std::uint8_t> block_success;  ///< per (sector, subband), 1 if decoded
    std::span<const std::size_t> consumed_report_created_at;  ///< per UE
    std::span<const FeedbackReport> consumed_reports;  ///< per UE
    std::span<const std::size_t> serving_sector;  ///< per UE, during this TTI
};

using TtiObserver = std::function<void(const TtiTrace&)>;

/// One interfering sector as seen by a UE on every subband.
struct InterfererView {
    const ChannelRealization* channel = nullptr;
    std::span<const CVector> precoders;  ///< per subband, unit norm
    double rx_power = 0.0;  ///< linear, per PRB
};

/// Σ over interferers of rx_power·‖H_s v_s‖² / R, per subband.
std::vector<double> interference_power(std::span<const InterfererView> interferers,
                                       std::size_t subbands);

LayoutOptions layout_options(const SimConfig& config);

/// PRBs per subband: equal split with the remainder on the last subbands.
std::vector<int> subband_prbs(std::size_t prb_count, std::size_t subbands);

/// Optional instrumentation of a single run.
struct RunHooks {
    TtiObserver observer;
    /// Replaces the random drop: one UE per position, home sector chosen by
    /// attachment.
    std::vector<Vec2> ue_positions;
};

/// Simulates one sweep point and seed.
RunResult run_point(const SimConfig& config, const LinkTables& tables, const SweepPoint& point,
                    const RunHooks& hooks = {});

/// Every (scheduler, mode, speed, seed) combination in that nesting order.
std::vector<SweepPoint> enumerate_sweep(const SimConfig& config);

/// Runs the whole sweep on `workers` threads. Output order and content are
/// independent of the worker count.
std::vector<RunResult> run_sweep(const SimConfig& config, const LinkTables& tables,
                                 std::size_t workers);

}  // namespace mobisim
