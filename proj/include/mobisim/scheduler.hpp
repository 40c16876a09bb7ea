#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mobisim {

enum class SchedulerPolicy { round_robin, proportional_fair };

std::string_view to_string(SchedulerPolicy policy);
SchedulerPolicy parse_scheduler(std::string_view name);  ///< "rr" or "pf"

struct SchedulerParams {
    SchedulerPolicy policy = SchedulerPolicy::proportional_fair;
    double alpha = 1.0;
    double beta = 1.0;
    double t_c = 20.0;  ///< averaging window in TTIs
    double initial_average_bps = 1e3;
};

/// What a subband carries this TTI. SU-MIMO: at most one UE per subband.
struct Grant {
    std::size_t ue = 0;
    std::size_t rank = 1;
    std::size_t codebook_index = 0;
    int cqi = 0;
};

using Allocation = std::vector<std::optional<Grant>>;

/// Feasible rates [active UE][subband], row-major.
class RateTable
{
  public:
    RateTable(std::size_t ues, std::size_t subbands)
        : subbands_(subbands), values_(ues * subbands, 0.0)
    {
    }

    std::size_t ues() const { return subbands_ == 0 ? 0 : values_.size() / subbands_; }
    std::size_t subbands() const { return subbands_; }
    double& at(std::size_t ue, std::size_t subband) { return values_[ue * subbands_ + subband]; }
    double at(std::size_t ue, std::size_t subband) const
    {
        return values_[ue * subbands_ + subband];
    }

  private:
    std::size_t subbands_;
    std::vector<double> values_;
};

/// Cyclic dealer position; persists across TTIs.
struct RoundRobinCursor {
    std::size_t position = 0;
};

/// Deals subbands one at a time to `active` in cyclic order from the
/// cursor. Returns the owning entry of `active` for every subband.
std::vector<std::size_t> rr_schedule(RoundRobinCursor& cursor, std::span<const std::size_t> active,
                                     std::size_t subband_count);

/// T^α / R^β.
double pf_priority(double feasible_bps, double average_bps, double alpha, double beta);

/// Each subband to the argmax of pf_priority over UEs (lowest index on
/// ties). `averages[i]` belongs to row i of `rates`. Returns row indices.
std::vector<std::size_t> pf_schedule(const RateTable& rates, std::span<const double> averages,
                                     double alpha, double beta);

/// Exponentially windowed throughput: (1 − 1/t_c)·T + (1/t_c)·delivered,
/// floored at `floor_bps`.
double update_average(double average_bps, double delivered_bps, double t_c,
                      double floor_bps = 0.0);

}  // namespace mobisim
