#include "mobisim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mobisim {

std::string_view to_string(SchedulerPolicy policy)
{
    return policy == SchedulerPolicy::round_robin ? "rr" : "pf";
}

SchedulerPolicy parse_scheduler(std::string_view name)
{
    if (name == "rr")
        return SchedulerPolicy::round_robin;
    if (name == "pf")
        return SchedulerPolicy::proportional_fair;
    throw std::invalid_argument("unknown scheduler '" + std::string(name) + "' (expected rr or pf)");
}

std::vector<std::size_t> rr_schedule(RoundRobinCursor& cursor, std::span<const std::size_t> active,
                                     std::size_t subband_count)
{
    if (active.empty())
        throw std::invalid_argument("round robin needs at least one active UE");
    std::vector<std::size_t> owners(subband_count);
    std::size_t pos = cursor.position % active.size();
    for (std::size_t s = 0; s < subband_count; ++s) {
        owners[s] = pos;
        pos = (pos + 1) % active.size();
    }
    cursor.position = pos;
    return owners;
}

double pf_priority(double feasible_bps, double average_bps, double alpha, double beta)
{
    if (!(average_bps > 0.0))
        throw std::invalid_argument("average throughput must be positive");
    if (alpha == 0.0)
        return 1.0 / std::pow(average_bps, beta);
    return std::pow(feasible_bps, alpha) / std::pow(average_bps, beta);
}

std::vector<std::size_t> pf_schedule(const RateTable& rates, std::span<const double> averages,
                                     double alpha, double beta)
{
    if (rates.ues() == 0 || averages.size() != rates.ues())
        throw std::invalid_argument("need one average per UE row");
    std::vector<std::size_t> owners(rates.subbands(), 0);
    for (std::size_t s = 0; s < rates.subbands(); ++s) {
        double best = -1.0;
        for (std::size_t u = 0; u < rates.ues(); ++u) {
            const double p = pf_priority(rates.at(u, s), averages[u], alpha, beta);
            if (p > best) {
                best = p;
                owners[s] = u;
            }
        }
    }
    return owners;
}

double update_average(double average_bps, double delivered_bps, double t_c, double floor_bps)
{
    if (!(t_c >= 2.0))
        throw std::invalid_argument("t_c must be at least 2 TTIs");
    const double next = (1.0 - 1.0 / t_c) * average_bps + delivered_bps / t_c;
    return std::max(next, floor_bps);
}

}  // namespace mobisim
