#include "mobisim/kpi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mobisim {

namespace {

void require_non_empty(std::span<const double> v)
{
    if (v.empty())
        throw std::invalid_argument("KPI input must not be empty");
}

}  // namespace

double average_throughput(std::span<const double> per_ue)
{
    require_non_empty(per_ue);
    return std::accumulate(per_ue.begin(), per_ue.end(), 0.0) / static_cast<double>(per_ue.size());
}

double nearest_rank_percentile(std::span<const double> values, double p)
{
    require_non_empty(values);
    if (!(p > 0.0 && p <= 100.0))
        throw std::invalid_argument("percentile must lie in (0, 100]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    // Slack keeps ⌈p·n/100⌉ from landing one rank high when p·n/100 is integral.
    const double exact = p * static_cast<double>(sorted.size()) / 100.0;
    auto rank = static_cast<std::size_t>(std::ceil(exact - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

double cell_edge_throughput(std::span<const double> per_ue)
{
    return nearest_rank_percentile(per_ue, 5.0);
}

double spectral_efficiency(std::span<const double> per_ue, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth must be positive");
    return std::accumulate(per_ue.begin(), per_ue.end(), 0.0) / bandwidth_hz;
}

double jain_fairness(std::span<const double> per_ue)
{
    require_non_empty(per_ue);
    double sum = 0.0;
    double squares = 0.0;
    for (double t : per_ue) {
        sum += t;
        squares += t * t;
    }
    if (squares == 0.0)
        return 1.0;
    return sum * sum / (static_cast<double>(per_ue.size()) * squares);
}

KpiValues compute_kpis(std::span<const double> per_ue, double bandwidth_hz)
{
    KpiValues k;
    k.average_bps = average_throughput(per_ue);
    k.cell_edge_bps = cell_edge_throughput(per_ue);
    k.spectral_efficiency = spectral_efficiency(per_ue, bandwidth_hz);
    k.fairness = jain_fairness(per_ue);
    return k;
}

}  // namespace mobisim
