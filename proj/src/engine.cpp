#include "mobisim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mobisim/geometry.hpp"
#include "mobisim/mimo.hpp"
#include "mobisim/mobility.hpp"
#include "mobisim/propagation.hpp"
#include "mobisim/rng.hpp"

namespace mobisim {

namespace {

constexpr double kPrbBandwidthHz = 180e3;

struct Link {
    ChannelRealization channel;
    CounterRng innovation;
};

class Simulation
{
  public:
    Simulation(const SimConfig& config, const LinkTables& tables, const SweepPoint& point,
               const RunHooks& hooks);

    RunResult run(const TtiObserver& observer);

  private:
    std::size_t link_index(std::size_t ue, std::size_t sector) const
    {
        return ue * sectors_ + sector;
    }
    void refresh_large_scale(std::size_t ue);
    void draw_interferer_precoders(std::size_t tti);
    void measure(std::size_t ue, std::size_t tti);

    const SimConfig& cfg_;
    const LinkTables& tables_;
    SweepPoint point_;

    NetworkLayout layout_;
    PropagationParams propagation_;
    MobilityRegion region_;
    std::size_t ues_ = 0;
    std::size_t sectors_ = 0;
    std::size_t subbands_ = 0;
    std::vector<int> prbs_;
    double noise_per_prb_ = 0.0;  // mW
    double tx_power_per_prb_ = 0.0;  // mW

    std::vector<std::size_t> home_site_;
    std::vector<double> shadowing_;  // [ue][site]
    std::vector<MotionState> motion_;
    std::vector<CounterRng> mobility_rng_;
    std::vector<CounterRng> transmission_rng_;
    std::vector<double> rx_power_;  // [ue][sector], mW per PRB
    std::vector<std::size_t> serving_;
    std::vector<Link> links_;  // [ue][sector]
    std::vector<CVector> interferer_precoder_;  // [sector][subband]
    std::vector<double> noise_norm_;  // [ue][subband], (N + I) / S for the current TTI
    std::vector<std::deque<FeedbackReport>> queues_;
    std::vector<double> average_;
    std::vector<long long> delivered_total_;
    std::vector<RoundRobinCursor> cursors_;
    std::size_t handovers_ = 0;
};

Simulation::Simulation(const SimConfig& config, const LinkTables& tables, const SweepPoint& point,
                       const RunHooks& hooks)
    : cfg_(config), tables_(tables), point_(point)
{
    layout_ = build_layout(layout_options(cfg_));
    region_ = mobility_region(layout_, cfg_.mobility_margin_m);

    propagation_.carrier_mhz = cfg_.carrier_mhz;
    propagation_.bs_height_m = cfg_.bs_height_m;
    propagation_.ue_height_m = cfg_.ue_height_m;
    propagation_.tx_power_dbm = cfg_.tx_power_dbm;
    propagation_.min_distance_m = cfg_.min_distance_m;

    sectors_ = layout_.sectors.size();
    subbands_ = cfg_.subbands;
    prbs_ = subband_prbs(cfg_.prb_count, subbands_);
    noise_per_prb_ = from_db(noise_power_dbm(kPrbBandwidthHz, cfg_.noise_figure_db));
    tx_power_per_prb_ = from_db(cfg_.tx_power_dbm) / static_cast<double>(cfg_.prb_count);

    std::vector<Vec2> positions;
    if (!hooks.ue_positions.empty()) {
        positions = hooks.ue_positions;
    } else {
        auto rng = make_stream(point_.seed, StreamPurpose::ue_drop);
        for (const DroppedUe& ue : drop_ues(layout_, cfg_.ues_per_sector, rng)) {
            positions.push_back(ue.position);
            home_site_.push_back(layout_.sectors[ue.home_sector].site);
        }
    }
    ues_ = positions.size();
    shadowing_ = draw_shadowing(point_.seed, ues_, layout_.sites.size(), cfg_.sigma_shadow_db);

    const double doppler = doppler_hz(point_.speed_kmph, cfg_.carrier_mhz * 1e6);
    const double rho = lag1_correlation(doppler, cfg_.tti_s());

    motion_.resize(ues_);
    rx_power_.assign(ues_ * sectors_, 0.0);
    serving_.assign(ues_, 0);
    links_.reserve(ues_ * sectors_);
    for (std::size_t u = 0; u < ues_; ++u) {
        motion_[u].position = positions[u];
        motion_[u].speed_kmph = point_.speed_kmph;
        mobility_rng_.push_back(make_stream(point_.seed, StreamPurpose::mobility, u));
        transmission_rng_.push_back(make_stream(point_.seed, StreamPurpose::transmission, u));
        refresh_large_scale(u);
        for (std::size_t s = 0; s < sectors_; ++s) {
            auto init = make_stream(point_.seed, StreamPurpose::fading_initial, u, s);
            Link link{draw_initial(point_.mode.tx, point_.mode.rx, subbands_, init),
                      make_stream(point_.seed, StreamPurpose::fading_innovation, u, s)};
            link.channel.doppler_hz = doppler;
            link.channel.lag1_correlation = rho;
            links_.push_back(std::move(link));
        }
    }
    if (home_site_.empty())
        for (std::size_t u = 0; u < ues_; ++u)
            home_site_.push_back(layout_.sectors[serving_[u]].site);

    interferer_precoder_.assign(sectors_ * subbands_, CVector::Zero(point_.mode.tx));
    noise_norm_.assign(ues_ * subbands_, 1.0);
    queues_.resize(ues_);
    average_.assign(ues_, cfg_.pf_initial_average_bps);
    delivered_total_.assign(ues_, 0);
    cursors_.resize(sectors_);
}

void Simulation::refresh_large_scale(std::size_t ue)
{
    std::vector<LinkBudget> budgets(sectors_);
    const auto sites = layout_.sites.size();
    for (std::size_t s = 0; s < sectors_; ++s) {
        const double shadow = shadowing_[ue * sites + layout_.sectors[s].site];
        budgets[s] = link_budget(layout_, s, motion_[ue].position, shadow, propagation_);
        rx_power_[link_index(ue, s)] = tx_power_per_prb_ * from_db(budgets[s].coupling_gain_db);
    }
    serving_[ue] = attach(budgets);
}

void Simulation::draw_interferer_precoders(std::size_t tti)
{
    for (std::size_t s = 0; s < sectors_; ++s) {
        auto rng = make_stream(point_.seed, StreamPurpose::interferer_precoder, s, tti);
        for (std::size_t b = 0; b < subbands_; ++b) {
            CVector v(static_cast<Eigen::Index>(point_.mode.tx));
            for (Eigen::Index i = 0; i < v.size(); ++i)
                v(i) = standard_complex_gaussian(rng);
            v.normalize();
            interferer_precoder_[s * subbands_ + b] = v;
        }
    }
}

void Simulation::measure(std::size_t ue, std::size_t tti)
{
    const std::size_t serving = serving_[ue];
    std::vector<InterfererView> interferers;
    interferers.reserve(sectors_ - 1);
    for (std::size_t s = 0; s < sectors_; ++s) {
        if (s == serving)
            continue;
        interferers.push_back({&links_[link_index(ue, s)].channel,
                               std::span<const CVector>(&interferer_precoder_[s * subbands_],
                                                        subbands_),
                               rx_power_[link_index(ue, s)]});
    }
    const std::vector<double> interference = interference_power(interferers, subbands_);
    const double signal = rx_power_[link_index(ue, serving)];
    std::vector<double> norm(subbands_);
    for (std::size_t b = 0; b < subbands_; ++b) {
        norm[b] = (noise_per_prb_ + interference[b]) / signal;
        noise_norm_[ue * subbands_ + b] = norm[b];
    }

    const ChannelRealization& channel = links_[link_index(ue, serving)].channel;
    const RankPmiChoice choice =
        select_rank_pmi(channel.h, norm, std::min(point_.mode.tx, point_.mode.rx));

    FeedbackReport report;
    report.cqi.resize(subbands_);
    for (std::size_t b = 0; b < subbands_; ++b) {
        const LayerSinrs& layers = choice.per_subband[b];
        report.cqi[b] = select_cqi(tables_, std::span<const double>(layers.data(),
                                                                    static_cast<std::size_t>(layers.size())));
    }
    report.pmi = choice.codebook_index;
    report.ri = choice.rank;
    report.sector = serving;
    report.created_at = tti;
    queues_[ue].push_back(std::move(report));
}

RunResult Simulation::run(const TtiObserver& observer)
{
    const std::size_t delay = cfg_.feedback_delay;
    const std::size_t ttis = cfg_.ttis_for(point_.scheduler);
    const double tti_s = cfg_.tti_s();

    std::vector<Allocation> allocations(sectors_, Allocation(subbands_));
    std::vector<long> delivered(ues_), granted(ues_);
    std::vector<std::uint8_t> success(sectors_ * subbands_);
    std::vector<FeedbackReport> consumed(ues_);
    std::vector<std::size_t> consumed_at(ues_);
    long blocks = 0;
    long failures = 0;

    for (std::size_t tti = 0; tti < delay + ttis; ++tti) {
        if (tti > 0)
            for (Link& link : links_)
                evolve(link.channel, link.innovation);
        draw_interferer_precoders(tti);
        for (std::size_t u = 0; u < ues_; ++u)
            measure(u, tti);
        if (tti < delay)
            continue;

        for (std::size_t u = 0; u < ues_; ++u) {
            consumed[u] = std::move(queues_[u].front());
            queues_[u].pop_front();
            if (consumed[u].created_at + delay != tti)
                throw std::logic_error("feedback queue out of step with the configured delay");
            consumed_at[u] = consumed[u].created_at;
        }

        std::fill(delivered.begin(), delivered.end(), 0);
        std::fill(granted.begin(), granted.end(), 0);
        std::fill(success.begin(), success.end(), 0);
        for (std::size_t sector = 0; sector < sectors_; ++sector) {
            Allocation& allocation = allocations[sector];
            std::fill(allocation.begin(), allocation.end(), std::nullopt);

            std::vector<std::size_t> active;
            for (std::size_t u = 0; u < ues_; ++u)
                if (serving_[u] == sector && consumed[u].sector == sector)
                    active.push_back(u);
            if (active.empty())
                continue;

            std::vector<std::size_t> owners;
            if (point_.scheduler == SchedulerPolicy::round_robin) {
                owners = rr_schedule(cursors_[sector], active, subbands_);
            } else {
                RateTable rates(active.size(), subbands_);
                std::vector<double> averages(active.size());
                for (std::size_t i = 0; i < active.size(); ++i) {
                    const FeedbackReport& r = consumed[active[i]];
                    averages[i] = average_[active[i]];
                    for (std::size_t b = 0; b < subbands_; ++b)
                        if (r.cqi[b] > 0)
                            rates.at(i, b) = static_cast<double>(transport_bits(
                                                 tables_.entry(r.cqi[b]), prbs_[b],
                                                 static_cast<int>(r.ri))) /
                                             tti_s;
                }
                owners = pf_schedule(rates, averages, cfg_.alpha, cfg_.beta);
            }

            for (std::size_t b = 0; b < subbands_; ++b) {
                const std::size_t u = active[owners[b]];
                const FeedbackReport& r = consumed[u];
                allocation[b] = Grant{u, r.ri, r.pmi, r.cqi[b]};
                if (r.cqi[b] == 0)
                    continue;

                const McsEntry& mcs = tables_.entry(r.cqi[b]);
                const CMatrix& w = codebook(point_.mode.tx, r.ri)[r.pmi].w;
                const CMatrix& h = links_[link_index(u, sector)].channel.h[b];
                const LayerSinrs layers = mmse_layer_sinrs(h, w, noise_norm_[u * subbands_ + b]);
                const double gamma = effective_sinr(
                    tables_,
                    std::span<const double>(layers.data(), static_cast<std::size_t>(layers.size())),
                    mcs.order, mcs.beta);
                const long bits = transport_bits(mcs, prbs_[b], static_cast<int>(r.ri));
                const bool ok = transmission_rng_[u].uniform() >= bler(gamma, mcs);
                ++blocks;
                granted[u] += bits;
                if (ok) {
                    delivered[u] += bits;
                    success[sector * subbands_ + b] = 1;
                } else {
                    ++failures;
                }
            }
        }

        if (observer) {
            TtiTrace trace;
            trace.tti = tti;
            trace.allocations = allocations;
            trace.delivered_bits = delivered;
            trace.granted_bits = granted;
            trace.block_success = success;
            trace.consumed_report_created_at = consumed_at;
            trace.consumed_reports = consumed;
            trace.serving_sector = serving_;
            observer(trace);
        }

        for (std::size_t u = 0; u < ues_; ++u) {
            delivered_total_[u] += delivered[u];
            average_[u] = update_average(average_[u], static_cast<double>(delivered[u]) / tti_s,
                                         cfg_.t_c, cfg_.pf_initial_average_bps);
        }

        for (std::size_t u = 0; u < ues_; ++u) {
            motion_[u] = step(motion_[u], tti_s, region_, mobility_rng_[u]);
            const std::size_t before = serving_[u];
            refresh_large_scale(u);
            if (serving_[u] != before)
                ++handovers_;
        }
    }

    RunResult result;
    result.point = point_;
    result.simulated_ues = ues_;
    result.handovers = handovers_;
    result.transmitted_blocks = blocks;
    result.failed_blocks = failures;
    const double duration = static_cast<double>(ttis) * tti_s;
    for (std::size_t u = 0; u < ues_; ++u) {
        if (cfg_.kpi_scope == KpiScope::center && home_site_[u] != 0)
            continue;
        result.per_ue_bps.push_back(static_cast<double>(delivered_total_[u]) / duration);
    }
    if (!result.per_ue_bps.empty())
        result.kpis = compute_kpis(result.per_ue_bps, cfg_.bandwidth_hz());
    return result;
}

}  // namespace

LayoutOptions layout_options(const SimConfig& config)
{
    LayoutOptions lo;
    lo.inter_site_distance_m = config.inter_site_distance_m;
    lo.rings = config.rings;
    lo.bs_height_m = config.bs_height_m;
    lo.azimuth_offset_deg = config.azimuth_offset_deg;
    lo.pattern.horizontal_hpbw_deg = config.horizontal_hpbw_deg;
    lo.pattern.vertical_hpbw_deg = config.vertical_hpbw_deg;
    lo.pattern.front_to_back_cap_db = config.front_to_back_db;
    lo.pattern.boresight_gain_dbi = config.antenna_gain_dbi;
    lo.pattern.downtilt_deg = config.downtilt_deg;
    return lo;
}

std::vector<double> interference_power(std::span<const InterfererView> interferers,
                                       std::size_t subbands)
{
    std::vector<double> out(subbands, 0.0);
    for (const InterfererView& view : interferers) {
        const auto& h = view.channel->h;
        const double per_antenna = view.rx_power / static_cast<double>(view.channel->rx());
        for (std::size_t b = 0; b < subbands; ++b)
            out[b] += per_antenna * (h[b] * view.precoders[b]).squaredNorm();
    }
    return out;
}

std::vector<int> subband_prbs(std::size_t prb_count, std::size_t subbands)
{
    if (subbands == 0 || subbands > prb_count)
        throw std::invalid_argument("subband count must lie in [1, prb_count]");
    std::vector<int> out(subbands, static_cast<int>(prb_count / subbands));
    const std::size_t extra = prb_count % subbands;
    for (std::size_t i = 0; i < extra; ++i)
        ++out[subbands - 1 - i];
    return out;
}

RunResult run_point(const SimConfig& config, const LinkTables& tables, const SweepPoint& point,
                    const RunHooks& hooks)
{
    config.validate();
    Simulation sim(config, tables, point, hooks);
    return sim.run(hooks.observer);
}

std::vector<SweepPoint> enumerate_sweep(const SimConfig& config)
{
    std::vector<SweepPoint> points;
    for (SchedulerPolicy scheduler : config.schedulers)
        for (const AntennaMode& mode : config.modes)
            for (double speed : config.speeds_kmph)
                for (std::size_t i = 0; i < config.seeds; ++i)
                    points.push_back({speed, scheduler, mode, config.base_seed + i});
    return points;
}

std::vector<RunResult> run_sweep(const SimConfig& config, const LinkTables& tables,
                                 std::size_t workers)
{
    config.validate();
    const std::vector<SweepPoint> points = enumerate_sweep(config);
    std::vector<RunResult> results(points.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size())
                return;
            try {
                results[i] = run_point(config, tables, points[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };

    const std::size_t n = std::max<std::size_t>(1, std::min(workers, points.size()));
    std::vector<std::thread> threads;
    for (std::size_t t = 1; t < n; ++t)
        threads.emplace_back(worker);
    worker();
    for (auto& t : threads)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

}  // namespace mobisim
