#include "mobisim/link.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifndef MOBISIM_DATA_DIR
#define MOBISIM_DATA_DIR "data"
#endif

namespace mobisim {

namespace {

std::vector<std::vector<double>> read_numeric_rows(const std::filesystem::path& file,
                                                   std::size_t columns)
{
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot open data file " + file.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line);
        std::vector<double> row(columns);
        for (auto& v : row)
            if (!(fields >> v))
                throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                         ": expected " + std::to_string(columns) + " columns");
        rows.push_back(std::move(row));
    }
    return rows;
}

int order_from_header(const std::filesystem::path& file)
{
    std::ifstream in(file);
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.find("order");
        if (line.rfind('#', 0) == 0 && pos != std::string::npos)
            return std::stoi(line.substr(pos + 5));
    }
    throw std::runtime_error(file.string() + ": missing '# order N' header");
}

}  // namespace

double to_db(double linear)
{
    return linear > 0.0 ? 10.0 * std::log10(linear) : -std::numeric_limits<double>::infinity();
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

MiCurve::MiCurve(int order, std::vector<double> snr_db, std::vector<double> mi_bits)
    : order_(order), snr_db_(std::move(snr_db)), mi_bits_(std::move(mi_bits))
{
    if (order_ != 2 && order_ != 4 && order_ != 6)
        throw std::invalid_argument("modulation order must be 2, 4 or 6");
    if (snr_db_.size() < 2 || snr_db_.size() != mi_bits_.size())
        throw std::invalid_argument("MI table needs at least two matching samples");
    for (std::size_t i = 1; i < snr_db_.size(); ++i) {
        if (!(snr_db_[i] > snr_db_[i - 1]))
            throw std::invalid_argument("MI table SNR grid must be strictly increasing");
        if (mi_bits_[i] < mi_bits_[i - 1])
            throw std::invalid_argument("MI table must be non-decreasing");
    }
    if (mi_bits_.front() < 0.0 || mi_bits_.back() > order_ + 1e-12)
        throw std::invalid_argument("MI values must lie in [0, order]");
}

double MiCurve::mi(double snr) const
{
    if (!(snr > 0.0))
        return 0.0;
    const double db = to_db(snr);
    if (db <= snr_db_.front())
        return mi_bits_.front() * snr / from_db(snr_db_.front());
    if (db >= snr_db_.back())
        return static_cast<double>(order_);
    const auto it = std::upper_bound(snr_db_.begin(), snr_db_.end(), db);
    const std::size_t hi = static_cast<std::size_t>(it - snr_db_.begin());
    const std::size_t lo = hi - 1;
    const double t = (db - snr_db_[lo]) / (snr_db_[hi] - snr_db_[lo]);
    return mi_bits_[lo] + t * (mi_bits_[hi] - mi_bits_[lo]);
}

double MiCurve::inverse(double bits) const
{
    if (!(bits > 0.0))
        return 0.0;
    if (bits <= mi_bits_.front())
        return from_db(snr_db_.front()) * bits / mi_bits_.front();
    if (bits >= mi_bits_.back())
        return from_db(snr_db_.back());
    // First node with MI ≥ bits; the segment below it brackets the target.
    const auto it = std::lower_bound(mi_bits_.begin(), mi_bits_.end(), bits);
    const std::size_t hi = static_cast<std::size_t>(it - mi_bits_.begin());
    const std::size_t lo = hi - 1;
    const double t = (bits - mi_bits_[lo]) / (mi_bits_[hi] - mi_bits_[lo]);
    return from_db(snr_db_[lo] + t * (snr_db_[hi] - snr_db_[lo]));
}

const MiCurve& LinkTables::curve(int order) const
{
    switch (order) {
    case 2: return curves[0];
    case 4: return curves[1];
    case 6: return curves[2];
    default: throw std::invalid_argument("modulation order must be 2, 4 or 6");
    }
}

int LinkTables::max_cqi() const
{
    int best = 0;
    for (const auto& e : mcs)
        if (e.order <= max_order)
            best = std::max(best, e.cqi);
    return best;
}

MiCurve load_mi_curve(const std::filesystem::path& file)
{
    const int order = order_from_header(file);
    std::vector<double> snr, mi;
    for (const auto& row : read_numeric_rows(file, 2)) {
        snr.push_back(row[0]);
        mi.push_back(row[1]);
    }
    return MiCurve(order, std::move(snr), std::move(mi));
}

std::vector<McsEntry> load_mcs_table(const std::filesystem::path& file)
{
    std::vector<McsEntry> table;
    for (const auto& row : read_numeric_rows(file, 5)) {
        McsEntry e;
        e.cqi = static_cast<int>(row[0]);
        e.order = static_cast<int>(row[1]);
        e.code_rate = row[2];
        e.efficiency = row[3];
        e.threshold_db = row[4];
        table.push_back(e);
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].cqi != static_cast<int>(i) + 1)
            throw std::runtime_error(file.string() + ": CQI indices must run 1..N in order");
        if (i > 0 && !(table[i].threshold_db > table[i - 1].threshold_db))
            throw std::runtime_error(file.string() + ": thresholds must strictly increase");
    }
    return table;
}

std::filesystem::path default_data_dir()
{
    if (const char* env = std::getenv("MOBISIM_DATA_DIR"); env && *env)
        return env;
    return MOBISIM_DATA_DIR;
}

LinkTables load_link_tables(const std::filesystem::path& dir)
{
    LinkTables t;
    t.curves[0] = load_mi_curve(dir / "bicm_mi_qpsk.txt");
    t.curves[1] = load_mi_curve(dir / "bicm_mi_16qam.txt");
    t.curves[2] = load_mi_curve(dir / "bicm_mi_64qam.txt");
    t.mcs = load_mcs_table(dir / "cqi_table.txt");
    return t;
}

double bicm_mi(const LinkTables& tables, double snr, int order)
{
    return tables.curve(order).mi(snr);
}

double effective_sinr(const LinkTables& tables, std::span<const double> sinrs, int order,
                      double beta)
{
    if (sinrs.empty())
        throw std::invalid_argument("effective_sinr needs at least one SINR");
    if (!(beta > 0.0))
        throw std::invalid_argument("beta must be positive");
    const auto [lo, hi] = std::minmax_element(sinrs.begin(), sinrs.end());
    if (*lo == *hi)
        return *lo;
    const MiCurve& curve = tables.curve(order);
    double mean = 0.0;
    for (double g : sinrs)
        mean += curve.mi(g / beta);
    mean /= static_cast<double>(sinrs.size());
    return std::clamp(beta * curve.inverse(mean), *lo, *hi);
}

int cqi_from_sinr(const LinkTables& tables, double gamma_eff)
{
    const double db = to_db(gamma_eff);
    int cqi = 0;
    for (const auto& e : tables.mcs)
        if (e.order <= tables.max_order && e.threshold_db <= db + 1e-9)
            cqi = e.cqi;
    return cqi;
}

int select_cqi(const LinkTables& tables, std::span<const double> layer_sinrs)
{
    std::array<double, 7> eff_db{};
    std::array<bool, 7> have{};
    for (auto it = tables.mcs.rbegin(); it != tables.mcs.rend(); ++it) {
        if (it->order > tables.max_order)
            continue;
        const auto o = static_cast<std::size_t>(it->order);
        if (!have[o] || it->beta != 1.0) {
            eff_db[o] = to_db(effective_sinr(tables, layer_sinrs, it->order, it->beta));
            have[o] = it->beta == 1.0;
        }
        if (eff_db[o] + 1e-9 >= it->threshold_db)
            return it->cqi;
    }
    return 0;
}

double bler(double gamma_eff, const McsEntry& mcs)
{
    if (!(gamma_eff > 0.0))
        return 1.0;
    const double center = mcs.threshold_db - std::log(9.0) / kBlerSlopePerDb;
    return 1.0 / (1.0 + std::exp(kBlerSlopePerDb * (to_db(gamma_eff) - center)));
}

long transport_bits(const McsEntry& mcs, int prb_count, int layers)
{
    if (prb_count < 1 || layers < 1)
        throw std::invalid_argument("transport block needs at least one PRB and one layer");
    return static_cast<long>(
        std::floor(mcs.efficiency * kDataResourceElementsPerPrb * prb_count * layers));
}

}  // namespace mobisim
