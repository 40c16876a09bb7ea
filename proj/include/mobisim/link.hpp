#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mobisim {

/// BICM mutual information of one Gray-mapped square QAM, sampled on an
/// SNR grid in dB and interpolated linearly in dB.
class MiCurve
{
  public:
    MiCurve() = default;
    MiCurve(int order, std::vector<double> snr_db, std::vector<double> mi_bits);

    int order() const { return order_; }
    std::span<const double> snr_db() const { return snr_db_; }
    std::span<const double> mi_bits() const { return mi_bits_; }

    /// Bits per symbol at linear SNR `snr` (≥ 0).
    double mi(double snr) const;

    /// Smallest linear SNR whose MI reaches `bits` (piecewise-linear inverse).
    double inverse(double bits) const;

  private:
    int order_ = 0;
    std::vector<double> snr_db_;
    std::vector<double> mi_bits_;
};

struct McsEntry {
    int cqi = 0;
    int order = 0;  ///< bits per symbol: 2, 4 or 6
    double code_rate = 0.0;
    double efficiency = 0.0;  ///< bits per resource element
    double threshold_db = 0.0;  ///< SINR at 10 % BLER
    double beta = 1.0;  ///< MIESM calibration
};

inline constexpr double kBlerSlopePerDb = 1.5;
inline constexpr int kDataResourceElementsPerPrb = 120;

/// Immutable lookup tables of the link-to-system mapping.
struct LinkTables {
    std::array<MiCurve, 3> curves;  ///< QPSK, 16-QAM, 64-QAM
    std::vector<McsEntry> mcs;  ///< CQI 1..15 in ascending order
    int max_order = 6;  ///< 4 restricts link adaptation to 16-QAM

    const MiCurve& curve(int order) const;
    const McsEntry& entry(int cqi) const { return mcs.at(static_cast<std::size_t>(cqi - 1)); }
    int max_cqi() const;
};

MiCurve load_mi_curve(const std::filesystem::path& file);
std::vector<McsEntry> load_mcs_table(const std::filesystem::path& file);

/// Loads bicm_mi_{qpsk,16qam,64qam}.txt and cqi_table.txt from `dir`.
LinkTables load_link_tables(const std::filesystem::path& dir);

/// Data directory configured at build time.
std::filesystem::path default_data_dir();

double bicm_mi(const LinkTables& tables, double snr, int order);

/// MIESM: β·I⁻¹( mean_i I(γ_i/β) ).
double effective_sinr(const LinkTables& tables, std::span<const double> sinrs, int order,
                      double beta);

/// Highest CQI whose threshold is ≤ `gamma_eff`; 0 if none.
int cqi_from_sinr(const LinkTables& tables, double gamma_eff);

/// CQI for a set of per-layer SINRs: the highest entry whose own-modulation
/// effective SINR clears its threshold.
int select_cqi(const LinkTables& tables, std::span<const double> layer_sinrs);

/// Logistic block-error model in dB, BLER(threshold) = 0.1.
double bler(double gamma_eff, const McsEntry& mcs);

/// Bits carried by one transport block.
long transport_bits(const McsEntry& mcs, int prb_count, int layers);

double to_db(double linear);
double from_db(double db);

}  // namespace mobisim
