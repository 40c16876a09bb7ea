#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mobisim/linalg.hpp"

namespace mobisim {

/// One codebook entry. Columns are orthogonal with wᴴw = I / rank, so the
/// total transmit power is independent of the rank.
struct Precoder {
    CMatrix w;
    std::size_t codebook_index = 0;
    std::size_t rank = 0;
};

/// Per-layer post-combining SINRs (linear), one entry per layer.
using LayerSinrs = RVector;

/// Closed-loop spatial-multiplexing downlink codebook for 2 or 4 transmit
/// antennas (2-antenna: 4 rank-1 and 3 rank-2 entries; 4-antenna: 16
/// Householder entries per rank). Throws std::invalid_argument otherwise.
const std::vector<Precoder>& codebook(std::size_t tx, std::size_t rank);

/// Post-MMSE SINR per layer: 1 / [(I + GᴴG/σ²)⁻¹]_kk − 1 with G = h·w.
LayerSinrs mmse_layer_sinrs(const CMatrix& h, const CMatrix& w, double noise_power);

/// Same quantity from the precomputed r×r matrix GᴴG/σ².
LayerSinrs mmse_sinrs_from_gram(const CMatrix& normalized_gram);

/// Sum over layers of log2(1 + γ).
double sum_rate(const LayerSinrs& sinrs);

struct RankPmiChoice {
    std::size_t rank = 1;
    std::size_t codebook_index = 0;
    double score = 0.0;  ///< Σ_subbands Σ_layers log2(1 + γ)
    std::vector<LayerSinrs> per_subband;
};

/// Exhaustive wideband rank/PMI search maximizing the summed per-layer
/// Shannon rate over all subbands. `noise_power[s]` is the noise-plus-
/// interference power on subband s in the same units as |h|². Ties go to
/// the lower rank, then the lower codebook index.
RankPmiChoice select_rank_pmi(std::span<const CMatrix> h, std::span<const double> noise_power,
                              std::size_t max_rank_cap);

/// Per-layer SINRs on every subband for a fixed precoder.
std::vector<LayerSinrs> layer_sinrs_per_subband(std::span<const CMatrix> h,
                                                std::span<const double> noise_power,
                                                const CMatrix& w);

}  // namespace mobisim
