#include "mobisim/mimo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace mobisim {

namespace {

constexpr Complex kJ{0.0, 1.0};

std::vector<std::vector<Precoder>> build_two_antenna()
{
    const double s2 = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<Precoder>> books(2);

    const std::array<Complex, 4> second{1.0, -1.0, kJ, -kJ};
    for (std::size_t i = 0; i < second.size(); ++i) {
        CMatrix w(2, 1);
        w << s2, s2 * second[i];
        books[0].push_back({w, i, 1});
    }

    CMatrix w0(2, 2), w1(2, 2), w2(2, 2);
    w0 << s2, 0.0, 0.0, s2;
    w1 << 0.5, 0.5, 0.5, -0.5;
    w2 << 0.5, 0.5, 0.5 * kJ, -0.5 * kJ;
    books[1].push_back({w0, 0, 2});
    books[1].push_back({w1, 1, 2});
    books[1].push_back({w2, 2, 2});
    return books;
}

std::vector<std::vector<Precoder>> build_four_antenna()
{
    const double s2 = 1.0 / std::sqrt(2.0);
    const std::array<std::array<Complex, 4>, 16> u{{
        {1.0, -1.0, -1.0, -1.0},
        {1.0, -kJ, 1.0, kJ},
        {1.0, 1.0, -1.0, 1.0},
        {1.0, kJ, 1.0, -kJ},
        {1.0, s2 * (-1.0 - kJ), -kJ, s2 * (1.0 - kJ)},
        {1.0, s2 * (1.0 - kJ), kJ, s2 * (-1.0 - kJ)},
        {1.0, s2 * (1.0 + kJ), -kJ, s2 * (-1.0 + kJ)},
        {1.0, s2 * (-1.0 + kJ), kJ, s2 * (1.0 + kJ)},
        {1.0, -1.0, 1.0, 1.0},
        {1.0, -kJ, -1.0, -kJ},
        {1.0, 1.0, 1.0, -1.0},
        {1.0, kJ, -1.0, kJ},
        {1.0, -1.0, -1.0, 1.0},
        {1.0, -1.0, 1.0, -1.0},
        {1.0, 1.0, -1.0, -1.0},
        {1.0, 1.0, 1.0, 1.0},
    }};
    // Column selections (1-based) for ranks 2, 3 and 4; rank 1 always uses column 1.
    const std::array<std::array<int, 2>, 16> rank2{{{1, 4}, {1, 2}, {1, 2}, {1, 2}, {1, 4}, {1, 4},
                                                    {1, 3}, {1, 3}, {1, 2}, {1, 4}, {1, 3}, {1, 3},
                                                    {1, 2}, {1, 3}, {1, 3}, {1, 2}}};
    const std::array<std::array<int, 3>, 16> rank3{
        {{1, 2, 4}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2, 4}, {1, 2, 4}, {1, 3, 4}, {1, 3, 4},
         {1, 2, 4}, {1, 3, 4}, {1, 2, 3}, {1, 3, 4}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}}};
    const std::array<std::array<int, 4>, 16> rank4{
        {{1, 2, 3, 4}, {1, 2, 3, 4}, {3, 2, 1, 4}, {3, 2, 1, 4}, {1, 2, 3, 4}, {1, 2, 3, 4},
         {1, 3, 2, 4}, {1, 3, 2, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}, {1, 3, 2, 4}, {1, 3, 2, 4},
         {1, 2, 3, 4}, {1, 3, 2, 4}, {3, 2, 1, 4}, {1, 2, 3, 4}}};

    std::vector<std::vector<Precoder>> books(4);
    for (std::size_t n = 0; n < u.size(); ++n) {
        CVector un(4);
        for (int i = 0; i < 4; ++i)
            un(i) = u[n][i];
        const double norm2 = un.squaredNorm();
        const CMatrix householder =
            CMatrix::Identity(4, 4) - (2.0 / norm2) * (un * un.adjoint());

        auto select = [&](auto cols) {
            const auto rank = static_cast<Eigen::Index>(cols.size());
            CMatrix w(4, rank);
            for (Eigen::Index c = 0; c < rank; ++c)
                w.col(c) = householder.col(cols[c] - 1);
            w /= std::sqrt(static_cast<double>(rank));
            return Precoder{w, n, static_cast<std::size_t>(rank)};
        };
        books[0].push_back(select(std::array<int, 1>{1}));
        books[1].push_back(select(rank2[n]));
        books[2].push_back(select(rank3[n]));
        books[3].push_back(select(rank4[n]));
    }
    return books;
}

// Diagonal of the inverse of a small Hermitian positive-definite matrix.
RVector inverse_diagonal(const CMatrix& a)
{
    const Eigen::Index n = a.rows();
    RVector d(n);
    switch (n) {
    case 1:
        d(0) = 1.0 / a(0, 0).real();
        break;
    case 2: {
        const double det = a(0, 0).real() * a(1, 1).real() - std::norm(a(0, 1));
        d(0) = a(1, 1).real() / det;
        d(1) = a(0, 0).real() / det;
        break;
    }
    case 3: {
        const Eigen::Matrix<Complex, 3, 3> inv = Eigen::Matrix<Complex, 3, 3>(a).inverse();
        for (int k = 0; k < 3; ++k)
            d(k) = inv(k, k).real();
        break;
    }
    case 4: {
        const Eigen::Matrix<Complex, 4, 4> inv = Eigen::Matrix<Complex, 4, 4>(a).inverse();
        for (int k = 0; k < 4; ++k)
            d(k) = inv(k, k).real();
        break;
    }
    default:
        throw std::invalid_argument("layer count must be 1..4");
    }
    return d;
}

}  // namespace

const std::vector<Precoder>& codebook(std::size_t tx, std::size_t rank)
{
    static const auto two = build_two_antenna();
    static const auto four = build_four_antenna();
    if (tx == 2 && rank >= 1 && rank <= 2)
        return two[rank - 1];
    if (tx == 4 && rank >= 1 && rank <= 4)
        return four[rank - 1];
    throw std::invalid_argument("no codebook for tx=" + std::to_string(tx) +
                                " rank=" + std::to_string(rank));
}

LayerSinrs mmse_sinrs_from_gram(const CMatrix& normalized_gram)
{
    const Eigen::Index r = normalized_gram.rows();
    if (normalized_gram.cwiseAbs2().sum() == 0.0)
        return LayerSinrs::Zero(r);
    const CMatrix a = CMatrix::Identity(r, r) + normalized_gram;
    const RVector d = inverse_diagonal(a);
    LayerSinrs out(r);
    for (Eigen::Index k = 0; k < r; ++k)
        out(k) = std::max(0.0, 1.0 / d(k) - 1.0);
    return out;
}

LayerSinrs mmse_layer_sinrs(const CMatrix& h, const CMatrix& w, double noise_power)
{
    if (h.cols() != w.rows())
        throw std::invalid_argument("channel and precoder dimensions disagree");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("noise power must be positive");
    const CMatrix g = h * w;
    const CMatrix gram = (g.adjoint() * g) / noise_power;
    return mmse_sinrs_from_gram(gram);
}

double sum_rate(const LayerSinrs& sinrs)
{
    double total = 0.0;
    for (Eigen::Index k = 0; k < sinrs.size(); ++k)
        total += std::log2(1.0 + sinrs(k));
    return total;
}

std::vector<LayerSinrs> layer_sinrs_per_subband(std::span<const CMatrix> h,
                                                std::span<const double> noise_power,
                                                const CMatrix& w)
{
    std::vector<LayerSinrs> out;
    out.reserve(h.size());
    for (std::size_t s = 0; s < h.size(); ++s)
        out.push_back(mmse_layer_sinrs(h[s], w, noise_power[s]));
    return out;
}

RankPmiChoice select_rank_pmi(std::span<const CMatrix> h, std::span<const double> noise_power,
                              std::size_t max_rank_cap)
{
    if (h.empty() || h.size() != noise_power.size())
        throw std::invalid_argument("need one noise power per subband");
    const auto tx = static_cast<std::size_t>(h.front().cols());
    const auto rx = static_cast<std::size_t>(h.front().rows());
    const std::size_t max_rank = std::min({max_rank_cap, tx, rx});
    if (max_rank == 0)
        throw std::invalid_argument("rank cap must be at least 1");

    // Noise-normalized HᴴH per subband; every precoder is scored as WᴴAW.
    std::vector<CMatrix> normalized;
    normalized.reserve(h.size());
    for (std::size_t s = 0; s < h.size(); ++s)
        normalized.push_back((h[s].adjoint() * h[s]) / noise_power[s]);

    RankPmiChoice best;
    best.score = -1.0;
    for (std::size_t rank = 1; rank <= max_rank; ++rank) {
        for (const Precoder& p : codebook(tx, rank)) {
            double score = 0.0;
            for (const CMatrix& a : normalized)
                score += sum_rate(mmse_sinrs_from_gram(p.w.adjoint() * a * p.w));
            if (score > best.score) {
                best.score = score;
                best.rank = rank;
                best.codebook_index = p.codebook_index;
            }
        }
    }
    const CMatrix& w = codebook(tx, best.rank)[best.codebook_index].w;
    best.per_subband.reserve(h.size());
    for (const CMatrix& a : normalized)
        best.per_subband.push_back(mmse_sinrs_from_gram(w.adjoint() * a * w));
    return best;
}

}  // namespace mobisim
