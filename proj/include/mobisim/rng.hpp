#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace mobisim {

// Finalizer of SplitMix64 (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Fold a tuple of identifiers into one 64-bit stream key.
constexpr std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) noexcept
{
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (auto p : parts)
        h = mix64(h ^ mix64(p + 0x9e3779b97f4a7c15ULL));
    return h;
}

/// Purposes of independent streams. Every random quantity in a run is drawn
/// from a stream keyed by (seed, purpose, entity ids), so results never
/// depend on the order in which entities are processed.
enum class StreamPurpose : std::uint64_t {
    ue_drop = 1,
    shadowing = 2,
    fading_initial = 3,
    fading_innovation = 4,
    interferer_precoder = 5,
    transmission = 6,
    mobility = 7,
};

/// Counter-based generator: output n is a bijective mix of key + n·γ.
/// Satisfies UniformRandomBitGenerator; state is two words so one can be
/// held per link.
class CounterRng
{
  public:
    using result_type = std::uint64_t;

    constexpr explicit CounterRng(std::uint64_t key = 0) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() noexcept
    {
        return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() noexcept
    {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    constexpr std::uint64_t key() const noexcept { return key_; }
    constexpr std::uint64_t counter() const noexcept { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

inline CounterRng make_stream(std::uint64_t seed, StreamPurpose purpose,
                              std::uint64_t a = 0, std::uint64_t b = 0,
                              std::uint64_t c = 0)
{
    return CounterRng(stream_key({seed, static_cast<std::uint64_t>(purpose), a, b, c}));
}

}  // namespace mobisim
