#pragma once

#include <cstdint>
#include <random>

namespace aoi {

/// SplitMix64 finalizer. Used to turn user seeds and stream indices into
/// well-mixed engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniforms are built from the top 53 bits of each engine word, so
/// draws are bit-identical on every conforming platform (the standard
/// library's distribution classes are not, which is why they are avoided).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    /// Independent child stream `index` of `seed`.
    static RngStream substream(std::uint64_t seed, std::uint64_t index) {
        return RngStream(splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t draws() const noexcept { return draws_; }

    std::uint64_t next_u64() {
        ++draws_;
        return engine_();
    }

    /// Uniform on the open interval (0, 1).
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
    std::mt19937_64 engine_;
};

}  // namespace aoi
