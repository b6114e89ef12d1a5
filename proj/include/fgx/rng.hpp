#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace fgx {

// Stream purposes. Environment draws (activations, rewards) are keyed
// separately from algorithm-internal randomness so that adding or removing
// algorithm draws never perturbs the environment sequence.
enum class StreamPurpose : std::uint64_t {
    activations = 1,
    rewards = 2,
    algorithm = 3,
};

namespace detail {

// SplitMix64 finalizer. Used both for key derivation and per-counter output.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

}  // namespace detail

// Counter-based generator: the i-th draw is a pure function of
// (seed, run, purpose, i). Identical identifiers reproduce identical draw
// sequences regardless of platform or thread interleaving.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t run, StreamPurpose purpose)
        : counter_(0) {
        using detail::golden_gamma;
        using detail::mix64;
        key_ = mix64(seed + golden_gamma);
        key_ = mix64(key_ ^ mix64(run + 2 * golden_gamma));
        key_ = mix64(key_ ^ mix64(static_cast<std::uint64_t>(purpose) + 3 * golden_gamma));
    }

    std::uint64_t next_u64() {
        ++counter_;
        return detail::mix64(key_ + counter_ * detail::golden_gamma);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log argument.
    double uniform_open01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Box-Muller; consumes exactly two draws.
    double standard_normal() {
        const double u1 = uniform_open01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    double gaussian(double mean, double variance) {
        return mean + std::sqrt(variance) * standard_normal();
    }

    // Samples an index from an unnormalized nonnegative weight vector.
    int categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double x = uniform01() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            x -= weights[i];
            if (x < 0.0) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace fgx
