#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rtasim {

/// Mixes a list of words into one 64-bit seed (splitmix64 finalizer chain).
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words);

/**
 * One independent pseudo-random stream. Streams built from the same
 * (seed, stream_id) pair produce identical sequences.
 */
class RandomStream {
public:
    using engine_type = std::mt19937_64;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(engine_);
    }

    /// Exponential variate with the given rate; always strictly positive.
    double exponential(double rate);

    engine_type& engine() { return engine_; }

private:
    engine_type engine_;
};

}  // namespace rtasim
