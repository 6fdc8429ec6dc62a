#include "rtasim/random.hpp"

#include <cmath>

namespace rtasim {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words)
{
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (std::uint64_t w : words) {
        h = splitmix64(h ^ splitmix64(w));
    }
    return h;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RandomStream::exponential(double rate)
{
    // u in (0, 1): the top 53 bits offset by half an ulp, so -log(u) > 0.
    const auto bits = engine_() >> 11;
    const double u = (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    return -std::log(u) / rate;
}

}  // namespace rtasim
