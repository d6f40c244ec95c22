#include "qlab/core/random.hpp"

#include <cmath>

#include "qlab/core/types.hpp"

namespace qlab {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), key_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

RandomSource RandomSource::fork(std::uint64_t index) const {
    RandomSource child(seed_);
    child.key_ = splitmix64(key_ ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
    return child;
}

RandomSource::result_type RandomSource::at(std::uint64_t i) const {
    return splitmix64(key_ + i * kGolden);
}

double RandomSource::uniform_at(std::uint64_t i) const {
    // 53 high bits -> [0, 1)
    return static_cast<double>(at(i) >> 11) * 0x1.0p-53;
}

double RandomSource::normal() {
    // Box-Muller on two consecutive draws; deterministic across platforms.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::uint64_t count_successes(const RandomSource& rng, double p, std::uint64_t n) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) hits += rng.uniform_at(i) < p ? 1 : 0;
    return hits;
}

}  // namespace qlab
