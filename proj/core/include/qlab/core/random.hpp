// random.hpp - counter-based random source with per-shot stream derivation

#pragma once

#include <cstdint>
#include <limits>

namespace qlab {

std::uint64_t splitmix64(std::uint64_t x);

// Draw i of a stream is a pure function of (key, i), so a shot can be replayed
// or evaluated out of order. Satisfies UniformRandomBitGenerator.
class RandomSource {
public:
    using result_type = std::uint64_t;

    explicit RandomSource(std::uint64_t seed = 0, std::uint64_t stream = 0);

    // Independent child stream, e.g. one per Monte-Carlo shot.
    RandomSource fork(std::uint64_t index) const;

    result_type operator()() { return at(counter_++); }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type at(std::uint64_t i) const;
    double uniform_at(std::uint64_t i) const;

    double uniform() { return uniform_at(counter_++); }
    bool bernoulli(double p) { return uniform() < p; }
    double normal();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Number of draws i in [0, n) of `rng` with uniform_at(i) < p.
std::uint64_t count_successes(const RandomSource& rng, double p, std::uint64_t n);

}  // namespace qlab
