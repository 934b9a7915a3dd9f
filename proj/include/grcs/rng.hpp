#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace grcs {

/// Source of random 64-bit words. Derived helpers consume whole words so
/// that a fixed word sequence maps to a fixed output sequence on every
/// platform. A source is owned by one caller at a time.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual uint64_t next_u64() = 0;

    /// Uniform value in [0, bound); bound >= 1. Rejection sampling on the
    /// low bits of fresh words.
    uint64_t uniform_below(uint64_t bound);

    /// One uniform residue 0..6.
    uint8_t residue() { return uint8_t(uniform_below(7)); }

    /// count bytes, big-endian within each consumed word.
    std::vector<uint8_t> bytes(size_t count);
};

/// Operating-system entropy (getrandom/urandom). Suitable for key material.
class SystemRandomSource final : public RandomSource {
public:
    SystemRandomSource();
    uint64_t next_u64() override;

private:
    void refill();
    std::vector<uint8_t> buf_;
    size_t pos_ = 0;
};

/// Deterministic generator for tests, experiments and benchmark runs.
/// Never use for real key material.
class SeededRandomSource final : public RandomSource {
public:
    explicit SeededRandomSource(uint64_t seed) : gen_(seed) {}
    uint64_t next_u64() override { return gen_(); }

private:
    std::mt19937_64 gen_;
};

/// splitmix64 output step; freezes the (seed, label) -> stream mapping.
uint64_t mix_u64(uint64_t x);

/// Independent deterministic stream for a given (seed, label) pair.
/// Experiments derive one stream per trial from the experiment seed.
SeededRandomSource derive_stream(uint64_t seed, uint64_t label);

}  // namespace grcs
