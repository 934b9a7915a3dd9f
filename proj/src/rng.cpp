#include "grcs/rng.hpp"

#include <bit>
#include <cstdio>
#include <stdexcept>

#if defined(__linux__)
#include <sys/random.h>
#endif

namespace grcs {

uint64_t RandomSource::uniform_below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    if (bound == 1) return 0;
    const int bits = std::bit_width(bound - 1);
    const uint64_t mask = (bits >= 64) ? ~uint64_t(0) : ((uint64_t(1) << bits) - 1);
    for (;;) {
        const uint64_t v = next_u64() & mask;
        if (v < bound) return v;
    }
}

std::vector<uint8_t> RandomSource::bytes(size_t count) {
    std::vector<uint8_t> out(count);
    size_t i = 0;
    while (i < count) {
        uint64_t w = next_u64();
        for (int b = 7; b >= 0 && i < count; --b) out[i++] = uint8_t(w >> (8 * b));
    }
    return out;
}

SystemRandomSource::SystemRandomSource() : buf_(4096), pos_(buf_.size()) {}

void SystemRandomSource::refill() {
    size_t got = 0;
#if defined(__linux__)
    while (got < buf_.size()) {
        const ssize_t n = getrandom(buf_.data() + got, buf_.size() - got, 0);
        if (n < 0) break;
        got += size_t(n);
    }
#endif
    if (got < buf_.size()) {
        std::FILE* f = std::fopen("/dev/urandom", "rb");
        if (!f || std::fread(buf_.data() + got, 1, buf_.size() - got, f) != buf_.size() - got) {
            if (f) std::fclose(f);
            throw std::runtime_error("no operating-system entropy source available");
        }
        std::fclose(f);
    }
    pos_ = 0;
}

uint64_t SystemRandomSource::next_u64() {
    if (pos_ + 8 > buf_.size()) refill();
    uint64_t w = 0;
    for (int i = 0; i < 8; ++i) w = (w << 8) | buf_[pos_++];
    return w;
}

uint64_t mix_u64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

SeededRandomSource derive_stream(uint64_t seed, uint64_t label) {
    return SeededRandomSource(mix_u64(seed ^ (0x9E3779B97F4A7C15ull * (label + 1))));
}

}  // namespace grcs
