#include "grcs/perm.hpp"

#include <stdexcept>

namespace grcs {

namespace {
constexpr int kFactorial[kPoints] = {24, 6, 2, 1, 1};  // (4-i)!
}

Permutation Permutation::from_images(std::span<const uint8_t> images) {
    if (images.size() != kPoints)
        throw std::invalid_argument("permutation needs exactly 5 images");
    bool seen[kPoints] = {};
    for (uint8_t v : images) {
        if (v >= kPoints || seen[v])
            throw std::invalid_argument("permutation images must be a bijection on 0..4");
        seen[v] = true;
    }
    Permutation p;
    for (int i = 0; i < kPoints; ++i) p.images[i] = images[i];
    return p;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    Permutation r;
    for (int x = 0; x < kPoints; ++x) r.images[x] = p.images[q.images[x]];
    return r;
}

Permutation inverse(const Permutation& p) {
    Permutation r;
    for (int x = 0; x < kPoints; ++x) r.images[p.images[x]] = uint8_t(x);
    return r;
}

int rank(const Permutation& p) {
    int r = 0;
    for (int i = 0; i < kPoints; ++i) {
        int smaller_later = 0;
        for (int j = i + 1; j < kPoints; ++j)
            if (p.images[j] < p.images[i]) ++smaller_later;
        r += smaller_later * kFactorial[i];
    }
    return r;
}

Permutation unrank(int index) {
    if (index < 0 || index >= kOrder)
        throw std::out_of_range("permutation index must be in 0..119");
    uint8_t pool[kPoints] = {0, 1, 2, 3, 4};
    int remaining = kPoints;
    Permutation p;
    for (int i = 0; i < kPoints; ++i) {
        const int digit = index / kFactorial[i];
        index %= kFactorial[i];
        p.images[i] = pool[digit];
        for (int j = digit; j + 1 < remaining; ++j) pool[j] = pool[j + 1];
        --remaining;
    }
    return p;
}

}  // namespace grcs
