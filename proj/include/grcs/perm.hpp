#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace grcs {

inline constexpr int kPoints = 5;    // degree of the symmetric group
inline constexpr int kOrder = 120;   // 5!

/// A permutation of {0,...,4}. images[i] is where point i maps.
struct Permutation {
    std::array<uint8_t, kPoints> images{0, 1, 2, 3, 4};

    static Permutation identity() { return Permutation{}; }

    /// Validating constructor; throws std::invalid_argument unless
    /// images is a bijection on {0,...,4}.
    static Permutation from_images(std::span<const uint8_t> images);

    uint8_t operator()(uint8_t x) const { return images[x]; }
    bool operator==(const Permutation&) const = default;
};

/// (p*q)(x) = p(q(x)): the right factor acts first.
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);

/// Lexicographic position of p.images among all 120 image sequences
/// (Lehmer code in factorial base). rank(identity) == 0.
int rank(const Permutation& p);

/// Inverse of rank. Throws std::out_of_range unless 0 <= index < 120.
Permutation unrank(int index);

}  // namespace grcs
