#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "grcs/gf7.hpp"
#include "grcs/perm.hpp"
#include "grcs/rng.hpp"

namespace grcs {

/// Rank-indexed multiplication and inversion tables for the 120-element
/// group. Built once on first use, immutable afterwards, safe to share
/// between threads.
class GroupTables {
public:
    static const GroupTables& instance();

    /// rank(unrank(i) * unrank(j))
    uint8_t product(int i, int j) const { return mul_[i][j]; }
    const std::array<uint8_t, kOrder>& product_row(int i) const { return mul_[i]; }
    uint8_t inverse(int i) const { return inv_[i]; }

private:
    GroupTables();
    std::array<std::array<uint8_t, kOrder>, kOrder> mul_;
    std::array<uint8_t, kOrder> inv_;
};

/// Element of the group algebra over the 7-element field: 120 residues,
/// coeffs[i] belonging to the permutation unrank(i).
struct GroupRingElement {
    std::array<uint8_t, kOrder> coeffs{};

    bool operator==(const GroupRingElement&) const = default;
    bool is_zero() const;
};

GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement operator-(const GroupRingElement& a);
GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b);
/// Convolution product; coefficient of g in a*b is sum over h of
/// a(h) * b(h^-1 g).
GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);

GroupRingElement scalar_mul(uint8_t n, const GroupRingElement& a);

/// Monomial 1*p.
GroupRingElement embed_group(const Permutation& p);
/// n at the identity permutation; embed_scalar(1) is the ring identity.
GroupRingElement embed_scalar(uint8_t n);

/// Unreduced convolution accumulator. Adding one product contributes at
/// most 120*36 = 4320 per slot, so up to 15 products fit in uint16.
using ConvolutionAcc = std::array<uint16_t, kOrder>;
void convolve_accumulate(ConvolutionAcc& acc, const GroupRingElement& a,
                         const GroupRingElement& b);
GroupRingElement reduce(const ConvolutionAcc& acc);

/// Left regular representation: column j holds the coefficients of
/// a * unrank(j). A ring homomorphism into the 120x120 matrices mod 7.
Gf7Matrix regular_representation(const GroupRingElement& a);

/// True iff the regular representation has full rank 120.
bool is_unit(const GroupRingElement& a);

/// Two-sided inverse of a unit, found by solving rep(a) x = e1.
/// nullopt when a is not a unit.
std::optional<GroupRingElement> invert_unit(const GroupRingElement& a);

/// All 120 coefficients drawn independently and uniformly from 0..6.
GroupRingElement random_element(RandomSource& rng);

}  // namespace grcs
