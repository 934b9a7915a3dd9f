#pragma once

#include <array>

#include "grcs/bignat.hpp"
#include "grcs/gring.hpp"

namespace grcs {

/// 3x3 matrix over the group ring, row-major. The scalar ring is
/// noncommutative, so the factor order inside every entry product is
/// significant and preserved.
struct GRMatrix {
    std::array<GroupRingElement, 9> entries{};

    const GroupRingElement& at(int r, int c) const { return entries[r * 3 + c]; }
    GroupRingElement& at(int r, int c) { return entries[r * 3 + c]; }

    static GRMatrix identity();
    bool is_identity() const { return *this == identity(); }
    bool is_zero() const;
    bool operator==(const GRMatrix&) const = default;
};

GRMatrix operator+(const GRMatrix& a, const GRMatrix& b);
GRMatrix operator-(const GRMatrix& a);
GRMatrix operator*(const GRMatrix& a, const GRMatrix& b);
GRMatrix scalar_mul(uint8_t n, const GRMatrix& a);

/// a^e by left-to-right binary square-and-multiply; a^0 is the identity.
GRMatrix mat_pow(const GRMatrix& a, const BigNat& e);
GRMatrix mat_pow(const GRMatrix& a, uint64_t e);

/// All 9 entries drawn uniformly (coefficientwise) at random.
GRMatrix random_matrix(RandomSource& rng);

}  // namespace grcs
