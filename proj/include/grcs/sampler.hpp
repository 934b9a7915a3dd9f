#pragma once

#include "grcs/gmatrix.hpp"

namespace grcs {

enum class Orientation { upper, lower };

/// Monomial unit n*u with n in 1..6 and u a permutation. Always
/// invertible: (n*u)^-1 = n^-1 * u^-1.
struct MonomialUnit {
    uint8_t scalar = 1;  // nonzero residue
    Permutation perm;

    GroupRingElement to_element() const;
    MonomialUnit inverted() const;
};

/// Unit triangular 3x3 factor. Diagonal entries are monomial units, the
/// three off-diagonal entries are arbitrary ring elements: for upper
/// orientation they sit at (0,1),(0,2),(1,2), for lower at
/// (1,0),(2,0),(2,1), in that order.
struct TriangularFactor {
    Orientation orientation = Orientation::upper;
    std::array<MonomialUnit, 3> diagonal;
    std::array<GroupRingElement, 3> off_diag;

    GRMatrix to_matrix() const;
};

/// Diagonal monomials uniform over n in 1..6 and u in the group;
/// off-diagonal entries uniform random elements.
TriangularFactor random_unit_triangular(RandomSource& rng, Orientation orientation);

/// Closed-form inverse of a unit triangular factor. For the upper factor
/// with diagonal u1,u2,u3 and off-diagonal g1,g2,g3 the inverse is upper
/// triangular with diagonal u1^-1,u2^-1,u3^-1 and
///   (0,1): -u1^-1 g1 u2^-1
///   (0,2):  u1^-1 g1 u2^-1 g3 u3^-1 - u1^-1 g2 u3^-1
///   (1,2): -u2^-1 g3 u3^-1
/// The lower case mirrors this; the transpose shortcut does not hold over
/// a noncommutative ring, so the mirrored formulas are spelled out.
GRMatrix triangular_inverse(const TriangularFactor& t);

/// An invertible matrix together with its tracked two-sided inverse.
struct InvertibleMatrixPair {
    GRMatrix m;
    GRMatrix m_inv;
};

/// Product of `factors` independent random unit triangular factors, each
/// upper or lower by a fair coin; the inverse is the reversed product of
/// the factor inverses. Resamples if the product equals the identity.
InvertibleMatrixPair sample_invertible(RandomSource& rng, int factors = 20);

/// Random polynomial in m1 with coefficients in 0..6, degrees 1..degree,
/// evaluated by Horner's scheme. Commutes with m1 by construction.
/// Resamples the coefficients if the result is the zero or the identity
/// matrix.
GRMatrix sample_commuting(RandomSource& rng, const GRMatrix& m1, int degree = 100);

/// Uniform in [0, n) by rejection sampling on fixed-width draws.
BigNat sample_below(RandomSource& rng, const BigNat& n);
/// Uniform in [1, n); n >= 2.
BigNat sample_exponent(RandomSource& rng, const BigNat& n);
/// Uniform in [lo, hi); lo < hi.
BigNat sample_exponent_range(RandomSource& rng, const BigNat& lo, const BigNat& hi);

}  // namespace grcs
