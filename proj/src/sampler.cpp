#include "grcs/sampler.hpp"

#include <stdexcept>

namespace grcs {

GroupRingElement MonomialUnit::to_element() const {
    GroupRingElement e;
    e.coeffs[rank(perm)] = uint8_t(scalar % 7);
    return e;
}

MonomialUnit MonomialUnit::inverted() const {
    return MonomialUnit{kInv7[scalar], inverse(perm)};
}

GRMatrix TriangularFactor::to_matrix() const {
    GRMatrix m;
    for (int i = 0; i < 3; ++i) m.at(i, i) = diagonal[i].to_element();
    if (orientation == Orientation::upper) {
        m.at(0, 1) = off_diag[0];
        m.at(0, 2) = off_diag[1];
        m.at(1, 2) = off_diag[2];
    } else {
        m.at(1, 0) = off_diag[0];
        m.at(2, 0) = off_diag[1];
        m.at(2, 1) = off_diag[2];
    }
    return m;
}

TriangularFactor random_unit_triangular(RandomSource& rng, Orientation orientation) {
    TriangularFactor t;
    t.orientation = orientation;
    for (auto& d : t.diagonal) {
        d.scalar = uint8_t(1 + rng.uniform_below(6));
        d.perm = unrank(int(rng.uniform_below(kOrder)));
    }
    for (auto& g : t.off_diag) g = random_element(rng);
    return t;
}

GRMatrix triangular_inverse(const TriangularFactor& t) {
    const GroupRingElement d0 = t.diagonal[0].inverted().to_element();
    const GroupRingElement d1 = t.diagonal[1].inverted().to_element();
    const GroupRingElement d2 = t.diagonal[2].inverted().to_element();
    const GroupRingElement& g1 = t.off_diag[0];
    const GroupRingElement& g2 = t.off_diag[1];
    const GroupRingElement& g3 = t.off_diag[2];

    GRMatrix inv;
    inv.at(0, 0) = d0;
    inv.at(1, 1) = d1;
    inv.at(2, 2) = d2;
    if (t.orientation == Orientation::upper) {
        // diagonal u1,u2,u3 reads top-left to bottom-right
        inv.at(0, 1) = -(d0 * g1 * d1);
        inv.at(0, 2) = d0 * g1 * d1 * g3 * d2 - d0 * g2 * d2;
        inv.at(1, 2) = -(d1 * g3 * d2);
    } else {
        inv.at(1, 0) = -(d1 * g1 * d0);
        inv.at(2, 0) = d2 * g3 * d1 * g1 * d0 - d2 * g2 * d0;
        inv.at(2, 1) = -(d2 * g3 * d1);
    }
    return inv;
}

InvertibleMatrixPair sample_invertible(RandomSource& rng, int factors) {
    if (factors < 1) throw std::invalid_argument("sample_invertible: factors must be >= 1");
    for (;;) {
        GRMatrix m;
        GRMatrix m_inv;
        for (int i = 0; i < factors; ++i) {
            const Orientation o =
                rng.uniform_below(2) ? Orientation::lower : Orientation::upper;
            const TriangularFactor t = random_unit_triangular(rng, o);
            const GRMatrix tm = t.to_matrix();
            const GRMatrix ti = triangular_inverse(t);
            if (i == 0) {
                m = tm;
                m_inv = ti;
            } else {
                m = m * tm;
                m_inv = ti * m_inv;
            }
        }
        if (!m.is_identity()) return InvertibleMatrixPair{m, m_inv};
    }
}

GRMatrix sample_commuting(RandomSource& rng, const GRMatrix& m1, int degree) {
    if (degree < 1) throw std::invalid_argument("sample_commuting: degree must be >= 1");
    for (;;) {
        std::vector<uint8_t> coeff(degree);
        for (auto& a : coeff) a = rng.residue();
        // Horner: a1*M + a2*M^2 + ... = (((a_k M + a_{k-1} I) M + ...) M
        GRMatrix acc = scalar_mul(coeff[degree - 1], m1);
        for (int i = degree - 2; i >= 0; --i) {
            GRMatrix step = acc + scalar_mul(coeff[i], GRMatrix::identity());
            acc = step * m1;
        }
        if (!acc.is_zero() && !acc.is_identity()) return acc;
    }
}

BigNat sample_below(RandomSource& rng, const BigNat& n) {
    if (n.is_zero()) throw std::invalid_argument("sample_below: empty range");
    const BigNat top = n - BigNat(1);
    const size_t bits = top.bit_length();
    if (bits == 0) return BigNat(0);
    const size_t nbytes = (bits + 7) / 8;
    const uint8_t top_mask = uint8_t(0xFF >> (8 * nbytes - bits));
    for (;;) {
        std::vector<uint8_t> buf = rng.bytes(nbytes);
        buf[0] &= top_mask;
        BigNat v = BigNat::from_bytes_be(buf);
        if (v < n) return v;
    }
}

BigNat sample_exponent(RandomSource& rng, const BigNat& n) {
    if (n < BigNat(2)) throw std::invalid_argument("sample_exponent: n must be >= 2");
    return BigNat(1) + sample_below(rng, n - BigNat(1));
}

BigNat sample_exponent_range(RandomSource& rng, const BigNat& lo, const BigNat& hi) {
    if (!(lo < hi)) throw std::invalid_argument("sample_exponent_range: requires lo < hi");
    return lo + sample_below(rng, hi - lo);
}

}  // namespace grcs
