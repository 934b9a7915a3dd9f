#include "grcs/gmatrix.hpp"

namespace grcs {

GRMatrix GRMatrix::identity() {
    GRMatrix m;
    for (int i = 0; i < 3; ++i) m.at(i, i) = embed_scalar(1);
    return m;
}

bool GRMatrix::is_zero() const {
    for (const auto& e : entries)
        if (!e.is_zero()) return false;
    return true;
}

GRMatrix operator+(const GRMatrix& a, const GRMatrix& b) {
    GRMatrix out;
    for (int i = 0; i < 9; ++i) out.entries[i] = a.entries[i] + b.entries[i];
    return out;
}

GRMatrix operator-(const GRMatrix& a) {
    GRMatrix out;
    for (int i = 0; i < 9; ++i) out.entries[i] = -a.entries[i];
    return out;
}

GRMatrix operator*(const GRMatrix& a, const GRMatrix& b) {
    GRMatrix out;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            ConvolutionAcc acc{};
            for (int k = 0; k < 3; ++k) convolve_accumulate(acc, a.at(r, k), b.at(k, c));
            out.at(r, c) = reduce(acc);
        }
    }
    return out;
}

GRMatrix scalar_mul(uint8_t n, const GRMatrix& a) {
    GRMatrix out;
    for (int i = 0; i < 9; ++i) out.entries[i] = scalar_mul(n, a.entries[i]);
    return out;
}

GRMatrix mat_pow(const GRMatrix& a, const BigNat& e) {
    const size_t bits = e.bit_length();
    if (bits == 0) return GRMatrix::identity();
    GRMatrix acc = a;  // top bit
    for (size_t i = bits - 1; i-- > 0;) {
        acc = acc * acc;
        if (e.bit(i)) acc = acc * a;
    }
    return acc;
}

GRMatrix mat_pow(const GRMatrix& a, uint64_t e) { return mat_pow(a, BigNat(e)); }

GRMatrix random_matrix(RandomSource& rng) {
    GRMatrix out;
    for (auto& e : out.entries) e = random_element(rng);
    return out;
}

}  // namespace grcs
