#include "grcs/gf7.hpp"

#include <stdexcept>
#include <utility>

namespace grcs {

namespace {

// dst[j] = (dst[j] + f * src[j]) mod 7, with f in 0..6. All values stay
// below 43, so t - 7*((t*293)>>11) reduces exactly and the loop
// auto-vectorizes (no division).
void row_addmul(uint8_t* __restrict dst, const uint8_t* __restrict src, int f, int len) {
    for (int j = 0; j < len; ++j) {
        const unsigned t = dst[j] + unsigned(f) * src[j];
        dst[j] = uint8_t(t - 7u * ((t * 293u) >> 11));
    }
}

void row_scale(uint8_t* __restrict dst, int f, int len) {
    for (int j = 0; j < len; ++j) {
        const unsigned t = unsigned(f) * dst[j];
        dst[j] = uint8_t(t - 7u * ((t * 293u) >> 11));
    }
}

}  // namespace

Gf7Matrix Gf7Matrix::identity(int n) {
    Gf7Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Gf7Matrix Gf7Matrix::operator*(const Gf7Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("Gf7Matrix: shape mismatch");
    Gf7Matrix out(rows_, rhs.cols_);
    std::vector<uint32_t> acc(rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0u);
        for (int k = 0; k < cols_; ++k) {
            const uint32_t v = at(i, k);
            if (!v) continue;
            const uint8_t* r = rhs.row(k);
            for (int j = 0; j < rhs.cols_; ++j) acc[j] += v * r[j];
        }
        for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) = uint8_t(acc[j] % 7);
    }
    return out;
}

int Gf7Matrix::rank() const {
    Gf7Matrix w(*this);
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int pivot = -1;
        for (int i = r; i < rows_; ++i)
            if (w.at(i, c)) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = 0; j < cols_; ++j) std::swap(w.at(pivot, j), w.at(r, j));
        row_scale(w.row(r), kInv7[w.at(r, c)], cols_);
        for (int i = r + 1; i < rows_; ++i) {
            const uint8_t f = w.at(i, c);
            if (f) row_addmul(w.row(i), w.row(r), neg7(f), cols_);
        }
        ++r;
    }
    return r;
}

std::optional<Gf7Matrix> Gf7Matrix::inverted() const {
    if (rows_ != cols_) throw std::invalid_argument("Gf7Matrix: inverse of non-square matrix");
    const int n = rows_;
    // Augmented [this | I], Gauss-Jordan.
    Gf7Matrix w(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w.at(i, j) = at(i, j);
        w.at(i, n + i) = 1;
    }
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int i = c; i < n; ++i)
            if (w.at(i, c)) { pivot = i; break; }
        if (pivot < 0) return std::nullopt;
        if (pivot != c)
            for (int j = 0; j < 2 * n; ++j) std::swap(w.at(pivot, j), w.at(c, j));
        row_scale(w.row(c), kInv7[w.at(c, c)], 2 * n);
        for (int i = 0; i < n; ++i) {
            if (i == c) continue;
            const uint8_t f = w.at(i, c);
            if (f) row_addmul(w.row(i), w.row(c), neg7(f), 2 * n);
        }
    }
    Gf7Matrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = w.at(i, n + j);
    return out;
}

std::optional<std::vector<uint8_t>> Gf7Matrix::solve(const std::vector<uint8_t>& rhs) const {
    if (rows_ != cols_) throw std::invalid_argument("Gf7Matrix: solve on non-square matrix");
    if (int(rhs.size()) != rows_) throw std::invalid_argument("Gf7Matrix: rhs size mismatch");
    const int n = rows_;
    Gf7Matrix w(n, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w.at(i, j) = at(i, j);
        w.at(i, n) = rhs[i];
    }
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int i = c; i < n; ++i)
            if (w.at(i, c)) { pivot = i; break; }
        if (pivot < 0) return std::nullopt;
        if (pivot != c)
            for (int j = 0; j <= n; ++j) std::swap(w.at(pivot, j), w.at(c, j));
        row_scale(w.row(c), kInv7[w.at(c, c)], n + 1);
        for (int i = c + 1; i < n; ++i) {
            const uint8_t f = w.at(i, c);
            if (f) row_addmul(w.row(i), w.row(c), neg7(f), n + 1);
        }
    }
    std::vector<uint8_t> x(n, 0);
    for (int i = n - 1; i >= 0; --i) {
        unsigned acc = w.at(i, n);
        for (int j = i + 1; j < n; ++j) acc += 7u * 7u - unsigned(w.at(i, j)) * x[j];
        x[i] = uint8_t(acc % 7);
    }
    return x;
}

}  // namespace grcs
