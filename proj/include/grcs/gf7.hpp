#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace grcs {

inline constexpr uint8_t kModulus = 7;

constexpr uint8_t add7(uint8_t a, uint8_t b) { return uint8_t((a + b) % 7); }
constexpr uint8_t sub7(uint8_t a, uint8_t b) { return uint8_t((7 + a - b) % 7); }
constexpr uint8_t mul7(uint8_t a, uint8_t b) { return uint8_t((a * b) % 7); }
constexpr uint8_t neg7(uint8_t a) { return uint8_t((7 - a) % 7); }

/// Multiplicative inverse mod 7; index 0 is unused.
inline constexpr uint8_t kInv7[7] = {0, 1, 4, 5, 2, 3, 6};

/// Dense matrix over the 7-element field. Entries are stored row-major
/// as residues 0..6.
class Gf7Matrix {
public:
    Gf7Matrix(int rows, int cols) : rows_(rows), cols_(cols), d_(size_t(rows) * cols, 0) {}

    static Gf7Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    uint8_t at(int r, int c) const { return d_[size_t(r) * cols_ + c]; }
    uint8_t& at(int r, int c) { return d_[size_t(r) * cols_ + c]; }
    const uint8_t* row(int r) const { return d_.data() + size_t(r) * cols_; }
    uint8_t* row(int r) { return d_.data() + size_t(r) * cols_; }

    Gf7Matrix operator*(const Gf7Matrix& rhs) const;
    bool operator==(const Gf7Matrix&) const = default;

    /// Rank over GF(7) by Gaussian elimination (input left untouched).
    int rank() const;

    /// Gauss-Jordan inverse; nullopt when singular. Square matrices only.
    std::optional<Gf7Matrix> inverted() const;

    /// Solves this * x = rhs for a single column vector; nullopt when no
    /// unique solution exists. Square matrices only.
    std::optional<std::vector<uint8_t>> solve(const std::vector<uint8_t>& rhs) const;

private:
    int rows_;
    int cols_;
    std::vector<uint8_t> d_;
};

}  // namespace grcs
