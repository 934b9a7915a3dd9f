#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace grcs {

/// Arbitrary-precision nonnegative integer. Exponents, their sums and
/// products are carried at full width; nothing here reduces modulo
/// anything unless mod() is called explicitly.
class BigNat {
public:
    BigNat() : v_(0) {}
    BigNat(uint64_t x);

    /// Decimal digits only; throws std::invalid_argument otherwise.
    static BigNat from_decimal(const std::string& s);
    /// Big-endian magnitude; empty span means zero.
    static BigNat from_bytes_be(std::span<const uint8_t> bytes);
    static BigNat pow10(unsigned e);
    static BigNat pow(unsigned base, unsigned e);

    std::string to_decimal() const;
    /// Minimal big-endian magnitude; empty for zero.
    std::vector<uint8_t> to_bytes_be() const;

    size_t bit_length() const;  // 0 for zero
    bool bit(size_t i) const;
    size_t decimal_digits() const;  // 1 for zero
    bool is_zero() const { return v_ == 0; }
    uint64_t to_u64() const;  // throws if the value does not fit

    BigNat operator+(const BigNat& o) const { return BigNat(v_ + o.v_); }
    BigNat operator*(const BigNat& o) const { return BigNat(v_ * o.v_); }
    /// Requires *this >= o.
    BigNat operator-(const BigNat& o) const;
    BigNat mod(const BigNat& m) const;
    /// Divides in place by d (nonzero) and returns the remainder.
    uint32_t divmod_u32(uint32_t d);

    std::strong_ordering operator<=>(const BigNat& o) const {
        const int c = cmp(v_, o.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }
    bool operator==(const BigNat& o) const { return v_ == o.v_; }

private:
    explicit BigNat(mpz_class v) : v_(std::move(v)) {}
    mpz_class v_;
};

}  // namespace grcs
