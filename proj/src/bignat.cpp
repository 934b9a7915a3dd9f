#include "grcs/bignat.hpp"

#include <stdexcept>

namespace grcs {

BigNat::BigNat(uint64_t x) {
    mpz_set_ui(v_.get_mpz_t(), static_cast<unsigned long>(x >> 32));
    mpz_mul_2exp(v_.get_mpz_t(), v_.get_mpz_t(), 32);
    mpz_add_ui(v_.get_mpz_t(), v_.get_mpz_t(), static_cast<unsigned long>(x & 0xFFFFFFFFull));
}

BigNat BigNat::from_decimal(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("BigNat: empty decimal string");
    for (char c : s)
        if (c < '0' || c > '9') throw std::invalid_argument("BigNat: invalid decimal digit");
    return BigNat(mpz_class(s, 10));
}

BigNat BigNat::from_bytes_be(std::span<const uint8_t> bytes) {
    BigNat out;
    if (!bytes.empty())
        mpz_import(out.v_.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    return out;
}

BigNat BigNat::pow10(unsigned e) { return pow(10, e); }

BigNat BigNat::pow(unsigned base, unsigned e) {
    BigNat out;
    mpz_ui_pow_ui(out.v_.get_mpz_t(), base, e);
    return out;
}

std::string BigNat::to_decimal() const { return v_.get_str(); }

std::vector<uint8_t> BigNat::to_bytes_be() const {
    if (v_ == 0) return {};
    const size_t n = (mpz_sizeinbase(v_.get_mpz_t(), 2) + 7) / 8;
    std::vector<uint8_t> out(n);
    size_t written = 0;
    mpz_export(out.data(), &written, 1, 1, 1, 0, v_.get_mpz_t());
    out.resize(written);
    return out;
}

size_t BigNat::bit_length() const {
    if (v_ == 0) return 0;
    return mpz_sizeinbase(v_.get_mpz_t(), 2);
}

bool BigNat::bit(size_t i) const { return mpz_tstbit(v_.get_mpz_t(), i) != 0; }

size_t BigNat::decimal_digits() const { return to_decimal().size(); }

uint64_t BigNat::to_u64() const {
    if (bit_length() > 64) throw std::overflow_error("BigNat: value exceeds 64 bits");
    uint64_t out = 0;
    for (size_t i = 0; i < 64; ++i)
        if (bit(i)) out |= uint64_t(1) << i;
    return out;
}

BigNat BigNat::operator-(const BigNat& o) const {
    if (v_ < o.v_) throw std::underflow_error("BigNat: negative difference");
    return BigNat(mpz_class(v_ - o.v_));
}

BigNat BigNat::mod(const BigNat& m) const {
    if (m.v_ == 0) throw std::invalid_argument("BigNat: modulus must be positive");
    BigNat out;
    mpz_mod(out.v_.get_mpz_t(), v_.get_mpz_t(), m.v_.get_mpz_t());
    return out;
}

uint32_t BigNat::divmod_u32(uint32_t d) {
    if (d == 0) throw std::invalid_argument("BigNat: division by zero");
    return uint32_t(mpz_tdiv_q_ui(v_.get_mpz_t(), v_.get_mpz_t(), d));
}

}  // namespace grcs
