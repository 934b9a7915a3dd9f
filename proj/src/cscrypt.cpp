#include "grcs/cscrypt.hpp"

#include <openssl/evp.h>

#include <stdexcept>

#include "grcs/wire.hpp"

namespace grcs {

namespace {
constexpr char kHashDomain[] = "GRCS-CS-alpha-v1";  // 16 bytes, no terminator

void sha256_block(uint8_t counter, const std::vector<uint8_t>& payload, uint8_t out[32]) {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
    unsigned int len = 32;
    const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) &&
                    EVP_DigestUpdate(ctx, kHashDomain, sizeof(kHashDomain) - 1) &&
                    EVP_DigestUpdate(ctx, &counter, 1) &&
                    EVP_DigestUpdate(ctx, payload.data(), payload.size()) &&
                    EVP_DigestFinal_ex(ctx, out, &len);
    EVP_MD_CTX_free(ctx);
    if (!ok || len != 32) throw std::runtime_error("SHA-256 computation failed");
}
}  // namespace

void Params::validate() const {
    if (n < BigNat(2)) throw std::invalid_argument("params: n must be >= 2");
    if (commuting_degree < 1) throw std::invalid_argument("params: k must be >= 1");
    if (triangular_factors < 1) throw std::invalid_argument("params: factors must be >= 1");
    if (hash_id != kHashId) throw std::invalid_argument("params: unknown hash_id");
}

KeyPair keygen(RandomSource& rng, const Params& params) {
    params.validate();
    const InvertibleMatrixPair m1 = sample_invertible(rng, params.triangular_factors);
    const GRMatrix m2 = sample_commuting(rng, m1.m, params.commuting_degree);

    SecretKey sk;
    sk.x1 = sample_exponent(rng, params.n);
    sk.x2 = sample_exponent(rng, params.n);
    sk.y1 = sample_exponent(rng, params.n);
    sk.y2 = sample_exponent(rng, params.n);
    sk.z = sample_exponent(rng, params.n);
    sk.m1_inv = m1.m_inv;

    PublicKey pk;
    pk.m1 = m1.m;
    pk.m2 = m2;
    pk.c = mat_pow(m1.m, sk.x1) * mat_pow(m2, sk.x2);
    pk.d = mat_pow(m1.m, sk.y1) * mat_pow(m2, sk.y2);
    pk.h = mat_pow(m1.m, sk.z);
    pk.params = params;

    sk.pk = pk;
    return KeyPair{pk, sk};
}

BigNat hash_to_scalar(const GRMatrix& u1, const GRMatrix& u2, const GRMatrix& e,
                      const BigNat& n) {
    if (n < BigNat(2)) throw std::invalid_argument("hash_to_scalar: n must be >= 2");
    std::vector<uint8_t> payload;
    payload.reserve(3 * kMatrixBytes);
    for (const GRMatrix* m : {&u1, &u2, &e}) {
        const auto b = serialize_matrix(*m);
        payload.insert(payload.end(), b.begin(), b.end());
    }
    uint8_t digest[64];
    sha256_block(0, payload, digest);
    sha256_block(1, payload, digest + 32);
    return BigNat::from_bytes_be(std::span<const uint8_t>(digest, 64)).mod(n);
}

Ciphertext encrypt(RandomSource& rng, const PublicKey& pk, const GRMatrix& message) {
    const BigNat r = sample_exponent(rng, pk.params.n);
    Ciphertext ct;
    ct.u1 = mat_pow(pk.m1, r);
    ct.u2 = mat_pow(pk.m2, r);
    ct.e = mat_pow(pk.h, r) * message;  // mask multiplies from the left
    const BigNat alpha = hash_to_scalar(ct.u1, ct.u2, ct.e, pk.params.n);
    ct.v = mat_pow(pk.c, r) * mat_pow(pk.d, r * alpha);
    return ct;
}

bool verify(const SecretKey& sk, const Ciphertext& ct) {
    const BigNat alpha = hash_to_scalar(ct.u1, ct.u2, ct.e, sk.pk.params.n);
    const GRMatrix expected =
        mat_pow(ct.u1, sk.x1 + alpha * sk.y1) * mat_pow(ct.u2, sk.x2 + alpha * sk.y2);
    return ct.v == expected;
}

std::optional<GRMatrix> decrypt(const SecretKey& sk, const Ciphertext& ct) {
    if (!verify(sk, ct)) return std::nullopt;
    const GRMatrix w = mat_pow(ct.u1, sk.z);
    // r is unknown here, so the tracked inverse of m1 cannot reach
    // (m1^rz)^-1; invert w through its block representation instead.
    const auto w_inv = invert_via_representation(w);
    if (!w_inv) return std::nullopt;
    return *w_inv * ct.e;
}

Gf7Matrix block_representation(const GRMatrix& m) {
    Gf7Matrix rep(3 * kOrder, 3 * kOrder);
    for (int bi = 0; bi < 3; ++bi) {
        for (int bj = 0; bj < 3; ++bj) {
            const Gf7Matrix block = regular_representation(m.at(bi, bj));
            for (int i = 0; i < kOrder; ++i)
                for (int j = 0; j < kOrder; ++j)
                    rep.at(bi * kOrder + i, bj * kOrder + j) = block.at(i, j);
        }
    }
    return rep;
}

std::optional<GRMatrix> invert_via_representation(const GRMatrix& m) {
    const auto inv = block_representation(m).inverted();
    if (!inv) return std::nullopt;
    // Column 0 of each regular-representation block holds the coefficients
    // of the block's ring element.
    GRMatrix out;
    for (int bi = 0; bi < 3; ++bi)
        for (int bj = 0; bj < 3; ++bj)
            for (int i = 0; i < kOrder; ++i)
                out.at(bi, bj).coeffs[i] = inv->at(bi * kOrder + i, bj * kOrder);
    return out;
}

}  // namespace grcs
