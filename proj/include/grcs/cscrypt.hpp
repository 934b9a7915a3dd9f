#pragma once

#include <optional>
#include <string>

#include "grcs/sampler.hpp"

namespace grcs {

/// Identifier of the only hash-to-scalar construction currently defined.
inline const std::string kHashId = "GRCS-a1";

/// Scheme parameters. n bounds the sampling range of every secret
/// exponent; it is never used as a working modulus.
struct Params {
    BigNat n = BigNat::pow10(100);
    int commuting_degree = 100;   // highest power of m1 mixed into m2
    int triangular_factors = 20;  // factors in the invertible-matrix product
    std::string hash_id = kHashId;

    /// Throws std::invalid_argument unless n >= 2, degree >= 1, factors >= 1
    /// and the hash construction is known.
    void validate() const;
};

/// (m1, m2, c, d, h): m1 invertible, m2 a polynomial in m1, and
///   c = m1^x1 m2^x2,  d = m1^y1 m2^y2,  h = m1^z.
struct PublicKey {
    GRMatrix m1, m2, c, d, h;
    Params params;
};

/// The five exponents behind the public key, plus the tracked inverse of
/// m1 kept from sampling.
struct SecretKey {
    BigNat x1, x2, y1, y2, z;
    GRMatrix m1_inv;
    PublicKey pk;
};

struct KeyPair {
    PublicKey pub;
    SecretKey sec;
};

/// (u1, u2, e, v) with u1 = m1^r, u2 = m2^r, e = h^r N, v = c^r d^(r a)
/// for a fresh random exponent r; a is the hashed challenge scalar and is
/// recomputed on demand, never stored.
struct Ciphertext {
    GRMatrix u1, u2, e, v;
};

KeyPair keygen(RandomSource& rng, const Params& params = Params{});

/// Challenge scalar in [0, n): two counter-separated SHA-256 blocks over
/// the canonical bytes of (u1, u2, e), read as one 512-bit big-endian
/// integer and reduced mod n. Deterministic and platform-independent.
BigNat hash_to_scalar(const GRMatrix& u1, const GRMatrix& u2, const GRMatrix& e,
                      const BigNat& n);

Ciphertext encrypt(RandomSource& rng, const PublicKey& pk, const GRMatrix& message);

/// Ciphertext validity: v == u1^(x1 + a y1) * u2^(x2 + a y2) with exponent
/// sums carried at full width.
bool verify(const SecretKey& sk, const Ciphertext& ct);

/// Recovers the message of a valid ciphertext as (u1^z)^-1 e; returns
/// nullopt (reject) when verification fails or u1^z is not invertible.
std::optional<GRMatrix> decrypt(const SecretKey& sk, const Ciphertext& ct);

/// 360x360 block matrix of the entrywise regular representations; a ring
/// homomorphism from the 3x3 matrices over the group ring into the
/// 360x360 matrices mod 7.
Gf7Matrix block_representation(const GRMatrix& m);

/// Inverse computed by Gauss-Jordan elimination on the block
/// representation, mapped back through the first column of each block.
/// nullopt when the matrix is not invertible.
std::optional<GRMatrix> invert_via_representation(const GRMatrix& m);

}  // namespace grcs
