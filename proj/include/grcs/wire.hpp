#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "grcs/cscrypt.hpp"

namespace grcs {

inline constexpr size_t kMatrixBytes = 9 * kOrder;  // 1080
/// Capacity of one message matrix: 8*(376+2) = 3024 bits < log2(7^1080).
inline constexpr size_t kMaxMessagePayload = 376;
inline constexpr size_t kMessageBlockBytes = kMaxMessagePayload + 2;

inline constexpr std::array<uint8_t, 4> kMagic = {'G', 'R', 'C', 'S'};
inline constexpr uint8_t kFormatVersion = 0x01;

enum class BlobKind : uint8_t {
    public_key = 0x01,
    secret_key = 0x02,
    ciphertext = 0x03,
};

class WireError : public std::runtime_error {
public:
    enum class Code {
        malformed,         // bad magic, length, or value range
        version_mismatch,  // unknown format version or hash construction
        payload_too_large, // message exceeds one-matrix capacity
    };

    WireError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

/// Canonical byte form: entries row-major, 120 coefficient bytes each.
std::array<uint8_t, kMatrixBytes> serialize_matrix(const GRMatrix& m);
/// Rejects anything but exactly 1080 bytes with every value below 7.
GRMatrix deserialize_matrix(std::span<const uint8_t> bytes);

std::vector<uint8_t> serialize_public_key(const PublicKey& pk);
std::vector<uint8_t> serialize_secret_key(const SecretKey& sk);
std::vector<uint8_t> serialize_ciphertext(const Ciphertext& ct);
inline constexpr size_t kCiphertextRecordBytes = 6 + 4 * kMatrixBytes;

PublicKey parse_public_key(std::span<const uint8_t> bytes);
SecretKey parse_secret_key(std::span<const uint8_t> bytes);
/// Parses exactly one ciphertext record.
Ciphertext parse_ciphertext(std::span<const uint8_t> bytes);
/// Splits a stream of concatenated ciphertext records.
std::vector<Ciphertext> parse_ciphertext_stream(std::span<const uint8_t> bytes);

/// Header peek without parsing the body.
BlobKind peek_kind(std::span<const uint8_t> bytes);

/// Packs up to 376 payload bytes into one matrix: the 378-byte block
/// (2-byte big-endian length, payload, zero padding) is read as a
/// 3024-bit big-endian integer whose 1080 base-7 digits fill the
/// canonical coefficient positions least-significant first.
GRMatrix encode_message(std::span<const uint8_t> payload);
std::vector<uint8_t> decode_message(const GRMatrix& m);

std::vector<uint8_t> read_file(const std::filesystem::path& path);
/// Writes via a temp file in the same directory plus rename, so a failed
/// or aborted write never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::span<const uint8_t> bytes);

void write_public_key(const std::filesystem::path& path, const PublicKey& pk);
void write_secret_key(const std::filesystem::path& path, const SecretKey& sk);
PublicKey read_public_key(const std::filesystem::path& path);
SecretKey read_secret_key(const std::filesystem::path& path);

}  // namespace grcs
