#include "grcs/wire.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>

namespace grcs {
namespace {

class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    size_t remaining() const { return bytes_.size() - pos_; }

    uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }

    uint16_t u16be() {
        need(2);
        const uint16_t v = uint16_t(bytes_[pos_]) << 8 | bytes_[pos_ + 1];
        pos_ += 2;
        return v;
    }

    std::span<const uint8_t> take(size_t n) {
        need(n);
        auto out = bytes_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    void expect_end() const {
        if (remaining() != 0)
            throw WireError(WireError::Code::malformed, "trailing bytes after blob body");
    }

private:
    void need(size_t n) const {
        if (remaining() < n)
            throw WireError(WireError::Code::malformed, "truncated blob");
    }

    std::span<const uint8_t> bytes_;
    size_t pos_ = 0;
};

void put_u16be(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v & 0xFF));
}

void put_bignat(std::vector<uint8_t>& out, const BigNat& v) {
    const auto mag = v.to_bytes_be();
    if (mag.size() > 0xFFFF)
        throw WireError(WireError::Code::malformed, "integer too wide for the wire format");
    put_u16be(out, uint16_t(mag.size()));
    out.insert(out.end(), mag.begin(), mag.end());
}

BigNat read_bignat(ByteReader& r) {
    const uint16_t len = r.u16be();
    const auto mag = r.take(len);
    if (!mag.empty() && mag.front() == 0)
        throw WireError(WireError::Code::malformed, "non-minimal integer encoding");
    return BigNat::from_bytes_be(mag);
}

void put_matrix(std::vector<uint8_t>& out, const GRMatrix& m) {
    const auto bytes = serialize_matrix(m);
    out.insert(out.end(), bytes.begin(), bytes.end());
}

GRMatrix read_matrix(ByteReader& r) { return deserialize_matrix(r.take(kMatrixBytes)); }

void put_header(std::vector<uint8_t>& out, BlobKind kind) {
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    out.push_back(kFormatVersion);
    out.push_back(uint8_t(kind));
}

BlobKind read_header(ByteReader& r, BlobKind expected) {
    const auto magic = r.take(kMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kMagic.begin()))
        throw WireError(WireError::Code::malformed, "bad magic");
    const uint8_t version = r.u8();
    if (version != kFormatVersion)
        throw WireError(WireError::Code::version_mismatch,
                        "unsupported format version " + std::to_string(version));
    const uint8_t kind = r.u8();
    if (kind != uint8_t(BlobKind::public_key) && kind != uint8_t(BlobKind::secret_key) &&
        kind != uint8_t(BlobKind::ciphertext))
        throw WireError(WireError::Code::malformed, "unknown blob kind");
    if (kind != uint8_t(expected))
        throw WireError(WireError::Code::malformed, "blob kind does not match the expected kind");
    return BlobKind(kind);
}

void put_public_body(std::vector<uint8_t>& out, const PublicKey& pk) {
    put_bignat(out, pk.params.n);
    put_u16be(out, uint16_t(pk.params.commuting_degree));
    out.push_back(uint8_t(pk.params.triangular_factors));
    out.push_back(uint8_t(pk.params.hash_id.size()));
    out.insert(out.end(), pk.params.hash_id.begin(), pk.params.hash_id.end());
    for (const GRMatrix* m : {&pk.m1, &pk.m2, &pk.c, &pk.d, &pk.h}) put_matrix(out, *m);
}

PublicKey read_public_body(ByteReader& r) {
    PublicKey pk;
    pk.params.n = read_bignat(r);
    pk.params.commuting_degree = r.u16be();
    pk.params.triangular_factors = r.u8();
    const uint8_t id_len = r.u8();
    const auto id = r.take(id_len);
    pk.params.hash_id.assign(id.begin(), id.end());
    if (pk.params.hash_id != kHashId)
        throw WireError(WireError::Code::version_mismatch,
                        "unknown hash construction '" + pk.params.hash_id + "'");
    try {
        pk.params.validate();
    } catch (const std::invalid_argument& e) {
        throw WireError(WireError::Code::malformed, e.what());
    }
    pk.m1 = read_matrix(r);
    pk.m2 = read_matrix(r);
    pk.c = read_matrix(r);
    pk.d = read_matrix(r);
    pk.h = read_matrix(r);
    if (pk.m1.is_identity())
        throw WireError(WireError::Code::malformed, "public key base matrix is the identity");
    if (pk.m2.is_zero() || pk.m2.is_identity())
        throw WireError(WireError::Code::malformed, "public key companion matrix is degenerate");
    if (pk.m1 * pk.m2 != pk.m2 * pk.m1)
        throw WireError(WireError::Code::malformed, "public key matrices do not commute");
    return pk;
}

void check_exponent(const BigNat& e, const BigNat& n, const char* name) {
    if (e.is_zero() || e >= n)
        throw WireError(WireError::Code::malformed,
                        std::string("secret exponent ") + name + " out of range");
}

}  // namespace

std::array<uint8_t, kMatrixBytes> serialize_matrix(const GRMatrix& m) {
    std::array<uint8_t, kMatrixBytes> out;
    size_t pos = 0;
    for (const auto& entry : m.entries)
        for (uint8_t c : entry.coeffs) out[pos++] = c;
    return out;
}

GRMatrix deserialize_matrix(std::span<const uint8_t> bytes) {
    if (bytes.size() != kMatrixBytes)
        throw WireError(WireError::Code::malformed, "matrix block must be exactly 1080 bytes");
    GRMatrix m;
    size_t pos = 0;
    for (auto& entry : m.entries)
        for (auto& c : entry.coeffs) {
            const uint8_t b = bytes[pos++];
            if (b >= 7)
                throw WireError(WireError::Code::malformed, "matrix coefficient byte not below 7");
            c = b;
        }
    return m;
}

std::vector<uint8_t> serialize_public_key(const PublicKey& pk) {
    std::vector<uint8_t> out;
    out.reserve(6 + 64 + 5 * kMatrixBytes);
    put_header(out, BlobKind::public_key);
    put_public_body(out, pk);
    return out;
}

std::vector<uint8_t> serialize_secret_key(const SecretKey& sk) {
    std::vector<uint8_t> out;
    out.reserve(6 + 64 + 6 * kMatrixBytes + 5 * 48);
    put_header(out, BlobKind::secret_key);
    put_public_body(out, sk.pk);
    for (const BigNat* e : {&sk.x1, &sk.x2, &sk.y1, &sk.y2, &sk.z}) put_bignat(out, *e);
    put_matrix(out, sk.m1_inv);
    return out;
}

std::vector<uint8_t> serialize_ciphertext(const Ciphertext& ct) {
    std::vector<uint8_t> out;
    out.reserve(kCiphertextRecordBytes);
    put_header(out, BlobKind::ciphertext);
    for (const GRMatrix* m : {&ct.u1, &ct.u2, &ct.e, &ct.v}) put_matrix(out, *m);
    return out;
}

PublicKey parse_public_key(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    read_header(r, BlobKind::public_key);
    PublicKey pk = read_public_body(r);
    r.expect_end();
    return pk;
}

SecretKey parse_secret_key(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    read_header(r, BlobKind::secret_key);
    SecretKey sk;
    sk.pk = read_public_body(r);
    sk.x1 = read_bignat(r);
    sk.x2 = read_bignat(r);
    sk.y1 = read_bignat(r);
    sk.y2 = read_bignat(r);
    sk.z = read_bignat(r);
    sk.m1_inv = read_matrix(r);
    r.expect_end();
    check_exponent(sk.x1, sk.pk.params.n, "x1");
    check_exponent(sk.x2, sk.pk.params.n, "x2");
    check_exponent(sk.y1, sk.pk.params.n, "y1");
    check_exponent(sk.y2, sk.pk.params.n, "y2");
    check_exponent(sk.z, sk.pk.params.n, "z");
    if (!(sk.m1_inv * sk.pk.m1).is_identity())
        throw WireError(WireError::Code::malformed, "stored inverse does not invert m1");
    return sk;
}

Ciphertext parse_ciphertext(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    read_header(r, BlobKind::ciphertext);
    Ciphertext ct;
    ct.u1 = read_matrix(r);
    ct.u2 = read_matrix(r);
    ct.e = read_matrix(r);
    ct.v = read_matrix(r);
    r.expect_end();
    return ct;
}

std::vector<Ciphertext> parse_ciphertext_stream(std::span<const uint8_t> bytes) {
    if (bytes.size() % kCiphertextRecordBytes != 0)
        throw WireError(WireError::Code::malformed,
                        "ciphertext stream is not a whole number of records");
    std::vector<Ciphertext> out;
    out.reserve(bytes.size() / kCiphertextRecordBytes);
    for (size_t pos = 0; pos < bytes.size(); pos += kCiphertextRecordBytes)
        out.push_back(parse_ciphertext(bytes.subspan(pos, kCiphertextRecordBytes)));
    return out;
}

BlobKind peek_kind(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    const auto magic = r.take(kMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kMagic.begin()))
        throw WireError(WireError::Code::malformed, "bad magic");
    const uint8_t version = r.u8();
    if (version != kFormatVersion)
        throw WireError(WireError::Code::version_mismatch,
                        "unsupported format version " + std::to_string(version));
    const uint8_t kind = r.u8();
    if (kind != uint8_t(BlobKind::public_key) && kind != uint8_t(BlobKind::secret_key) &&
        kind != uint8_t(BlobKind::ciphertext))
        throw WireError(WireError::Code::malformed, "unknown blob kind");
    return BlobKind(kind);
}

GRMatrix encode_message(std::span<const uint8_t> payload) {
    if (payload.size() > kMaxMessagePayload)
        throw WireError(WireError::Code::payload_too_large,
                        "message payload exceeds " + std::to_string(kMaxMessagePayload) +
                            " bytes");
    std::array<uint8_t, kMessageBlockBytes> block{};
    block[0] = uint8_t(payload.size() >> 8);
    block[1] = uint8_t(payload.size() & 0xFF);
    std::copy(payload.begin(), payload.end(), block.begin() + 2);
    BigNat v = BigNat::from_bytes_be(block);
    // 7^1080 > 2^3024, so the 3024-bit block always fits in the 1080 digits.
    GRMatrix m;
    for (auto& entry : m.entries)
        for (auto& c : entry.coeffs) c = uint8_t(v.divmod_u32(7));
    return m;
}

std::vector<uint8_t> decode_message(const GRMatrix& m) {
    const BigNat seven(7);
    BigNat v;
    for (size_t e = m.entries.size(); e-- > 0;) {
        const auto& coeffs = m.entries[e].coeffs;
        for (size_t i = coeffs.size(); i-- > 0;) v = v * seven + BigNat(coeffs[i]);
    }
    if (v.bit_length() > 8 * kMessageBlockBytes)
        throw WireError(WireError::Code::malformed, "matrix decodes outside the message space");
    const auto mag = v.to_bytes_be();
    std::array<uint8_t, kMessageBlockBytes> block{};
    std::copy(mag.begin(), mag.end(), block.end() - mag.size());
    const size_t len = size_t(block[0]) << 8 | block[1];
    if (len > kMaxMessagePayload)
        throw WireError(WireError::Code::malformed, "message length field out of range");
    return std::vector<uint8_t>(block.begin() + 2, block.begin() + 2 + len);
}

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for reading");
    std::vector<uint8_t> out{std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    if (f.bad()) throw std::runtime_error("error while reading " + path.string());
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const uint8_t> bytes) {
    static std::atomic<unsigned> counter{0};
    std::filesystem::path tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
        f.flush();
        if (!f) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("error while writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        std::filesystem::remove(tmp, ec2);
        throw std::runtime_error("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

void write_public_key(const std::filesystem::path& path, const PublicKey& pk) {
    const auto bytes = serialize_public_key(pk);
    write_file_atomic(path, bytes);
}

void write_secret_key(const std::filesystem::path& path, const SecretKey& sk) {
    const auto bytes = serialize_secret_key(sk);
    write_file_atomic(path, bytes);
}

PublicKey read_public_key(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return parse_public_key(bytes);
}

SecretKey read_secret_key(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return parse_secret_key(bytes);
}

}  // namespace grcs
