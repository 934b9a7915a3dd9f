#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "grcs/bignat.hpp"
#include "grcs/gf7.hpp"
#include "grcs/rng.hpp"

using namespace grcs;

TEST_CASE("mod-7 scalar arithmetic agrees with the integers") {
    for (unsigned a = 0; a < 7; ++a) {
        for (unsigned b = 0; b < 7; ++b) {
            CHECK(add7(uint8_t(a), uint8_t(b)) == (a + b) % 7);
            CHECK(sub7(uint8_t(a), uint8_t(b)) == (a + 7 - b) % 7);
            CHECK(mul7(uint8_t(a), uint8_t(b)) == (a * b) % 7);
        }
        CHECK(neg7(uint8_t(a)) == (7 - a) % 7);
    }
    for (unsigned a = 1; a < 7; ++a) CHECK(mul7(uint8_t(a), kInv7[a]) == 1);
}

TEST_CASE("Gf7Matrix inversion round-trips") {
    SeededRandomSource rng(11);
    int invertible = 0;
    for (int t = 0; t < 30; ++t) {
        Gf7Matrix a(12, 12);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) a.at(i, j) = rng.residue();
        const auto inv = a.inverted();
        if (!inv) {
            CHECK(a.rank() < 12);
            continue;
        }
        ++invertible;
        CHECK(a.rank() == 12);
        CHECK(a * *inv == Gf7Matrix::identity(12));
        CHECK(*inv * a == Gf7Matrix::identity(12));
    }
    CHECK(invertible >= 20);  // random matrices over GF(7) are usually invertible
}

TEST_CASE("Gf7Matrix detects singularity") {
    Gf7Matrix a(3, 3);
    // Row 2 = row 0 + row 1.
    const uint8_t rows[3][3] = {{1, 2, 3}, {4, 5, 6}, {5, 0, 2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a.at(i, j) = rows[i][j];
    CHECK(a.rank() == 2);
    CHECK(!a.inverted());
    CHECK(!a.solve({1, 0, 0}));
}

TEST_CASE("Gf7Matrix solve matches inverse application") {
    SeededRandomSource rng(12);
    Gf7Matrix a(9, 9);
    std::optional<Gf7Matrix> inv;
    do {
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j) a.at(i, j) = rng.residue();
        inv = a.inverted();
    } while (!inv);
    std::vector<uint8_t> b(9);
    for (auto& x : b) x = rng.residue();
    const auto x = a.solve(b);
    REQUIRE(x);
    // Check A x = b directly.
    for (int i = 0; i < 9; ++i) {
        unsigned acc = 0;
        for (int j = 0; j < 9; ++j) acc += unsigned(a.at(i, j)) * (*x)[j];
        CHECK(acc % 7 == b[i]);
    }
}

TEST_CASE("BigNat decimal and byte round trips") {
    CHECK(BigNat().to_decimal() == "0");
    CHECK(BigNat(0).to_bytes_be().empty());
    CHECK(BigNat::from_bytes_be({}).is_zero());
    CHECK(BigNat(UINT64_MAX).to_decimal() == "18446744073709551615");
    CHECK(BigNat::from_decimal("18446744073709551615").to_u64() == UINT64_MAX);
    const BigNat big = BigNat::from_decimal("123456789012345678901234567890");
    CHECK(BigNat::from_bytes_be(big.to_bytes_be()) == big);
    CHECK(big.to_decimal() == "123456789012345678901234567890");
    CHECK_THROWS_AS(BigNat::from_decimal(""), std::invalid_argument);
    CHECK_THROWS_AS(BigNat::from_decimal("12a3"), std::invalid_argument);
    CHECK_THROWS_AS(BigNat::from_decimal("-5"), std::invalid_argument);
}

TEST_CASE("BigNat arithmetic and comparisons") {
    CHECK(BigNat(2) + BigNat(3) == BigNat(5));
    CHECK(BigNat(6) * BigNat(7) == BigNat(42));
    CHECK(BigNat(10) - BigNat(4) == BigNat(6));
    CHECK_THROWS_AS(BigNat(4) - BigNat(10), std::underflow_error);
    CHECK(BigNat(17).mod(BigNat(5)) == BigNat(2));
    CHECK(BigNat(3) < BigNat(4));
    CHECK(BigNat(4) >= BigNat(4));
    BigNat v = BigNat::from_decimal("1234");
    CHECK(v.divmod_u32(7) == 2);
    CHECK(v == BigNat(176));
    CHECK_THROWS_AS(BigNat::pow10(20).to_u64(), std::overflow_error);
}

TEST_CASE("BigNat sizes") {
    CHECK(BigNat().bit_length() == 0);
    CHECK(BigNat(1).bit_length() == 1);
    CHECK(BigNat(255).bit_length() == 8);
    CHECK(BigNat(256).bit_length() == 9);
    CHECK(BigNat().decimal_digits() == 1);
    CHECK(BigNat::pow10(100).decimal_digits() == 101);
    CHECK(BigNat::pow10(100).bit_length() == 333);
    CHECK(BigNat::pow(2, 332).bit_length() == 333);
    CHECK(BigNat(5).bit(0));
    CHECK(!BigNat(5).bit(1));
    CHECK(BigNat(5).bit(2));
}

TEST_CASE("seeded source matches the standard mt19937_64 sequence") {
    // The standard pins the 10000th draw from the default seed 5489.
    SeededRandomSource rng(5489);
    uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = rng.next_u64();
    CHECK(v == 9981545732273789042ull);
}

TEST_CASE("mix_u64 is the splitmix64 output step") {
    CHECK(mix_u64(0) == 16294208416658607535ull);
    CHECK(mix_u64(1) == 10451216379200822465ull);
}

TEST_CASE("derive_stream separates labels and repeats exactly") {
    auto a1 = derive_stream(42, 0);
    auto a2 = derive_stream(42, 0);
    auto b = derive_stream(42, 1);
    auto c = derive_stream(43, 0);
    bool differ_b = false, differ_c = false;
    for (int i = 0; i < 16; ++i) {
        const uint64_t w = a1.next_u64();
        CHECK(w == a2.next_u64());
        differ_b |= w != b.next_u64();
        differ_c |= w != c.next_u64();
    }
    CHECK(differ_b);
    CHECK(differ_c);
}

TEST_CASE("uniform_below stays in range and is roughly uniform") {
    SeededRandomSource rng(77);
    CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
    CHECK(rng.uniform_below(1) == 0);
    for (uint64_t bound : {2ull, 3ull, 7ull, 100ull, 1000000007ull})
        for (int i = 0; i < 200; ++i) CHECK(rng.uniform_below(bound) < bound);

    double sum = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) sum += double(rng.uniform_below(100));
    CHECK(std::abs(sum / draws - 49.5) < 1.0);

    std::array<int, 7> bins{};
    for (int i = 0; i < 70000; ++i) ++bins[rng.residue()];
    for (int b = 0; b < 7; ++b) CHECK(std::abs(bins[b] - 10000) < 700);
}

TEST_CASE("bytes() packs words big-endian") {
    SeededRandomSource words(5);
    SeededRandomSource stream(5);
    const auto got = stream.bytes(11);
    const uint64_t w0 = words.next_u64(), w1 = words.next_u64();
    for (int i = 0; i < 8; ++i) CHECK(got[i] == uint8_t(w0 >> (8 * (7 - i))));
    for (int i = 0; i < 3; ++i) CHECK(got[8 + i] == uint8_t(w1 >> (8 * (7 - i))));
}

TEST_CASE("system source produces distinct output") {
    SystemRandomSource sys;
    // 64 words from the OS cannot plausibly all coincide.
    bool all_equal = true;
    const uint64_t first = sys.next_u64();
    for (int i = 0; i < 63; ++i) all_equal &= sys.next_u64() == first;
    CHECK(!all_equal);
}
