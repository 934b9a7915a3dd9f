#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "grcs/wire.hpp"
#include "support/helpers.hpp"

using namespace grcs;
using namespace grcs::testing;

namespace {

std::string p(const TempDir& dir, const char* name) { return (dir.path() / name).string(); }

/// Generates a small deterministic key pair in dir and returns (pub, sec) paths.
std::pair<std::string, std::string> make_test_keys(const TempDir& dir, const char* n = "1000") {
    const auto pub = p(dir, "test.pub");
    const auto sec = p(dir, "test.sec");
    const auto r = run_cli("keygen --out-pub " + pub + " --out-sec " + sec + " --n " +
                               std::string(n) + " --k 5 --factors 4 --insecure-seed 7001",
                           dir);
    REQUIRE(r.exit_code == 0);
    return {pub, sec};
}

std::vector<uint8_t> random_payload(size_t size, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<uint8_t> out(size);
    for (auto& b : out) b = uint8_t(gen());
    return out;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help exits zero and lists the subcommands") {
    TempDir dir;
    const auto r = run_cli("--help", dir);
    CHECK(r.exit_code == 0);
    for (const char* cmd : {"keygen", "encrypt", "decrypt", "ddh", "mask", "bench", "inspect"})
        CHECK(contains(r.out, cmd));
}

TEST_CASE("missing subcommand and unknown flags are usage errors") {
    TempDir dir;
    CHECK(run_cli("", dir).exit_code == 1);
    CHECK(run_cli("keygen --out-pub x.pub", dir).exit_code == 1);  // missing --out-sec
    CHECK(run_cli("bench --no-such-flag", dir).exit_code == 1);
    CHECK(run_cli("frobnicate", dir).exit_code == 1);
}

TEST_CASE("keygen writes both keys and inspect reads them back") {
    TempDir dir;
    const auto [pub, sec] = make_test_keys(dir);
    const auto ri = run_cli("inspect --in " + pub, dir);
    REQUIRE(ri.exit_code == 0);
    CHECK(contains(ri.out, "kind=public_key\n"));
    CHECK(contains(ri.out, "n=1e3\n"));
    CHECK(contains(ri.out, "k=5\n"));
    CHECK(contains(ri.out, "factors=4\n"));
    CHECK(contains(ri.out, "hash_id=GRCS-a1\n"));
    CHECK(contains(ri.out, "m1_density="));

    const auto rs = run_cli("inspect --in " + sec, dir);
    REQUIRE(rs.exit_code == 0);
    CHECK(contains(rs.out, "kind=secret_key\n"));
    CHECK(contains(rs.out, "x1_bits="));
    CHECK_FALSE(contains(rs.out, "\nx1="));

    const auto rr = run_cli("inspect --in " + sec + " --reveal", dir);
    REQUIRE(rr.exit_code == 0);
    CHECK(contains(rr.out, "\nx1="));
    CHECK_FALSE(contains(rr.out, "x1_bits="));
}

TEST_CASE("seeded keygen is deterministic and warns loudly") {
    TempDir dir;
    const auto ra = run_cli("keygen --out-pub " + p(dir, "a.pub") + " --out-sec " +
                                p(dir, "a.sec") + " --n 1000 --k 5 --factors 4 --insecure-seed 9",
                            dir);
    REQUIRE(ra.exit_code == 0);
    CHECK(contains(ra.err, "WARNING"));
    const auto rb = run_cli("keygen --out-pub " + p(dir, "b.pub") + " --out-sec " +
                                p(dir, "b.sec") + " --n 1000 --k 5 --factors 4 --insecure-seed 9",
                            dir);
    REQUIRE(rb.exit_code == 0);
    CHECK(read_bytes(dir.path() / "a.pub") == read_bytes(dir.path() / "b.pub"));
    CHECK(read_bytes(dir.path() / "a.sec") == read_bytes(dir.path() / "b.sec"));
}

TEST_CASE("a default-parameter public key file is exactly 5461 bytes") {
    TempDir dir;
    const auto r = run_cli("keygen --out-pub " + p(dir, "d.pub") + " --out-sec " +
                               p(dir, "d.sec") + " --insecure-seed 11",
                           dir);
    REQUIRE(r.exit_code == 0);
    CHECK(read_bytes(dir.path() / "d.pub").size() == 5461);
}

TEST_CASE("keygen rejects unusable parameters") {
    TempDir dir;
    const auto base = "keygen --out-pub " + p(dir, "x.pub") + " --out-sec " + p(dir, "x.sec");
    CHECK(run_cli(base + " --n 1", dir).exit_code == 1);
    CHECK(run_cli(base + " --k 0", dir).exit_code == 1);
    CHECK(run_cli(base + " --factors 0", dir).exit_code == 1);
}

TEST_CASE("encrypt and decrypt round-trip files of assorted sizes") {
    TempDir dir;
    const auto [pub, sec] = make_test_keys(dir);
    for (const size_t size : {size_t(1), size_t(100), size_t(376), size_t(377), size_t(752),
                              size_t(1000)}) {
        const auto payload = random_payload(size, 8000 + size);
        write_bytes(dir.path() / "msg.bin", payload);
        const auto re = run_cli("encrypt --pub " + pub + " --in " + p(dir, "msg.bin") +
                                    " --out " + p(dir, "msg.ct"),
                                dir);
        REQUIRE(re.exit_code == 0);
        const size_t records = (size + kMaxMessagePayload - 1) / kMaxMessagePayload;
        CHECK(read_bytes(dir.path() / "msg.ct").size() == records * kCiphertextRecordBytes);
        const auto rd = run_cli("decrypt --sec " + sec + " --in " + p(dir, "msg.ct") + " --out " +
                                    p(dir, "msg.out"),
                                dir);
        REQUIRE(rd.exit_code == 0);
        CHECK(read_bytes(dir.path() / "msg.out") == payload);
    }
}

TEST_CASE("an empty file round-trips to an empty file") {
    TempDir dir;
    const auto [pub, sec] = make_test_keys(dir);
    write_bytes(dir.path() / "empty.bin", {});
    REQUIRE(run_cli("encrypt --pub " + pub + " --in " + p(dir, "empty.bin") + " --out " +
                        p(dir, "empty.ct"),
                    dir)
                .exit_code == 0);
    CHECK(read_bytes(dir.path() / "empty.ct").empty());
    REQUIRE(run_cli("decrypt --sec " + sec + " --in " + p(dir, "empty.ct") + " --out " +
                        p(dir, "empty.out"),
                    dir)
                .exit_code == 0);
    CHECK(std::filesystem::exists(dir.path() / "empty.out"));
    CHECK(read_bytes(dir.path() / "empty.out").empty());
}

TEST_CASE("a one MiB file survives a round trip byte for byte") {
    TempDir dir;
    const auto [pub, sec] = make_test_keys(dir, "100");
    const auto payload = random_payload(1 << 20, 8100);
    write_bytes(dir.path() / "big.bin", payload);
    REQUIRE(run_cli("encrypt --pub " + pub + " --in " + p(dir, "big.bin") + " --out " +
                        p(dir, "big.ct"),
                    dir)
                .exit_code == 0);
    CHECK(read_bytes(dir.path() / "big.ct").size() == 2789 * kCiphertextRecordBytes);
    REQUIRE(run_cli("decrypt --sec " + sec + " --in " + p(dir, "big.ct") + " --out " +
                        p(dir, "big.out"),
                    dir)
                .exit_code == 0);
    CHECK(read_bytes(dir.path() / "big.out") == payload);
}

TEST_CASE("a tampered ciphertext is rejected with no partial output") {
    TempDir dir;
    const auto [pub, sec] = make_test_keys(dir);
    write_bytes(dir.path() / "msg.bin", random_payload(900, 8200));  // three records
    REQUIRE(run_cli("encrypt --pub " + pub + " --in " + p(dir, "msg.bin") + " --out " +
                        p(dir, "msg.ct"),
                    dir)
                .exit_code == 0);
    auto ct = read_bytes(dir.path() / "msg.ct");
    // Bump one coefficient inside the second record's u1 block, staying below 7
    // so the file still parses and only the verification can catch it.
    const size_t off = kCiphertextRecordBytes + 6 + 200;
    ct[off] = uint8_t((ct[off] + 3) % 7);
    write_bytes(dir.path() / "evil.ct", ct);
    const auto rd = run_cli("decrypt --sec " + sec + " --in " + p(dir, "evil.ct") + " --out " +
                                p(dir, "evil.out"),
                            dir);
    CHECK(rd.exit_code == 2);
    CHECK(rd.err == "reject\n");
    CHECK_FALSE(std::filesystem::exists(dir.path() / "evil.out"));
}

TEST_CASE("io and format problems exit with code 3") {
    TempDir dir;
    const auto [pub, sec] = make_test_keys(dir);
    // Missing input file.
    CHECK(run_cli("encrypt --pub " + pub + " --in " + p(dir, "nope.bin") + " --out " +
                      p(dir, "x.ct"),
                  dir)
              .exit_code == 3);
    CHECK(run_cli("inspect --in " + p(dir, "nope.pub"), dir).exit_code == 3);
    // Truncated key file.
    auto bytes = read_bytes(dir.path() / "test.pub");
    bytes.resize(100);
    write_bytes(dir.path() / "trunc.pub", bytes);
    CHECK(run_cli("inspect --in " + p(dir, "trunc.pub"), dir).exit_code == 3);
    write_bytes(dir.path() / "msg.bin", random_payload(10, 8300));
    CHECK(run_cli("encrypt --pub " + p(dir, "trunc.pub") + " --in " + p(dir, "msg.bin") +
                      " --out " + p(dir, "x.ct"),
                  dir)
              .exit_code == 3);
    // Wrong key kind for the operation.
    REQUIRE(run_cli("encrypt --pub " + pub + " --in " + p(dir, "msg.bin") + " --out " +
                        p(dir, "msg.ct"),
                    dir)
                .exit_code == 0);
    CHECK(run_cli("decrypt --sec " + pub + " --in " + p(dir, "msg.ct") + " --out " +
                      p(dir, "y.bin"),
                  dir)
              .exit_code == 3);
    CHECK(run_cli("encrypt --pub " + sec + " --in " + p(dir, "msg.bin") + " --out " +
                      p(dir, "y.ct"),
                  dir)
              .exit_code == 3);
    // Ciphertext stream that is not a whole number of records.
    auto ct = read_bytes(dir.path() / "msg.ct");
    ct.pop_back();
    write_bytes(dir.path() / "short.ct", ct);
    CHECK(run_cli("decrypt --sec " + sec + " --in " + p(dir, "short.ct") + " --out " +
                      p(dir, "z.bin"),
                  dir)
              .exit_code == 3);
}

TEST_CASE("encode and decode round-trip through a matrix file") {
    TempDir dir;
    const auto payload = random_payload(300, 8400);
    write_bytes(dir.path() / "in.bin", payload);
    REQUIRE(run_cli("encode --in " + p(dir, "in.bin") + " --out " + p(dir, "m.bin"), dir)
                .exit_code == 0);
    CHECK(read_bytes(dir.path() / "m.bin").size() == kMatrixBytes);
    const auto rd = run_cli("decode --in " + p(dir, "m.bin") + " --out -", dir);
    REQUIRE(rd.exit_code == 0);
    CHECK(rd.out == std::string(payload.begin(), payload.end()));
    // Oversized payloads are a format error.
    write_bytes(dir.path() / "fat.bin", random_payload(377, 8500));
    CHECK(run_cli("encode --in " + p(dir, "fat.bin") + " --out " + p(dir, "m2.bin"), dir)
              .exit_code == 3);
}

TEST_CASE("ciphertext inspect reports the record count") {
    TempDir dir;
    const auto [pub, sec] = make_test_keys(dir);
    write_bytes(dir.path() / "msg.bin", random_payload(900, 8600));
    REQUIRE(run_cli("encrypt --pub " + pub + " --in " + p(dir, "msg.bin") + " --out " +
                        p(dir, "msg.ct"),
                    dir)
                .exit_code == 0);
    const auto r = run_cli("inspect --in " + p(dir, "msg.ct"), dir);
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "kind=ciphertext\n"));
    CHECK(contains(r.out, "records=3\n"));
    CHECK(contains(r.out, "u1_density="));
    CHECK(contains(r.out, "v_density="));
}

TEST_CASE("seeded experiments emit identical csv files and echo the summary") {
    TempDir dir;
    const std::string args = " --trials 10 --seed 42 --out ";
    const auto r1 = run_cli("ddh" + args + p(dir, "a.csv"), dir);
    REQUIRE(r1.exit_code == 0);
    const auto r2 = run_cli("ddh" + args + p(dir, "b.csv"), dir);
    REQUIRE(r2.exit_code == 0);
    const std::string a = read_text(dir.path() / "a.csv");
    CHECK(a == read_text(dir.path() / "b.csv"));
    CHECK(std::count(a.begin(), a.end(), '\n') == 1082);  // header + 1080 rows + summary
    CHECK(a.rfind("# summary: mode=ddh trials=10 ") != std::string::npos);
    CHECK(contains(r1.out, "# summary: mode=ddh trials=10 "));
    CHECK(contains(r1.out, "range_small=[1e22,1e27) range_large=[1e44,1e54) "));
    CHECK(contains(r1.out, "seed=42 count_mode=support max_qq_deviation="));
}

TEST_CASE("the masking experiment runs with an svg scatter") {
    TempDir dir;
    const auto r = run_cli("mask --trials 5 --seed 43 --out " + p(dir, "m.csv") + " --svg " +
                               p(dir, "m.svg"),
                           dir);
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "# summary: mode=masking trials=5 "));
    const std::string svg = read_text(dir.path() / "m.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(contains(svg, "</svg>"));
}

TEST_CASE("experiment flag validation") {
    TempDir dir;
    CHECK(run_cli("ddh --trials 0 --out " + p(dir, "x.csv"), dir).exit_code == 1);
    CHECK(run_cli("ddh --trials 5 --count-mode bogus --out " + p(dir, "x.csv"), dir)
              .exit_code == 1);
    CHECK(run_cli("mask --trials 5 --threads 0 --out " + p(dir, "x.csv"), dir).exit_code == 1);
    CHECK(run_cli("ddh --out " + (dir.path() / "no-such-dir" / "x.csv").string() +
                      " --trials 2 --seed 1",
                  dir)
              .exit_code == 3);
}

TEST_CASE("bench prints the kernel table") {
    TempDir dir;
    const auto r = run_cli("bench --reps 2", dir);
    REQUIRE(r.exit_code == 0);
    for (const char* key :
         {"ring_mul_median_us=", "ring_mul_ops_per_sec=", "mat_mul_median_us=",
          "mat_mul_ops_per_sec=", "mat_pow_333_median_ms=", "mat_pow_333_ops_per_sec=",
          "mat_pow_666_median_ms=", "mat_pow_666_ops_per_sec="})
        CHECK(contains(r.out, key));
    double p333 = 0, p666 = 0;
    REQUIRE(std::sscanf(r.out.c_str() + r.out.find("mat_pow_333_median_ms="),
                        "mat_pow_333_median_ms=%lf", &p333) == 1);
    REQUIRE(std::sscanf(r.out.c_str() + r.out.find("mat_pow_666_median_ms="),
                        "mat_pow_666_median_ms=%lf", &p666) == 1);
    // Shared-machine timings are too noisy for tight ratio bounds; check
    // only that the numbers are sane, with generous absolute ceilings.
    CHECK(p333 > 0);
    CHECK(p666 > 0);
    CHECK(p333 < 10000);
    CHECK(p666 < 20000);
}
