#pragma once

// Shared test helpers: brute-force oracles written against the
// definitions (not the optimized kernels), a scriptable random source,
// and subprocess plumbing for CLI tests.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "grcs/gmatrix.hpp"
#include "grcs/rng.hpp"

namespace grcs::testing {

/// Convolution straight from the definition: (ab)(g) sums a(p)b(q) over
/// all factorizations g = p q, via compose/rank on raw permutations.
inline GroupRingElement naive_ring_mul(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement out;
    std::array<unsigned, kOrder> acc{};
    for (int i = 0; i < kOrder; ++i) {
        if (!a.coeffs[i]) continue;
        for (int j = 0; j < kOrder; ++j) {
            const int g = rank(compose(unrank(i), unrank(j)));
            acc[g] += unsigned(a.coeffs[i]) * b.coeffs[j];
        }
    }
    for (int g = 0; g < kOrder; ++g) out.coeffs[g] = uint8_t(acc[g] % 7);
    return out;
}

inline GroupRingElement naive_ring_add(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement out;
    for (int i = 0; i < kOrder; ++i) out.coeffs[i] = uint8_t((a.coeffs[i] + b.coeffs[i]) % 7);
    return out;
}

/// Schoolbook matrix product over the naive ring operations.
inline GRMatrix naive_mat_mul(const GRMatrix& a, const GRMatrix& b) {
    GRMatrix out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            GroupRingElement sum;
            for (int k = 0; k < 3; ++k)
                sum = naive_ring_add(sum, naive_ring_mul(a.at(r, k), b.at(k, c)));
            out.at(r, c) = sum;
        }
    return out;
}

/// Repeated naive multiplication; small exponents only.
inline GRMatrix naive_mat_pow(const GRMatrix& a, unsigned e) {
    GRMatrix out = GRMatrix::identity();
    for (unsigned i = 0; i < e; ++i) out = naive_mat_mul(out, a);
    return out;
}

/// Plays back a scripted prefix of words, then falls through to a seeded
/// generator. Used to force specific sampling paths.
class ScriptedRandomSource final : public RandomSource {
public:
    ScriptedRandomSource(std::vector<uint64_t> script, uint64_t fallback_seed)
        : script_(script.begin(), script.end()), fallback_(fallback_seed) {}

    uint64_t next_u64() override {
        if (!script_.empty()) {
            const uint64_t v = script_.front();
            script_.pop_front();
            return v;
        }
        return fallback_.next_u64();
    }

private:
    std::deque<uint64_t> script_;
    SeededRandomSource fallback_;
};

/// Self-deleting scratch directory.
class TempDir {
public:
    TempDir() {
        const auto base = std::filesystem::temp_directory_path();
        for (int i = 0;; ++i) {
            path_ = base / ("grcs-test-" + std::to_string(::getpid()) + "-" + std::to_string(i));
            if (std::filesystem::create_directory(path_)) break;
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_bytes(const std::filesystem::path& p, const std::vector<uint8_t>& bytes) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

inline std::vector<uint8_t> read_bytes(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs the binary named by the GRCS_CLI environment variable with the
/// given (already quoted-safe) argument string.
inline CliResult run_cli(const std::string& args, const TempDir& dir) {
    const char* bin = std::getenv("GRCS_CLI");
    if (!bin) throw std::runtime_error("GRCS_CLI is not set");
    const auto out_path = dir.path() / "cli.stdout";
    const auto err_path = dir.path() / "cli.stderr";
    const std::string cmd = std::string(bin) + " " + args + " >" + out_path.string() + " 2>" +
                            err_path.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    if (status == -1)
        r.exit_code = -1;
    else if (WIFEXITED(status))
        r.exit_code = WEXITSTATUS(status);
    r.out = read_text(out_path);
    r.err = read_text(err_path);
    return r;
}

}  // namespace grcs::testing
