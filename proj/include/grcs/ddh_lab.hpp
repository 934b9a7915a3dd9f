#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "grcs/sampler.hpp"

namespace grcs {

enum class ExperimentMode { ddh, masking };

/// How a matrix is tallied into a FrequencyTable. `support` counts, per
/// entry and per group element, the trials in which that element's
/// coefficient is nonzero (120 counters per entry, each at most trials).
/// `coefficient` histograms the coefficient values instead (7 value
/// buckets per entry, 120 increments per entry per trial).
enum class CountMode { support, coefficient };

struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::ddh;
    int trials = 500;
    std::pair<BigNat, BigNat> range_small{BigNat::pow10(22), BigNat::pow10(27)};
    std::pair<BigNat, BigNat> range_large{BigNat::pow10(44), BigNat::pow10(54)};
    std::optional<uint64_t> seed;
    CountMode count_mode = CountMode::support;
    int triangular_factors = 20;
    int threads = 1;

    /// Throws std::invalid_argument unless trials >= 1, both ranges have
    /// lo < hi, factors >= 1 and threads >= 1.
    void validate() const;
};

/// Per matrix entry, one counter per rank (group-element rank in support
/// mode, coefficient value in coefficient mode).
struct FrequencyTable {
    std::array<std::vector<uint32_t>, 9> counts;
    int trials = 0;
    CountMode mode = CountMode::support;
};

FrequencyTable make_table(CountMode mode, int trials);
void tally(FrequencyTable& table, const GRMatrix& m);

/// Per entry, the two sorted count sequences paired positionally.
struct QQSeries {
    std::array<std::vector<std::pair<uint32_t, uint32_t>>, 9> pairs;
    int trials = 0;
};

struct ExperimentResult {
    FrequencyTable table_a;  // ddh: M^(ab); masking: M^a
    FrequencyTable table_b;  // ddh: M^c;    masking: random N
    uint64_t seed_used = 0;
};

/// One fixed invertible M for all trials; per trial fresh a, b from
/// range_small and c from range_large, tallying M^(ab) (computed as
/// (M^a)^b) against M^c.
ExperimentResult run_ddh_experiment(RandomSource& seed_source, const ExperimentConfig& cfg);

/// Per trial a fresh invertible M, fresh a from range_small and a fresh
/// uniform random matrix N, tallying M^a against N.
ExperimentResult run_masking_experiment(RandomSource& seed_source, const ExperimentConfig& cfg);

/// Throws std::invalid_argument when the tables disagree on trial count,
/// counting mode or shape.
QQSeries qq_series(const FrequencyTable& a, const FrequencyTable& b);

/// max over all entries and ranks of |count_a - count_b| / trials.
double max_qq_deviation(const QQSeries& q);

/// Header "entry_row,entry_col,rank,count_a,count_b" plus one row per
/// (entry, rank); LF line endings.
void write_csv(std::ostream& out, const QQSeries& q);
std::string format_csv(const QQSeries& q);

/// "1eK" for exact powers of ten, otherwise the decimal expansion.
std::string format_bound(const BigNat& v);

/// "# summary: mode=... trials=... ..." final comment line.
std::string summary_line(const ExperimentConfig& cfg, const ExperimentResult& result,
                         double deviation);

/// Minimal 3x3 scatter-panel rendering of the series.
std::string format_svg(const QQSeries& q);

}  // namespace grcs
