#include "grcs/ddh_lab.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace grcs {
namespace {

void add_into(FrequencyTable& dst, const FrequencyTable& src) {
    for (size_t e = 0; e < dst.counts.size(); ++e)
        for (size_t i = 0; i < dst.counts[e].size(); ++i) dst.counts[e][i] += src.counts[e][i];
}

/// Runs cfg.trials independent trials, each on its own generator derived
/// from (seed, trial index), so the tallies do not depend on scheduling.
void run_trials(const ExperimentConfig& cfg, uint64_t seed,
                const std::function<void(RandomSource&, FrequencyTable&, FrequencyTable&)>& trial,
                FrequencyTable& a, FrequencyTable& b) {
    const int threads = std::clamp(cfg.threads, 1, cfg.trials);
    if (threads == 1) {
        for (int t = 0; t < cfg.trials; ++t) {
            auto rng = derive_stream(seed, uint64_t(t) + 1);
            trial(rng, a, b);
        }
        return;
    }
    std::vector<std::pair<FrequencyTable, FrequencyTable>> parts(
        threads, {make_table(cfg.count_mode, cfg.trials), make_table(cfg.count_mode, cfg.trials)});
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (int t = w; t < cfg.trials; t += threads) {
                auto rng = derive_stream(seed, uint64_t(t) + 1);
                trial(rng, parts[w].first, parts[w].second);
            }
        });
    for (auto& th : pool) th.join();
    for (const auto& p : parts) {
        add_into(a, p.first);
        add_into(b, p.second);
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("experiment needs at least one trial");
    if (!(range_small.first < range_small.second))
        throw std::invalid_argument("small exponent range is empty");
    if (!(range_large.first < range_large.second))
        throw std::invalid_argument("large exponent range is empty");
    if (triangular_factors < 1) throw std::invalid_argument("need at least one triangular factor");
    if (threads < 1) throw std::invalid_argument("need at least one thread");
}

FrequencyTable make_table(CountMode mode, int trials) {
    FrequencyTable t;
    t.trials = trials;
    t.mode = mode;
    const size_t len = mode == CountMode::support ? kOrder : size_t(kModulus);
    for (auto& row : t.counts) row.assign(len, 0);
    return t;
}

void tally(FrequencyTable& table, const GRMatrix& m) {
    for (size_t e = 0; e < m.entries.size(); ++e) {
        const auto& coeffs = m.entries[e].coeffs;
        auto& row = table.counts[e];
        if (table.mode == CountMode::support) {
            for (size_t i = 0; i < coeffs.size(); ++i) row[i] += coeffs[i] != 0;
        } else {
            for (size_t i = 0; i < coeffs.size(); ++i) ++row[coeffs[i]];
        }
    }
}

ExperimentResult run_ddh_experiment(RandomSource& seed_source, const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.mode != ExperimentMode::ddh)
        throw std::invalid_argument("config is not for the ddh experiment");
    ExperimentResult r;
    r.seed_used = cfg.seed ? *cfg.seed : seed_source.next_u64();
    r.table_a = make_table(cfg.count_mode, cfg.trials);
    r.table_b = make_table(cfg.count_mode, cfg.trials);
    auto master = derive_stream(r.seed_used, 0);
    const GRMatrix m = sample_invertible(master, cfg.triangular_factors).m;
    run_trials(
        cfg, r.seed_used,
        [&](RandomSource& rng, FrequencyTable& ta, FrequencyTable& tb) {
            const BigNat a = sample_exponent_range(rng, cfg.range_small.first, cfg.range_small.second);
            const BigNat b = sample_exponent_range(rng, cfg.range_small.first, cfg.range_small.second);
            const BigNat c = sample_exponent_range(rng, cfg.range_large.first, cfg.range_large.second);
            tally(ta, mat_pow(mat_pow(m, a), b));
            tally(tb, mat_pow(m, c));
        },
        r.table_a, r.table_b);
    return r;
}

ExperimentResult run_masking_experiment(RandomSource& seed_source, const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.mode != ExperimentMode::masking)
        throw std::invalid_argument("config is not for the masking experiment");
    ExperimentResult r;
    r.seed_used = cfg.seed ? *cfg.seed : seed_source.next_u64();
    r.table_a = make_table(cfg.count_mode, cfg.trials);
    r.table_b = make_table(cfg.count_mode, cfg.trials);
    run_trials(
        cfg, r.seed_used,
        [&](RandomSource& rng, FrequencyTable& ta, FrequencyTable& tb) {
            const GRMatrix m = sample_invertible(rng, cfg.triangular_factors).m;
            const BigNat a = sample_exponent_range(rng, cfg.range_small.first, cfg.range_small.second);
            const GRMatrix n = random_matrix(rng);
            tally(ta, mat_pow(m, a));
            tally(tb, n);
        },
        r.table_a, r.table_b);
    return r;
}

QQSeries qq_series(const FrequencyTable& a, const FrequencyTable& b) {
    if (a.trials != b.trials) throw std::invalid_argument("tables disagree on trial count");
    if (a.mode != b.mode) throw std::invalid_argument("tables disagree on counting mode");
    QQSeries q;
    q.trials = a.trials;
    for (size_t e = 0; e < a.counts.size(); ++e) {
        if (a.counts[e].size() != b.counts[e].size())
            throw std::invalid_argument("tables disagree on shape");
        auto sa = a.counts[e];
        auto sb = b.counts[e];
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        q.pairs[e].resize(sa.size());
        for (size_t i = 0; i < sa.size(); ++i) q.pairs[e][i] = {sa[i], sb[i]};
    }
    return q;
}

double max_qq_deviation(const QQSeries& q) {
    int64_t worst = 0;
    for (const auto& entry : q.pairs)
        for (const auto& [ca, cb] : entry)
            worst = std::max(worst, std::abs(int64_t(ca) - int64_t(cb)));
    return q.trials == 0 ? 0.0 : double(worst) / double(q.trials);
}

void write_csv(std::ostream& out, const QQSeries& q) {
    out << "entry_row,entry_col,rank,count_a,count_b\n";
    for (size_t e = 0; e < q.pairs.size(); ++e)
        for (size_t r = 0; r < q.pairs[e].size(); ++r)
            out << e / 3 << ',' << e % 3 << ',' << r << ',' << q.pairs[e][r].first << ','
                << q.pairs[e][r].second << '\n';
}

std::string format_csv(const QQSeries& q) {
    std::ostringstream out;
    write_csv(out, q);
    return out.str();
}

std::string format_bound(const BigNat& v) {
    const size_t d = v.decimal_digits();
    if (d > 1 && v == BigNat::pow10(unsigned(d - 1))) return "1e" + std::to_string(d - 1);
    return v.to_decimal();
}

std::string summary_line(const ExperimentConfig& cfg, const ExperimentResult& result,
                         double deviation) {
    char dev[32];
    std::snprintf(dev, sizeof dev, "%.6f", deviation);
    std::ostringstream out;
    out << "# summary: mode=" << (cfg.mode == ExperimentMode::ddh ? "ddh" : "masking")
        << " trials=" << cfg.trials << " range_small=[" << format_bound(cfg.range_small.first)
        << ',' << format_bound(cfg.range_small.second) << ") range_large=["
        << format_bound(cfg.range_large.first) << ',' << format_bound(cfg.range_large.second)
        << ") seed=" << result.seed_used << " count_mode="
        << (cfg.count_mode == CountMode::support ? "support" : "coefficient")
        << " max_qq_deviation=" << dev;
    return out.str();
}

std::string format_svg(const QQSeries& q) {
    constexpr int panel = 280, gap = 20, margin = 20;
    constexpr int size = 2 * margin + 3 * panel + 2 * gap;
    uint32_t maxc = 1;
    for (const auto& entry : q.pairs)
        for (const auto& [ca, cb] : entry) maxc = std::max({maxc, ca, cb});
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << size << ' ' << size
        << "\">\n";
    for (size_t e = 0; e < q.pairs.size(); ++e) {
        const int x0 = margin + int(e % 3) * (panel + gap);
        const int y0 = margin + int(e / 3) * (panel + gap);
        out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << panel << "\" height=\""
            << panel << "\" fill=\"none\" stroke=\"#999\"/>\n";
        out << "<line x1=\"" << x0 << "\" y1=\"" << y0 + panel << "\" x2=\"" << x0 + panel
            << "\" y2=\"" << y0 << "\" stroke=\"#ccc\"/>\n";
        out << "<text x=\"" << x0 + 4 << "\" y=\"" << y0 + 14 << "\" font-size=\"12\">(" << e / 3
            << ',' << e % 3 << ")</text>\n";
        for (const auto& [ca, cb] : q.pairs[e]) {
            const double px = x0 + double(ca) / maxc * panel;
            const double py = y0 + panel - double(cb) / maxc * panel;
            out << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"2\" fill=\"#36c\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace grcs
