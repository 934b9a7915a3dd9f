// Calibrates the acceptance threshold for max_qq_deviation.
//
// Null model: both tables tally the same distribution (uniform random
// matrices, support counting), so any deviation is pure sampling noise.
// The suite's threshold is the 99th percentile over --runs control runs;
// rerun this tool to regenerate the number frozen there.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <vector>

#include "grcs/ddh_lab.hpp"

using namespace grcs;

int main(int argc, char** argv) {
    CLI::App app{"max_qq_deviation null-distribution calibration"};
    int runs = 100, trials = 500;
    uint64_t seed = 1;
    app.add_option("--runs", runs, "Control runs")->capture_default_str();
    app.add_option("--trials", trials, "Trials per table")->capture_default_str();
    app.add_option("--seed", seed, "Master seed")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    std::vector<double> devs;
    devs.reserve(runs);
    for (int run = 0; run < runs; ++run) {
        FrequencyTable a = make_table(CountMode::support, trials);
        FrequencyTable b = make_table(CountMode::support, trials);
        auto ra = derive_stream(seed, 2 * uint64_t(run));
        auto rb = derive_stream(seed, 2 * uint64_t(run) + 1);
        for (int t = 0; t < trials; ++t) {
            tally(a, random_matrix(ra));
            tally(b, random_matrix(rb));
        }
        devs.push_back(max_qq_deviation(qq_series(a, b)));
    }
    std::sort(devs.begin(), devs.end());
    const auto pct = [&](double p) {
        const size_t i = std::min(devs.size() - 1, size_t(p * double(devs.size())));
        return devs[i];
    };
    std::printf("runs=%d trials=%d seed=%llu\n", runs, trials, (unsigned long long)seed);
    std::printf("p50=%.6f\n", pct(0.50));
    std::printf("p90=%.6f\n", pct(0.90));
    std::printf("p99=%.6f\n", pct(0.99));
    std::printf("max=%.6f\n", devs.back());
    return 0;
}
