#include "bwe/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <vector>

#include <omp.h>

namespace bwe {

BenchReport run_bench(const VocoderModel& model, const BenchOptions& opts) {
    if (opts.threads > 0) omp_set_num_threads(opts.threads);

    const int rate = static_cast<int>(model.config.sample_rate);
    const std::size_t len = static_cast<std::size_t>(opts.duration * rate);
    std::mt19937 rng(static_cast<uint32_t>(opts.seed));
    Waveform input;
    input.sample_rate = rate;
    input.samples.resize(len);
    for (auto& s : input.samples)
        s = rng() * (2.0 / 4294967296.0) - 1.0;

    const CrossoverSpec spec = default_crossover(rate);

    auto one_batch = [&] {
        for (int b = 0; b < opts.batch; ++b) {
            Waveform gen = generate(model, input);
            Waveform refined = refine(input, gen, spec);
            (void)refined;
        }
    };

    for (int i = 0; i < opts.warmup; ++i) one_batch();

    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(opts.iters));
    for (int i = 0; i < opts.iters; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        one_batch();
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    const double median = times.size() % 2 == 1
                              ? times[times.size() / 2]
                              : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);

    BenchReport rep;
    rep.duration = opts.duration;
    rep.batch = opts.batch;
    rep.warmup = opts.warmup;
    rep.iters = opts.iters;
    rep.threads = omp_get_max_threads();
    rep.latency_s = median;
    rep.rtf = median / (opts.duration * opts.batch);
    rep.speed_x = 1.0 / rep.rtf;
    return rep;
}

} // namespace bwe
