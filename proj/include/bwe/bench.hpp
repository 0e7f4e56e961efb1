#ifndef BWE_BENCH_HPP
#define BWE_BENCH_HPP

#include <cstdint>

#include "bwe/refiner.hpp"
#include "bwe/vocoder.hpp"

namespace bwe {

struct BenchOptions {
    double duration = 4.0; // seconds of synthetic 48 kHz noise
    int batch = 1;
    int warmup = 2;
    int iters = 5;
    uint64_t seed = 0;
    int threads = 0; // 0 = leave OpenMP default
};

struct BenchReport {
    double duration = 0.0;
    int batch = 1;
    int warmup = 0;
    int iters = 0;
    int threads = 1;
    double latency_s = 0.0; // median whole-batch generate+refine wall time
    double rtf = 0.0;       // latency / (duration * batch)
    double speed_x = 0.0;   // 1 / rtf
};

// Times generate + refine only; input synthesis and mel warm structures are
// outside the measured region, mirroring a preprocessing-excluded protocol.
BenchReport run_bench(const VocoderModel& model, const BenchOptions& opts);

} // namespace bwe

#endif
