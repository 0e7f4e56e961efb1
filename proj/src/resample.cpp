#include "bwe/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bwe {

namespace {

// Target transition width relative to the cutoff. The stopband edge is
// placed exactly at the lower Nyquist by shrinking the kernel cutoff, and
// the rolloff is deliberately spread across the top ~16% of the passband:
// that is the region the crossover refiner hands off to the generator, so
// a gentle shading there beats a razor edge followed by aliasing.
constexpr double kTransitionRel = 0.18;

// Natural (narrowest) transition of the Kaiser(8.0) prototype at 255 taps,
// in units of the cutoff; used to scale the kernel support so the realized
// transition matches kTransitionRel.
constexpr double kNaturalTransRel = 0.0402;

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    const double px = M_PI * x;
    return std::sin(px) / px;
}

double kaiser(double r, double beta) {
    // r in [-1, 1]
    const double a = 1.0 - r * r;
    if (a < 0.0) return 0.0;
    return std::cyl_bessel_i(0.0, beta * std::sqrt(a)) / std::cyl_bessel_i(0.0, beta);
}

struct Polyphase {
    int half = 0;                         // K: taps span [-K, K] around the base index
    std::vector<std::vector<double>> phases; // phases[p][i + K] = weight at offset i
};

Polyphase build_polyphase(int up, int down, int taps, double beta) {
    const double cutoff_nom = std::min(1.0, static_cast<double>(up) / down);
    const double cutoff = cutoff_nom / (1.0 + kTransitionRel / 2.0);
    const double proto_half = (taps - 1) / 2.0;
    // shorter support -> wider transition; the ratio realizes kTransitionRel
    const double support =
        proto_half * (kNaturalTransRel / kTransitionRel) / cutoff; // input samples
    const int half = std::max(1, static_cast<int>(std::ceil(support)));

    Polyphase pp;
    pp.half = half;
    pp.phases.resize(static_cast<std::size_t>(up));
    for (int p = 0; p < up; ++p) {
        auto& w = pp.phases[p];
        w.assign(static_cast<std::size_t>(2 * half + 1), 0.0);
        double sum = 0.0;
        const double frac = static_cast<double>(p) / up;
        for (int i = -half; i <= half; ++i) {
            const double t = frac - i;
            if (std::abs(t) > support) continue;
            const double v = cutoff * sinc(cutoff * t) * kaiser(t / support, beta);
            w[i + half] = v;
            sum += v;
        }
        // unit DC gain per phase
        for (auto& x : w) x /= sum;
    }
    return pp;
}

} // namespace

Waveform resample(const Waveform& w, int target_rate, const ResampleMethod& method) {
    if (w.samples.empty()) throw std::invalid_argument("resample: empty signal");
    if (w.sample_rate <= 0) throw std::invalid_argument("resample: invalid source rate");
    if (target_rate <= 0) throw std::invalid_argument("resample: invalid target rate");
    if (method.kind == ResampleKind::Sinc) {
        if (method.taps < 3 || method.taps % 2 == 0)
            throw std::invalid_argument("resample: sinc taps must be odd and >= 3");
    }

    if (target_rate == w.sample_rate) return w;

    const int g = std::gcd(w.sample_rate, target_rate);
    const long long up = target_rate / g;
    const long long down = w.sample_rate / g;
    const long long in_len = static_cast<long long>(w.samples.size());
    const long long out_len = static_cast<long long>(
        std::llround(static_cast<double>(in_len) * target_rate / w.sample_rate));

    Waveform out;
    out.sample_rate = target_rate;
    out.samples.resize(static_cast<std::size_t>(out_len));
    const double* x = w.samples.data();

    switch (method.kind) {
    case ResampleKind::ZeroOrderHold: {
        #pragma omp parallel for schedule(static)
        for (long long n = 0; n < out_len; ++n) {
            const long long k = std::min(in_len - 1, n * down / up);
            out.samples[n] = x[k];
        }
        break;
    }
    case ResampleKind::Linear: {
        #pragma omp parallel for schedule(static)
        for (long long n = 0; n < out_len; ++n) {
            const long long pos_num = n * down;
            const long long i0 = pos_num / up;
            const double frac = static_cast<double>(pos_num % up) / up;
            const double a = x[std::min(i0, in_len - 1)];
            const double b = x[std::min(i0 + 1, in_len - 1)];
            out.samples[n] = a + (b - a) * frac;
        }
        break;
    }
    case ResampleKind::Sinc: {
        const Polyphase pp =
            build_polyphase(static_cast<int>(up), static_cast<int>(down),
                            method.taps, method.kaiser_beta);
        const int half = pp.half;
        #pragma omp parallel for schedule(static)
        for (long long n = 0; n < out_len; ++n) {
            const long long pos_num = n * down;
            const long long base = pos_num / up;
            const auto& wgt = pp.phases[static_cast<std::size_t>(pos_num % up)];
            const long long k_lo = std::max<long long>(base - half, 0);
            const long long k_hi = std::min<long long>(base + half, in_len - 1);
            double acc = 0.0;
            for (long long k = k_lo; k <= k_hi; ++k)
                acc += wgt[k - (base - half)] * x[k];
            out.samples[n] = acc;
        }
        break;
    }
    }
    return out;
}

Waveform quantize(const Waveform& w, int bits) {
    if (bits < 4 || bits > 16)
        throw std::invalid_argument("quantize: bits must be in [4, 16]");
    const double step = 2.0 / static_cast<double>(1 << bits);
    const double top = 1.0 - step / 2.0;

    Waveform out = w;
    for (auto& s : out.samples) {
        const double c = std::clamp(s, -1.0, 1.0);
        double q = (std::floor(c / step) + 0.5) * step;
        s = std::clamp(q, -top, top);
    }
    return out;
}

Waveform degrade(const Waveform& w, const DegradeSpec& spec) {
    if (w.sample_rate != 48000)
        throw std::invalid_argument("degrade: input must be 48 kHz");
    if (spec.target_rate < 8000 || spec.target_rate > 48000)
        throw std::invalid_argument("degrade: target rate must be in [8000, 48000]");
    if (spec.quant_bits && (*spec.quant_bits < 4 || *spec.quant_bits > 16))
        throw std::invalid_argument("degrade: quant bits must be in [4, 16]");

    Waveform low = resample(w, spec.target_rate, spec.method);
    if (spec.quant_bits) low = quantize(low, *spec.quant_bits);
    Waveform back = resample(low, 48000, ResampleMethod::sinc());
    back.samples.resize(w.samples.size(), 0.0);
    return back;
}

} // namespace bwe
