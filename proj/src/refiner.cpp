#include "bwe/refiner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bwe/fft.hpp"

namespace bwe {

std::string to_string(CrossoverVariant v) {
    switch (v) {
    case CrossoverVariant::SmoothstepLR: return "smoothstep-lr";
    case CrossoverVariant::NaiveBrickwall: return "brickwall";
    case CrossoverVariant::Butterworth4: return "butterworth4";
    }
    return "unknown";
}

CrossoverVariant crossover_variant_from_string(const std::string& s) {
    if (s == "smoothstep-lr" || s == "smoothstep") return CrossoverVariant::SmoothstepLR;
    if (s == "brickwall") return CrossoverVariant::NaiveBrickwall;
    if (s == "butterworth4") return CrossoverVariant::Butterworth4;
    throw std::invalid_argument("unknown crossover variant: " + s);
}

void validate_crossover(const CrossoverSpec& spec, double nyquist) {
    if (!(spec.f_start > 0.0))
        throw std::invalid_argument("crossover: f_start must be positive");
    if (spec.f_end > nyquist)
        throw std::invalid_argument("crossover: f_end above Nyquist");
    if (spec.variant == CrossoverVariant::NaiveBrickwall) {
        if (spec.f_start > spec.f_end)
            throw std::invalid_argument("crossover: f_start must not exceed f_end");
    } else if (!(spec.f_start < spec.f_end)) {
        throw std::invalid_argument("crossover: degenerate transition (f_start == f_end)");
    }
}

namespace {

double smoothstep_mask(const CrossoverSpec& spec, double f) {
    if (f < spec.f_start) return 0.0;
    if (f > spec.f_end) return 1.0;
    const double t = (f - spec.f_start) / (spec.f_end - spec.f_start);
    return 3.0 * t * t - 2.0 * t * t * t;
}

double butterworth_hp(const CrossoverSpec& spec, double f) {
    const double r = f / spec.cutoff();
    const double r4 = r * r * r * r;
    return r4 / std::sqrt(1.0 + r4 * r4);
}

double butterworth_lp(const CrossoverSpec& spec, double f) {
    const double r = f / spec.cutoff();
    const double r4 = r * r * r * r;
    return 1.0 / std::sqrt(1.0 + r4 * r4);
}

double mask_at(const CrossoverSpec& spec, double f) {
    switch (spec.variant) {
    case CrossoverVariant::SmoothstepLR: return smoothstep_mask(spec, f);
    case CrossoverVariant::NaiveBrickwall: return f >= spec.cutoff() ? 1.0 : 0.0;
    case CrossoverVariant::Butterworth4: return butterworth_hp(spec, f);
    }
    return 0.0;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

constexpr std::size_t kChunkSize = std::size_t{1} << 20;
constexpr std::size_t kCrossfade = 4096;

// Single-shot merge of one segment.
std::vector<double> refine_segment(std::span<const double> y,
                                   std::span<const double> x_gen,
                                   int sample_rate, const CrossoverSpec& spec) {
    const int n = static_cast<int>(next_pow2(std::max<std::size_t>(y.size(), 2)));
    const RealSpectrum ys = rfft(y, n, sample_rate);
    const RealSpectrum xs = rfft(x_gen, n, sample_rate);
    const RealSpectrum merged = refine_spectra(ys, xs, spec);
    auto full = irfft(merged);
    full.resize(y.size());
    return full;
}

} // namespace

std::vector<double> crossover_mask(const CrossoverSpec& spec,
                                   std::span<const double> bin_freqs) {
    validate_crossover(spec, std::numeric_limits<double>::infinity());
    std::vector<double> mask(bin_freqs.size());
    for (std::size_t i = 0; i < bin_freqs.size(); ++i)
        mask[i] = mask_at(spec, bin_freqs[i]);
    return mask;
}

RealSpectrum refine_spectra(const RealSpectrum& low_anchor,
                            const RealSpectrum& generated,
                            const CrossoverSpec& spec) {
    if (low_anchor.transform_size != generated.transform_size ||
        low_anchor.bins.size() != generated.bins.size())
        throw std::invalid_argument("refine_spectra: spectra size mismatch");
    if (low_anchor.sample_rate != generated.sample_rate)
        throw std::invalid_argument("refine_spectra: sample rate mismatch");
    validate_crossover(spec, low_anchor.sample_rate / 2.0);

    RealSpectrum out = low_anchor;
    const bool butter = spec.variant == CrossoverVariant::Butterworth4;
    for (std::size_t k = 0; k < out.bins.size(); ++k) {
        const double f = low_anchor.bin_freq(k);
        if (butter) {
            out.bins[k] = butterworth_lp(spec, f) * low_anchor.bins[k] +
                          butterworth_hp(spec, f) * generated.bins[k];
            continue;
        }
        const double m = mask_at(spec, f);
        if (m == 0.0)
            out.bins[k] = low_anchor.bins[k];
        else if (m == 1.0)
            out.bins[k] = generated.bins[k];
        else
            out.bins[k] = (1.0 - m) * low_anchor.bins[k] + m * generated.bins[k];
    }
    return out;
}

Waveform refine(const Waveform& low_anchor, const Waveform& generated,
                const CrossoverSpec& spec) {
    if (low_anchor.samples.size() != generated.samples.size())
        throw std::invalid_argument("refine: length mismatch");
    if (low_anchor.sample_rate != generated.sample_rate)
        throw std::invalid_argument("refine: sample rate mismatch");
    if (low_anchor.samples.empty())
        throw std::invalid_argument("refine: empty signal");
    validate_crossover(spec, low_anchor.sample_rate / 2.0);

    const std::size_t len = low_anchor.samples.size();
    Waveform out;
    out.sample_rate = low_anchor.sample_rate;

    if (len <= kChunkSize) {
        out.samples = refine_segment(low_anchor.samples, generated.samples,
                                     low_anchor.sample_rate, spec);
        return out;
    }

    out.samples.assign(len, 0.0);
    const std::size_t step = kChunkSize - kCrossfade;
    std::size_t start = 0;
    bool first = true;
    while (start < len) {
        const std::size_t end = std::min(start + kChunkSize, len);
        const std::size_t n = end - start;
        const auto seg = refine_segment(
            std::span<const double>(low_anchor.samples).subspan(start, n),
            std::span<const double>(generated.samples).subspan(start, n),
            low_anchor.sample_rate, spec);
        if (first) {
            std::copy(seg.begin(), seg.end(), out.samples.begin() + start);
            first = false;
        } else {
            const std::size_t fade = std::min(kCrossfade, n);
            for (std::size_t i = 0; i < fade; ++i) {
                const double a = static_cast<double>(i + 1) / (fade + 1);
                out.samples[start + i] =
                    (1.0 - a) * out.samples[start + i] + a * seg[i];
            }
            std::copy(seg.begin() + fade, seg.end(), out.samples.begin() + start + fade);
        }
        if (end == len) break;
        start += step;
    }
    return out;
}

CrossoverSpec default_crossover(int input_rate) {
    if (input_rate < 8000 || input_rate > 48000)
        throw std::invalid_argument("default_crossover: rate must be in [8000, 48000]");
    const double f_c = input_rate / 2.0;
    const double width = 0.1 * f_c;
    return {f_c - width, f_c, CrossoverVariant::SmoothstepLR};
}

void write_mask_csv(std::ostream& out, const CrossoverSpec& spec, int n_fft,
                    int sample_rate) {
    validate_crossover(spec, sample_rate / 2.0);
    out << "frequency_hz,mask_value\n";
    const int n_bins = n_fft / 2 + 1;
    for (int k = 0; k < n_bins; ++k) {
        const double f = static_cast<double>(k) * sample_rate / n_fft;
        out << f << "," << mask_at(spec, f) << "\n";
    }
}

} // namespace bwe
