#include "bwe/stft.hpp"

#include <cmath>
#include <stdexcept>

#include "bwe/fft.hpp"

namespace bwe {

namespace {

// Fold an index into [0, n-1] by bouncing off the ends (reflect padding
// without edge repetition).
std::size_t reflect_index(long long i, long long n) {
    if (n == 1) return 0;
    const long long period = 2 * (n - 1);
    i = ((i % period) + period) % period;
    if (i >= n) i = period - i;
    return static_cast<std::size_t>(i);
}

} // namespace

ComplexSpectrogram stft(const Waveform& w, int n_fft, int hop) {
    if (w.samples.empty())
        throw std::invalid_argument("stft: empty signal");
    if (n_fft <= 0 || !is_power_of_two(static_cast<std::size_t>(n_fft)))
        throw std::invalid_argument("stft: n_fft must be a power of two");
    if (hop <= 0 || hop > n_fft)
        throw std::invalid_argument("stft: hop must be in (0, n_fft]");

    const long long len = static_cast<long long>(w.samples.size());
    const int n_frames = static_cast<int>(len / hop) + 1;
    const auto window = hann_window(n_fft);

    ComplexSpectrogram spec;
    spec.n_frames = n_frames;
    spec.n_bins = n_fft / 2 + 1;
    spec.n_fft = n_fft;
    spec.hop = hop;
    spec.sample_rate = w.sample_rate;
    spec.data.resize(static_cast<std::size_t>(n_frames) * spec.n_bins);

    std::vector<double> frame(static_cast<std::size_t>(n_fft));
    for (int t = 0; t < n_frames; ++t) {
        const long long start = static_cast<long long>(t) * hop - n_fft / 2;
        for (int k = 0; k < n_fft; ++k)
            frame[k] = w.samples[reflect_index(start + k, len)] * window[k];
        const RealSpectrum fs = rfft(frame, n_fft, w.sample_rate);
        for (int b = 0; b < spec.n_bins; ++b) spec.at(t, b) = fs.bins[b];
    }
    return spec;
}

Waveform istft(const ComplexSpectrogram& spec) {
    if (spec.n_frames <= 0 || spec.n_fft <= 0)
        throw std::invalid_argument("istft: empty spectrogram");
    if (spec.n_bins != spec.n_fft / 2 + 1)
        throw std::invalid_argument("istft: bin count inconsistent with n_fft");
    if (spec.hop <= 0 || spec.hop > spec.n_fft)
        throw std::invalid_argument("istft: invalid hop");

    const int n_fft = spec.n_fft;
    const int hop = spec.hop;
    const auto window = hann_window(n_fft);

    const std::size_t padded_len =
        static_cast<std::size_t>(spec.n_frames - 1) * hop + n_fft;
    std::vector<double> acc(padded_len, 0.0);
    std::vector<double> wsum(padded_len, 0.0);

    RealSpectrum fs;
    fs.transform_size = n_fft;
    fs.sample_rate = spec.sample_rate;
    fs.bins.resize(static_cast<std::size_t>(spec.n_bins));
    for (int t = 0; t < spec.n_frames; ++t) {
        for (int b = 0; b < spec.n_bins; ++b) fs.bins[b] = spec.at(t, b);
        const auto frame = irfft(fs);
        const std::size_t off = static_cast<std::size_t>(t) * hop;
        for (int k = 0; k < n_fft; ++k) {
            acc[off + k] += frame[k] * window[k];
            wsum[off + k] += window[k] * window[k];
        }
    }

    Waveform out;
    out.sample_rate = spec.sample_rate;
    out.samples.resize(static_cast<std::size_t>(spec.n_frames) * hop);
    const std::size_t front_pad = static_cast<std::size_t>(n_fft) / 2;
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        const std::size_t j = i + front_pad;
        out.samples[i] = (j < padded_len && wsum[j] > 1e-10) ? acc[j] / wsum[j] : 0.0;
    }
    return out;
}

} // namespace bwe
