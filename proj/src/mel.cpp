#include "bwe/mel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bwe/stft.hpp"

namespace bwe {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<double> mel_filterbank(int n_mels, int n_fft, int sample_rate,
                                   double f_min, double f_max) {
    if (n_mels <= 0) throw std::invalid_argument("mel_filterbank: n_mels must be positive");
    if (!(0.0 <= f_min && f_min < f_max && f_max <= sample_rate / 2.0))
        throw std::invalid_argument("mel_filterbank: need 0 <= f_min < f_max <= nyquist");

    const int n_bins = n_fft / 2 + 1;
    // n_mels + 2 equally spaced points on the mel scale: edges + centers.
    std::vector<double> hz_pts(static_cast<std::size_t>(n_mels) + 2);
    const double mel_lo = hz_to_mel(f_min);
    const double mel_hi = hz_to_mel(f_max);
    for (int i = 0; i < n_mels + 2; ++i)
        hz_pts[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (n_mels + 1));

    std::vector<double> fb(static_cast<std::size_t>(n_mels) * n_bins, 0.0);
    for (int m = 0; m < n_mels; ++m) {
        const double lo = hz_pts[m], c = hz_pts[m + 1], hi = hz_pts[m + 2];
        double row_sum = 0.0;
        for (int k = 0; k < n_bins; ++k) {
            const double f = static_cast<double>(k) * sample_rate / n_fft;
            const double up = (f - lo) / (c - lo);
            const double down = (hi - f) / (hi - c);
            const double wgt = std::max(0.0, std::min(up, down));
            fb[static_cast<std::size_t>(m) * n_bins + k] = wgt;
            row_sum += wgt;
        }
        if (row_sum <= 0.0)
            throw std::invalid_argument(
                "mel_filterbank: filter " + std::to_string(m) +
                " covers no FFT bin; reduce n_mels or increase n_fft");
    }
    return fb;
}

MelSpectrogram mel_spectrogram(const Waveform& w, const MelParams& params) {
    const auto spec = stft(w, params.n_fft, params.hop);
    const auto fb = mel_filterbank(params.n_mels, params.n_fft, w.sample_rate,
                                   params.f_min, params.f_max);
    const int n_bins = spec.n_bins;

    MelSpectrogram mel;
    mel.n_frames = spec.n_frames;
    mel.n_mels = params.n_mels;
    mel.n_fft = params.n_fft;
    mel.hop = params.hop;
    mel.sample_rate = w.sample_rate;
    mel.data.resize(static_cast<std::size_t>(mel.n_frames) * mel.n_mels);

    std::vector<double> power(static_cast<std::size_t>(n_bins));
    for (int t = 0; t < spec.n_frames; ++t) {
        for (int k = 0; k < n_bins; ++k) power[k] = std::norm(spec.at(t, k));
        for (int m = 0; m < params.n_mels; ++m) {
            double e = 0.0;
            const double* row = &fb[static_cast<std::size_t>(m) * n_bins];
            for (int k = 0; k < n_bins; ++k) e += row[k] * power[k];
            mel.at(t, m) = std::log(std::max(e, kMelPowerFloor));
        }
    }
    return mel;
}

} // namespace bwe
