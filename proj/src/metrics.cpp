#include "bwe/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "bwe/mel.hpp"
#include "bwe/stft.hpp"

namespace bwe {

namespace {

void check_pair(const Waveform& a, const Waveform& b) {
    if (a.samples.empty() || b.samples.empty())
        throw std::invalid_argument("metrics: empty signal");
    if (a.samples.size() != b.samples.size())
        throw std::invalid_argument("metrics: length mismatch");
    if (a.sample_rate != b.sample_rate)
        throw std::invalid_argument("metrics: sample rate mismatch");
}

constexpr double kMagFloor = 1e-10;

} // namespace

double lsd(const Waveform& reference, const Waveform& estimate, const LsdConfig& cfg) {
    check_pair(reference, estimate);
    if (cfg.epsilon <= 0.0) throw std::invalid_argument("lsd: epsilon must be positive");

    const auto R = stft(reference, cfg.n_fft, cfg.hop);
    const auto E = stft(estimate, cfg.n_fft, cfg.hop);

    double total = 0.0;
    for (int t = 0; t < R.n_frames; ++t) {
        double sq = 0.0;
        for (int k = 0; k < R.n_bins; ++k) {
            const double pr = std::max(std::norm(R.at(t, k)), cfg.epsilon);
            const double pe = std::max(std::norm(E.at(t, k)), cfg.epsilon);
            const double d = std::log10(pr) - std::log10(pe);
            sq += d * d;
        }
        total += std::sqrt(sq / R.n_bins);
    }
    return total / R.n_frames;
}

double mrstft_distance(const Waveform& reference, const Waveform& estimate) {
    check_pair(reference, estimate);

    double total = 0.0;
    for (int n_fft : {512, 1024, 2048}) {
        const int hop = n_fft / 4;
        const auto R = stft(reference, n_fft, hop);
        const auto E = stft(estimate, n_fft, hop);

        double diff_sq = 0.0, ref_sq = 0.0, log_l1 = 0.0;
        const std::size_t n = R.data.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double mr = std::abs(R.data[i]);
            const double me = std::abs(E.data[i]);
            diff_sq += (mr - me) * (mr - me);
            ref_sq += mr * mr;
            log_l1 += std::abs(std::log(mr + kMagFloor) - std::log(me + kMagFloor));
        }
        const double sc = ref_sq > 0.0 ? std::sqrt(diff_sq) / std::sqrt(ref_sq) : 0.0;
        total += sc + log_l1 / static_cast<double>(n);
    }
    return total;
}

double mel_l1(const Waveform& reference, const Waveform& estimate) {
    check_pair(reference, estimate);
    if (reference.sample_rate != 48000)
        throw std::invalid_argument("mel_l1: expects 48 kHz signals");

    const int n_fft = 2048, hop = 512, n_mels = 128;
    const auto R = stft(reference, n_fft, hop);
    const auto E = stft(estimate, n_fft, hop);
    const auto fb = mel_filterbank(n_mels, n_fft, 48000, 0.0, 24000.0);
    const int n_bins = R.n_bins;

    double total = 0.0;
    std::vector<double> mr(static_cast<std::size_t>(n_bins));
    std::vector<double> me(static_cast<std::size_t>(n_bins));
    for (int t = 0; t < R.n_frames; ++t) {
        for (int k = 0; k < n_bins; ++k) {
            mr[k] = std::abs(R.at(t, k));
            me[k] = std::abs(E.at(t, k));
        }
        for (int m = 0; m < n_mels; ++m) {
            const double* row = &fb[static_cast<std::size_t>(m) * n_bins];
            double er = 0.0, ee = 0.0;
            for (int k = 0; k < n_bins; ++k) {
                er += row[k] * mr[k];
                ee += row[k] * me[k];
            }
            total += std::abs(std::log(std::max(er, kMagFloor)) -
                              std::log(std::max(ee, kMagFloor)));
        }
    }
    return total / (static_cast<double>(R.n_frames) * n_mels);
}

} // namespace bwe
