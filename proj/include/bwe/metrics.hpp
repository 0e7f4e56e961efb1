#ifndef BWE_METRICS_HPP
#define BWE_METRICS_HPP

#include "bwe/types.hpp"

namespace bwe {

struct LsdConfig {
    int n_fft = 2048;
    int hop = 512;
    double epsilon = 1e-10; // power floor before log10
};

// Log-spectral distance: per frame, RMS over bins of log10-power differences,
// averaged over frames. Powers are floored at cfg.epsilon.
double lsd(const Waveform& reference, const Waveform& estimate,
           const LsdConfig& cfg = {});

// Sum over n_fft in {512, 1024, 2048} (hop n_fft/4, Hann) of
//   ||R| - |E||_F / ||R||_F  +  mean |ln(|R| + eps) - ln(|E| + eps)|
// with eps = 1e-10 on magnitudes, unit term weights.
double mrstft_distance(const Waveform& reference, const Waveform& estimate);

// Mean absolute difference of 128-bin log-mel spectrograms at 48 kHz,
// n_fft 2048 / hop 512, natural log of the *magnitude*-spectrogram mel
// energies floored at 1e-10 (so a global amplitude factor a shifts every
// unfloored value by ln a).
double mel_l1(const Waveform& reference, const Waveform& estimate);

} // namespace bwe

#endif
