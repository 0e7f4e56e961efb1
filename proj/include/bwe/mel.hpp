#ifndef BWE_MEL_HPP
#define BWE_MEL_HPP

#include <vector>

#include "bwe/types.hpp"

namespace bwe {

// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular filterbank on the mel scale, n_mels x (n_fft/2 + 1), row-major.
// Throws if any filter would cover no FFT bin.
std::vector<double> mel_filterbank(int n_mels, int n_fft, int sample_rate,
                                   double f_min, double f_max);

struct MelParams {
    int n_mels = 80;
    int n_fft = 2048;
    int hop = 512;
    double f_min = 0.0;
    double f_max = 24000.0;
};

// Natural log of floored filterbank energies over the power spectrogram:
// log(max(fb . |X|^2, 1e-10)). Frame count matches stft's.
MelSpectrogram mel_spectrogram(const Waveform& w, const MelParams& params = {});

inline constexpr double kMelPowerFloor = 1e-10;

} // namespace bwe

#endif
