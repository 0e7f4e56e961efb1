#ifndef BWE_TYPES_HPP
#define BWE_TYPES_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace bwe {

// Mono sample buffer. Samples are dimensionless amplitudes, nominally in [-1, 1].
struct Waveform {
    std::vector<double> samples;
    int sample_rate = 0; // Hz

    std::size_t size() const { return samples.size(); }
    double duration() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// One-sided spectrum of a whole real signal: transform_size/2 + 1 bins.
// Bin k corresponds to frequency k * sample_rate / transform_size.
struct RealSpectrum {
    std::vector<std::complex<double>> bins;
    int transform_size = 0;
    int sample_rate = 0;

    double bin_freq(std::size_t k) const {
        return static_cast<double>(k) * sample_rate / transform_size;
    }
};

// Framed complex STFT, n_frames x n_bins with n_bins = n_fft/2 + 1.
struct ComplexSpectrogram {
    std::vector<std::complex<double>> data; // row-major, frame-major
    int n_frames = 0;
    int n_bins = 0;
    int n_fft = 0;
    int hop = 0;
    int sample_rate = 0;

    std::complex<double>& at(int frame, int bin) {
        return data[static_cast<std::size_t>(frame) * n_bins + bin];
    }
    const std::complex<double>& at(int frame, int bin) const {
        return data[static_cast<std::size_t>(frame) * n_bins + bin];
    }
};

// Log-mel spectrogram, n_frames x n_mels, natural log of floored filterbank energies.
struct MelSpectrogram {
    std::vector<double> data; // row-major, frame-major
    int n_frames = 0;
    int n_mels = 0;
    int n_fft = 0;
    int hop = 0;
    int sample_rate = 0;

    double& at(int frame, int mel) {
        return data[static_cast<std::size_t>(frame) * n_mels + mel];
    }
    double at(int frame, int mel) const {
        return data[static_cast<std::size_t>(frame) * n_mels + mel];
    }
};

} // namespace bwe

#endif
