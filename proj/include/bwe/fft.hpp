#ifndef BWE_FFT_HPP
#define BWE_FFT_HPP

#include <complex>
#include <span>
#include <vector>

#include "bwe/types.hpp"

namespace bwe {

bool is_power_of_two(std::size_t n);

// In-place radix-2 transform; size must be a power of two.
void fft(std::vector<std::complex<double>>& a, bool inverse);

// One-sided real FFT. transform_size must be a power of two >= signal length;
// the tail is zero-padded. Bins 0 and N/2 are forced real.
RealSpectrum rfft(std::span<const double> signal, int transform_size, int sample_rate = 0);

// Inverse of rfft; returns transform_size real samples.
std::vector<double> irfft(const RealSpectrum& spec);

// Periodic Hann window, w[n] = 0.5 - 0.5 cos(2 pi n / size).
std::vector<double> hann_window(int size);

} // namespace bwe

#endif
