#ifndef BWE_REFERENCE_HPP
#define BWE_REFERENCE_HPP

// Serial straight-line reference implementations. These exist as independent
// oracles for the optimized kernels and are exercised by the test and
// benchmark targets; nothing in the production path calls them.

#include <complex>
#include <span>
#include <vector>

#include "bwe/types.hpp"
#include "bwe/vocoder.hpp"

namespace bwe::ref {

// Direct O(N^2) DFT of a real signal, one-sided (N/2 + 1 bins).
std::vector<std::complex<double>> naive_dft(std::span<const double> signal, int n);

// Plain-loop serial ConvNeXt block, same arithmetic as bwe::convnext_block.
Mat convnext_block(const Mat& x, const ConvNextBlockWeights& w,
                   const VocoderConfig& cfg);

// Plain-loop serial forward pass mirroring bwe::forward.
ComplexSpectrogram forward(const VocoderModel& model, const MelSpectrogram& mel);

// Mean power of the spectrum bins whose frequency lies in [f_lo, f_hi),
// Welch-style average over Hann-windowed frames.
double band_power(const Waveform& w, double f_lo, double f_hi,
                  int n_fft = 4096, int hop = 1024);

} // namespace bwe::ref

#endif
