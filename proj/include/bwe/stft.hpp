#ifndef BWE_STFT_HPP
#define BWE_STFT_HPP

#include "bwe/types.hpp"

namespace bwe {

// Hann-windowed STFT with reflect padding of n_fft/2 on both sides, so frame t
// is centered at sample t*hop. Frame count is floor(len/hop) + 1.
ComplexSpectrogram stft(const Waveform& w, int n_fft, int hop);

// Weighted overlap-add inverse with per-sample window-square normalization.
// Returns n_frames * hop samples; exact reconstruction wherever the window
// sum is nonzero (any hop <= n_fft; the pipeline uses hop = n_fft/4).
Waveform istft(const ComplexSpectrogram& spec);

} // namespace bwe

#endif
