#ifndef BWE_REFINER_HPP
#define BWE_REFINER_HPP

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bwe/types.hpp"

namespace bwe {

enum class CrossoverVariant { SmoothstepLR, NaiveBrickwall, Butterworth4 };

std::string to_string(CrossoverVariant v);
CrossoverVariant crossover_variant_from_string(const std::string& s);

struct CrossoverSpec {
    double f_start = 0.0;
    double f_end = 0.0;
    CrossoverVariant variant = CrossoverVariant::SmoothstepLR;

    double cutoff() const { return 0.5 * (f_start + f_end); }
};

// Throws std::invalid_argument on a degenerate spec. NaiveBrickwall permits
// f_start == f_end; the others require a nonempty transition.
void validate_crossover(const CrossoverSpec& spec, double nyquist);

// Per-bin blend weight in [0, 1]. bin_freqs must be ascending.
// SmoothstepLR: 0 below f_start, 3t^2 - 2t^3 inside, 1 above f_end.
// NaiveBrickwall: step at the midpoint cutoff.
// Butterworth4: highpass magnitude (f/fc)^4 / sqrt(1 + (f/fc)^8); the
// complementary lowpass 1 / sqrt(1 + (f/fc)^8) weights the low band.
std::vector<double> crossover_mask(const CrossoverSpec& spec,
                                   std::span<const double> bin_freqs);

// Blend of two whole-signal spectra: X_hat = (1 - M) Y + M X_gen per bin.
// Bins where M == 0 are copied bit-exactly from Y, M == 1 from X_gen.
RealSpectrum refine_spectra(const RealSpectrum& low_anchor,
                            const RealSpectrum& generated,
                            const CrossoverSpec& spec);

// Whole-signal frequency-domain merge via rfft/irfft, trimmed to the input
// length. Signals longer than 2^20 samples are processed in overlapping
// chunks with 4096-sample linear crossfades.
Waveform refine(const Waveform& low_anchor, const Waveform& generated,
                const CrossoverSpec& spec);

// Transition just below the input Nyquist: f_end = rate/2, width 10% of f_end.
CrossoverSpec default_crossover(int input_rate);

// CSV rows "frequency_hz,mask_value" for n_fft/2 + 1 bins at sample_rate.
void write_mask_csv(std::ostream& out, const CrossoverSpec& spec, int n_fft,
                    int sample_rate);

} // namespace bwe

#endif
