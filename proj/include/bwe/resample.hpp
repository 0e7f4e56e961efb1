#ifndef BWE_RESAMPLE_HPP
#define BWE_RESAMPLE_HPP

#include <optional>

#include "bwe/types.hpp"

namespace bwe {

enum class ResampleKind { Sinc, ZeroOrderHold, Linear };

struct ResampleMethod {
    ResampleKind kind = ResampleKind::Sinc;
    int taps = 255;          // Sinc only; odd, symmetric kernel
    double kaiser_beta = 8.0; // Sinc only

    static ResampleMethod sinc(int taps = 255, double beta = 8.0) {
        return {ResampleKind::Sinc, taps, beta};
    }
    static ResampleMethod zoh() { return {ResampleKind::ZeroOrderHold, 0, 0.0}; }
    static ResampleMethod linear() { return {ResampleKind::Linear, 0, 0.0}; }
};

struct DegradeSpec {
    int target_rate = 16000;               // Hz, in [8000, 48000]
    ResampleMethod method = ResampleMethod::sinc();
    std::optional<int> quant_bits;          // in [4, 16]; absent = no quantization
};

// Rational-ratio sample rate conversion. Sinc uses a Kaiser-windowed kernel
// with the transition band placed entirely below min(source, target)/2, so
// the stopband starts at the lower Nyquist. ZOH and Linear apply no
// anti-alias filter. Output length is round(len * target / source).
Waveform resample(const Waveform& w, int target_rate, const ResampleMethod& method);

// Down to spec.target_rate with spec.method, optional quantization at the low
// rate, then sinc back to 48 kHz; trimmed/padded to the input length.
Waveform degrade(const Waveform& w, const DegradeSpec& spec);

// Uniform mid-rise quantization, 2^bits levels over [-1, 1], input clipped
// first. Max abs error is 1/2^bits.
Waveform quantize(const Waveform& w, int bits);

} // namespace bwe

#endif
