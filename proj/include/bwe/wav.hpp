#ifndef BWE_WAV_HPP
#define BWE_WAV_HPP

#include <string>

#include "bwe/types.hpp"

namespace bwe {

enum class WavFormat { Float32, Pcm16 };

// Reads mono RIFF/WAVE: PCM 16-bit, PCM 24-bit, or IEEE float 32-bit.
// Multi-channel files are rejected. Throws io_error / format_error.
Waveform read_wav(const std::string& path);

// Float32 by default; Pcm16 converts with round-half-even and clipping.
void write_wav(const std::string& path, const Waveform& w,
               WavFormat format = WavFormat::Float32);

} // namespace bwe

#endif
