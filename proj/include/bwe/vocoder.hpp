#ifndef BWE_VOCODER_HPP
#define BWE_VOCODER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bwe/types.hpp"

namespace bwe {

struct VocoderConfig {
    uint32_t n_mels = 80;
    uint32_t dim = 512;
    uint32_t intermediate = 1536;
    uint32_t n_blocks = 8;
    uint32_t n_fft = 2048;
    uint32_t hop = 512;
    uint32_t sample_rate = 48000;
    uint32_t dw_kernel = 7;

    uint32_t n_bins() const { return n_fft / 2 + 1; }
};

struct ConvNextBlockWeights {
    std::vector<float> dw_weight;   // dim x dw_kernel
    std::vector<float> dw_bias;     // dim
    std::vector<float> norm_gamma;  // dim
    std::vector<float> norm_beta;   // dim
    std::vector<float> pw1_weight;  // intermediate x dim
    std::vector<float> pw1_bias;    // intermediate
    std::vector<float> pw2_weight;  // dim x intermediate
    std::vector<float> pw2_bias;    // dim
};

struct VocoderModel {
    VocoderConfig config;
    std::vector<float> embed_weight;     // dim x n_mels x dw_kernel
    std::vector<float> embed_bias;       // dim
    std::vector<ConvNextBlockWeights> blocks;
    std::vector<float> final_norm_gamma; // dim
    std::vector<float> final_norm_beta;  // dim
    std::vector<float> pointwise_weight; // dim x dim
    std::vector<float> pointwise_bias;   // dim
    std::vector<float> head_weight;      // 2*(n_fft/2+1) x dim
    std::vector<float> head_bias;        // 2*(n_fft/2+1)
};

// Row-major frames x channels activation buffer, float32 throughout.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<float> v;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0f) {}
    float& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
    float at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
};

// x + pw2(GELU(pw1(layernorm(dwconv(x))))), same temporal length (zero-padded
// depthwise conv). GELU is the exact erf form.
Mat convnext_block(const Mat& x, const ConvNextBlockWeights& w,
                   const VocoderConfig& cfg);

// mel -> embed conv -> blocks -> final norm -> pointwise -> head.
// Head emits n_bins log-magnitudes (clipped at 12) and n_bins phases.
ComplexSpectrogram forward(const VocoderModel& model, const MelSpectrogram& mel);

// mel_spectrogram -> forward -> istft, trimmed/padded to len(y) and hard
// clipped to [-4, 4].
Waveform generate(const VocoderModel& model, const Waveform& y);

// Deterministic per seed: uniform(-s, s) with s = 1/sqrt(fan_in) per tensor,
// gamma = 1, beta = 0.
VocoderModel init_random(const VocoderConfig& config, uint64_t seed);

std::size_t param_count(const VocoderConfig& config);
std::size_t param_count(const VocoderModel& model);

// Binary weight format "BWEF": see weights.cpp for the canonical tensor order.
void save_weights(const VocoderModel& model, const std::string& path);
VocoderModel load_weights(const std::string& path);

} // namespace bwe

#endif
