#include "bwe/vocoder.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bwe/errors.hpp"
#include "bwe/mel.hpp"
#include "bwe/stft.hpp"

namespace bwe {

namespace {

constexpr float kLayerNormEps = 1e-6f;
constexpr float kLogMagClip = 12.0f;

float gelu(float x) {
    return 0.5f * x * static_cast<float>(1.0 + std::erf(x / std::sqrt(2.0)));
}

// out[t][o] = bias[o] + sum_i x[t][i] * w[o][i].
// Four explicit accumulators fix the summation order independent of thread
// count while letting the compiler vectorize.
void matmul_bias(const Mat& x, const std::vector<float>& w,
                 const std::vector<float>& bias, Mat& out) {
    const int rows = x.rows, in_dim = x.cols, out_dim = out.cols;
    #pragma omp parallel for schedule(static)
    for (int t = 0; t < rows; ++t) {
        const float* xr = &x.v[static_cast<std::size_t>(t) * in_dim];
        float* or_ = &out.v[static_cast<std::size_t>(t) * out_dim];
        for (int o = 0; o < out_dim; ++o) {
            const float* wr = &w[static_cast<std::size_t>(o) * in_dim];
            float a0 = 0.0f, a1 = 0.0f, a2 = 0.0f, a3 = 0.0f;
            int i = 0;
            for (; i + 4 <= in_dim; i += 4) {
                a0 += xr[i] * wr[i];
                a1 += xr[i + 1] * wr[i + 1];
                a2 += xr[i + 2] * wr[i + 2];
                a3 += xr[i + 3] * wr[i + 3];
            }
            for (; i < in_dim; ++i) a0 += xr[i] * wr[i];
            or_[o] = bias[o] + ((a0 + a1) + (a2 + a3));
        }
    }
}

// Per-channel temporal convolution, zero-padded to keep the frame count.
Mat depthwise_conv(const Mat& x, const std::vector<float>& w,
                   const std::vector<float>& bias, int kernel) {
    const int rows = x.rows, dim = x.cols, half = kernel / 2;
    Mat out(rows, dim);
    #pragma omp parallel for schedule(static)
    for (int t = 0; t < rows; ++t) {
        float* or_ = &out.v[static_cast<std::size_t>(t) * dim];
        for (int c = 0; c < dim; ++c) {
            const float* wc = &w[static_cast<std::size_t>(c) * kernel];
            float acc = bias[c];
            for (int k = 0; k < kernel; ++k) {
                const int tt = t + k - half;
                if (tt < 0 || tt >= rows) continue;
                acc += wc[k] * x.at(tt, c);
            }
            or_[c] = acc;
        }
    }
    return out;
}

// Channel LayerNorm per frame with affine gamma/beta.
void layernorm(Mat& x, const std::vector<float>& gamma,
               const std::vector<float>& beta) {
    const int rows = x.rows, dim = x.cols;
    #pragma omp parallel for schedule(static)
    for (int t = 0; t < rows; ++t) {
        float* r = &x.v[static_cast<std::size_t>(t) * dim];
        double mean = 0.0;
        for (int c = 0; c < dim; ++c) mean += r[c];
        mean /= dim;
        double var = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double d = r[c] - mean;
            var += d * d;
        }
        var /= dim;
        const float inv = 1.0f / std::sqrt(static_cast<float>(var) + kLayerNormEps);
        const float m = static_cast<float>(mean);
        for (int c = 0; c < dim; ++c)
            r[c] = (r[c] - m) * inv * gamma[c] + beta[c];
    }
}

void check_block_shapes(const ConvNextBlockWeights& w, const VocoderConfig& cfg) {
    const std::size_t dim = cfg.dim, inter = cfg.intermediate, k = cfg.dw_kernel;
    if (w.dw_weight.size() != dim * k || w.dw_bias.size() != dim ||
        w.norm_gamma.size() != dim || w.norm_beta.size() != dim ||
        w.pw1_weight.size() != inter * dim || w.pw1_bias.size() != inter ||
        w.pw2_weight.size() != dim * inter || w.pw2_bias.size() != dim)
        throw std::invalid_argument("convnext_block: weight shape mismatch");
}

} // namespace

Mat convnext_block(const Mat& x, const ConvNextBlockWeights& w,
                   const VocoderConfig& cfg) {
    if (x.cols != static_cast<int>(cfg.dim))
        throw std::invalid_argument("convnext_block: input channel mismatch");
    check_block_shapes(w, cfg);

    Mat h = depthwise_conv(x, w.dw_weight, w.dw_bias, static_cast<int>(cfg.dw_kernel));
    layernorm(h, w.norm_gamma, w.norm_beta);

    Mat mid(x.rows, static_cast<int>(cfg.intermediate));
    matmul_bias(h, w.pw1_weight, w.pw1_bias, mid);
    for (auto& v : mid.v) v = gelu(v);

    Mat out(x.rows, static_cast<int>(cfg.dim));
    matmul_bias(mid, w.pw2_weight, w.pw2_bias, out);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += x.v[i];
    return out;
}

ComplexSpectrogram forward(const VocoderModel& model, const MelSpectrogram& mel) {
    const VocoderConfig& cfg = model.config;
    if (mel.n_mels != static_cast<int>(cfg.n_mels))
        throw std::invalid_argument("forward: mel channel count mismatch");
    if (mel.n_frames <= 0)
        throw std::invalid_argument("forward: empty mel input");

    const int rows = mel.n_frames;
    const int dim = static_cast<int>(cfg.dim);
    const int n_mels = static_cast<int>(cfg.n_mels);
    const int kernel = static_cast<int>(cfg.dw_kernel);
    const int half = kernel / 2;

    // Embed: 1-D conv n_mels -> dim, kernel dw_kernel, zero same-padding.
    Mat h(rows, dim);
    #pragma omp parallel for schedule(static)
    for (int t = 0; t < rows; ++t) {
        for (int d = 0; d < dim; ++d) {
            float acc = model.embed_bias[d];
            const float* wd =
                &model.embed_weight[static_cast<std::size_t>(d) * n_mels * kernel];
            for (int m = 0; m < n_mels; ++m) {
                for (int k = 0; k < kernel; ++k) {
                    const int tt = t + k - half;
                    if (tt < 0 || tt >= rows) continue;
                    acc += wd[m * kernel + k] *
                           static_cast<float>(mel.at(tt, m));
                }
            }
            h.at(t, d) = acc;
        }
    }

    for (const auto& block : model.blocks) h = convnext_block(h, block, cfg);
    layernorm(h, model.final_norm_gamma, model.final_norm_beta);

    Mat pw(rows, dim);
    matmul_bias(h, model.pointwise_weight, model.pointwise_bias, pw);

    const int n_bins = static_cast<int>(cfg.n_bins());
    Mat head(rows, 2 * n_bins);
    matmul_bias(pw, model.head_weight, model.head_bias, head);

    ComplexSpectrogram spec;
    spec.n_frames = rows;
    spec.n_bins = n_bins;
    spec.n_fft = static_cast<int>(cfg.n_fft);
    spec.hop = static_cast<int>(cfg.hop);
    spec.sample_rate = static_cast<int>(cfg.sample_rate);
    spec.data.resize(static_cast<std::size_t>(rows) * n_bins);
    for (int t = 0; t < rows; ++t) {
        for (int b = 0; b < n_bins; ++b) {
            const float logmag = std::min(head.at(t, b), kLogMagClip);
            const float phase = head.at(t, n_bins + b);
            const double mag = std::exp(static_cast<double>(logmag));
            spec.at(t, b) = {mag * std::cos(phase), mag * std::sin(phase)};
            if (!std::isfinite(spec.at(t, b).real()) ||
                !std::isfinite(spec.at(t, b).imag()))
                throw numeric_error("forward: non-finite spectrogram value");
        }
    }
    return spec;
}

Waveform generate(const VocoderModel& model, const Waveform& y) {
    if (y.sample_rate != static_cast<int>(model.config.sample_rate))
        throw std::invalid_argument("generate: input rate must match model rate");

    MelParams params;
    params.n_mels = static_cast<int>(model.config.n_mels);
    params.n_fft = static_cast<int>(model.config.n_fft);
    params.hop = static_cast<int>(model.config.hop);
    params.f_max = model.config.sample_rate / 2.0;

    const MelSpectrogram mel = mel_spectrogram(y, params);
    const ComplexSpectrogram spec = forward(model, mel);
    Waveform out = istft(spec);
    out.samples.resize(y.samples.size(), 0.0);
    for (auto& s : out.samples) s = std::clamp(s, -4.0, 4.0);
    return out;
}

std::size_t param_count(const VocoderConfig& c) {
    const std::size_t dim = c.dim, inter = c.intermediate, k = c.dw_kernel;
    const std::size_t head_out = 2 * (c.n_fft / 2 + 1);
    const std::size_t embed = dim * c.n_mels * k + dim;
    const std::size_t block = (dim * k + dim) + 2 * dim +
                              (inter * dim + inter) + (dim * inter + dim);
    return embed + c.n_blocks * block + 2 * dim + (dim * dim + dim) +
           (head_out * dim + head_out);
}

std::size_t param_count(const VocoderModel& m) {
    std::size_t n = m.embed_weight.size() + m.embed_bias.size() +
                    m.final_norm_gamma.size() + m.final_norm_beta.size() +
                    m.pointwise_weight.size() + m.pointwise_bias.size() +
                    m.head_weight.size() + m.head_bias.size();
    for (const auto& b : m.blocks)
        n += b.dw_weight.size() + b.dw_bias.size() + b.norm_gamma.size() +
             b.norm_beta.size() + b.pw1_weight.size() + b.pw1_bias.size() +
             b.pw2_weight.size() + b.pw2_bias.size();
    return n;
}

VocoderModel init_random(const VocoderConfig& config, uint64_t seed) {
    std::mt19937 rng(static_cast<uint32_t>(seed ^ (seed >> 32)));
    auto fill = [&rng](std::vector<float>& v, std::size_t n, std::size_t fan_in) {
        const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
        v.resize(n);
        for (auto& x : v) {
            const double u = rng() * (1.0 / 4294967296.0); // [0, 1)
            x = static_cast<float>((2.0 * u - 1.0) * s);
        }
    };

    const std::size_t dim = config.dim, inter = config.intermediate;
    const std::size_t k = config.dw_kernel, n_mels = config.n_mels;
    const std::size_t head_out = 2 * (config.n_fft / 2 + 1);

    VocoderModel m;
    m.config = config;
    fill(m.embed_weight, dim * n_mels * k, n_mels * k);
    fill(m.embed_bias, dim, n_mels * k);
    m.blocks.resize(config.n_blocks);
    for (auto& b : m.blocks) {
        fill(b.dw_weight, dim * k, k);
        fill(b.dw_bias, dim, k);
        b.norm_gamma.assign(dim, 1.0f);
        b.norm_beta.assign(dim, 0.0f);
        fill(b.pw1_weight, inter * dim, dim);
        fill(b.pw1_bias, inter, dim);
        fill(b.pw2_weight, dim * inter, inter);
        fill(b.pw2_bias, dim, inter);
    }
    m.final_norm_gamma.assign(dim, 1.0f);
    m.final_norm_beta.assign(dim, 0.0f);
    fill(m.pointwise_weight, dim * dim, dim);
    fill(m.pointwise_bias, dim, dim);
    fill(m.head_weight, head_out * dim, dim);
    fill(m.head_bias, head_out, dim);
    return m;
}

} // namespace bwe
