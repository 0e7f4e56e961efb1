#include "bwe/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "bwe/fft.hpp"

namespace bwe::ref {

std::vector<std::complex<double>> naive_dft(std::span<const double> signal, int n) {
    if (n <= 0) throw std::invalid_argument("naive_dft: invalid size");
    std::vector<std::complex<double>> bins(static_cast<std::size_t>(n / 2 + 1));
    for (int k = 0; k <= n / 2; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < signal.size() && i < static_cast<std::size_t>(n); ++i) {
            const double ang = -2.0 * M_PI * k * static_cast<double>(i) / n;
            acc += signal[i] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        bins[k] = acc;
    }
    return bins;
}

namespace {

float gelu(float x) {
    return 0.5f * x * static_cast<float>(1.0 + std::erf(x / std::sqrt(2.0)));
}

void layernorm_serial(Mat& x, const std::vector<float>& gamma,
                      const std::vector<float>& beta) {
    for (int t = 0; t < x.rows; ++t) {
        double mean = 0.0;
        for (int c = 0; c < x.cols; ++c) mean += x.at(t, c);
        mean /= x.cols;
        double var = 0.0;
        for (int c = 0; c < x.cols; ++c) {
            const double d = x.at(t, c) - mean;
            var += d * d;
        }
        var /= x.cols;
        const float inv = 1.0f / std::sqrt(static_cast<float>(var) + 1e-6f);
        for (int c = 0; c < x.cols; ++c)
            x.at(t, c) = (x.at(t, c) - static_cast<float>(mean)) * inv * gamma[c] + beta[c];
    }
}

Mat linear_serial(const Mat& x, const std::vector<float>& w,
                  const std::vector<float>& bias, int out_dim) {
    Mat out(x.rows, out_dim);
    for (int t = 0; t < x.rows; ++t)
        for (int o = 0; o < out_dim; ++o) {
            float acc = bias[o];
            for (int i = 0; i < x.cols; ++i)
                acc += x.at(t, i) * w[static_cast<std::size_t>(o) * x.cols + i];
            out.at(t, o) = acc;
        }
    return out;
}

} // namespace

Mat convnext_block(const Mat& x, const ConvNextBlockWeights& w,
                   const VocoderConfig& cfg) {
    const int rows = x.rows, dim = x.cols;
    const int kernel = static_cast<int>(cfg.dw_kernel), half = kernel / 2;

    Mat h(rows, dim);
    for (int t = 0; t < rows; ++t)
        for (int c = 0; c < dim; ++c) {
            float acc = w.dw_bias[c];
            for (int k = 0; k < kernel; ++k) {
                const int tt = t + k - half;
                if (tt >= 0 && tt < rows)
                    acc += w.dw_weight[static_cast<std::size_t>(c) * kernel + k] * x.at(tt, c);
            }
            h.at(t, c) = acc;
        }

    layernorm_serial(h, w.norm_gamma, w.norm_beta);

    Mat mid = linear_serial(h, w.pw1_weight, w.pw1_bias,
                            static_cast<int>(cfg.intermediate));
    for (auto& v : mid.v) v = gelu(v);

    Mat out = linear_serial(mid, w.pw2_weight, w.pw2_bias, dim);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += x.v[i];
    return out;
}

ComplexSpectrogram forward(const VocoderModel& model, const MelSpectrogram& mel) {
    const VocoderConfig& cfg = model.config;
    const int rows = mel.n_frames;
    const int dim = static_cast<int>(cfg.dim);
    const int n_mels = static_cast<int>(cfg.n_mels);
    const int kernel = static_cast<int>(cfg.dw_kernel), half = kernel / 2;

    Mat h(rows, dim);
    for (int t = 0; t < rows; ++t)
        for (int d = 0; d < dim; ++d) {
            float acc = model.embed_bias[d];
            for (int m = 0; m < n_mels; ++m)
                for (int k = 0; k < kernel; ++k) {
                    const int tt = t + k - half;
                    if (tt >= 0 && tt < rows)
                        acc += model.embed_weight[(static_cast<std::size_t>(d) * n_mels + m) * kernel + k] *
                               static_cast<float>(mel.at(tt, m));
                }
            h.at(t, d) = acc;
        }

    for (const auto& block : model.blocks) h = ref::convnext_block(h, block, cfg);
    layernorm_serial(h, model.final_norm_gamma, model.final_norm_beta);

    Mat pw = linear_serial(h, model.pointwise_weight, model.pointwise_bias, dim);
    const int n_bins = static_cast<int>(cfg.n_bins());
    Mat head = linear_serial(pw, model.head_weight, model.head_bias, 2 * n_bins);

    ComplexSpectrogram spec;
    spec.n_frames = rows;
    spec.n_bins = n_bins;
    spec.n_fft = static_cast<int>(cfg.n_fft);
    spec.hop = static_cast<int>(cfg.hop);
    spec.sample_rate = static_cast<int>(cfg.sample_rate);
    spec.data.resize(static_cast<std::size_t>(rows) * n_bins);
    for (int t = 0; t < rows; ++t)
        for (int b = 0; b < n_bins; ++b) {
            const float logmag = std::min(head.at(t, b), 12.0f);
            const float phase = head.at(t, n_bins + b);
            const double mag = std::exp(static_cast<double>(logmag));
            spec.at(t, b) = {mag * std::cos(phase), mag * std::sin(phase)};
        }
    return spec;
}

double band_power(const Waveform& w, double f_lo, double f_hi, int n_fft, int hop) {
    const auto window = hann_window(n_fft);
    const std::size_t len = w.samples.size();
    if (len < static_cast<std::size_t>(n_fft))
        throw std::invalid_argument("band_power: signal shorter than n_fft");

    double total = 0.0;
    std::size_t count = 0;
    int frames = 0;
    std::vector<double> frame(static_cast<std::size_t>(n_fft));
    for (std::size_t start = 0; start + n_fft <= len; start += hop) {
        for (int i = 0; i < n_fft; ++i) frame[i] = w.samples[start + i] * window[i];
        const RealSpectrum spec = rfft(frame, n_fft, w.sample_rate);
        for (std::size_t k = 0; k < spec.bins.size(); ++k) {
            const double f = spec.bin_freq(k);
            if (f >= f_lo && f < f_hi) {
                total += std::norm(spec.bins[k]);
                ++count;
            }
        }
        ++frames;
    }
    if (count == 0) throw std::invalid_argument("band_power: empty band");
    return total / static_cast<double>(count);
}

} // namespace bwe::ref
