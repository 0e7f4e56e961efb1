#include "bwe/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace bwe {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n))
        throw std::invalid_argument("fft: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const std::complex<double> step(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= step;
            }
        }
    }

    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

RealSpectrum rfft(std::span<const double> signal, int transform_size, int sample_rate) {
    if (transform_size <= 0 || !is_power_of_two(static_cast<std::size_t>(transform_size)))
        throw std::invalid_argument("rfft: transform size must be a positive power of two");
    if (signal.size() > static_cast<std::size_t>(transform_size))
        throw std::invalid_argument("rfft: signal longer than transform size");

    std::vector<std::complex<double>> buf(static_cast<std::size_t>(transform_size));
    for (std::size_t i = 0; i < signal.size(); ++i) buf[i] = signal[i];
    fft(buf, false);

    RealSpectrum spec;
    spec.transform_size = transform_size;
    spec.sample_rate = sample_rate;
    spec.bins.assign(buf.begin(), buf.begin() + transform_size / 2 + 1);
    spec.bins.front().imag(0.0);
    spec.bins.back().imag(0.0);
    return spec;
}

std::vector<double> irfft(const RealSpectrum& spec) {
    const int n = spec.transform_size;
    if (n <= 0 || !is_power_of_two(static_cast<std::size_t>(n)))
        throw std::invalid_argument("irfft: transform size must be a positive power of two");
    if (spec.bins.size() != static_cast<std::size_t>(n / 2 + 1))
        throw std::invalid_argument("irfft: bin count does not match transform size");

    std::vector<std::complex<double>> buf(static_cast<std::size_t>(n));
    for (int k = 0; k <= n / 2; ++k) buf[k] = spec.bins[k];
    for (int k = 1; k < n / 2; ++k) buf[n - k] = std::conj(spec.bins[k]);
    fft(buf, true);

    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[i] = buf[i].real();
    return out;
}

std::vector<double> hann_window(int size) {
    std::vector<double> w(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / size);
    return w;
}

} // namespace bwe
