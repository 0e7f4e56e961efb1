#include <doctest.h>

#include <cmath>

#include "bwe/mel.hpp"
#include "bwe/stft.hpp"
#include "test_util.hpp"

using namespace bwe;

TEST_CASE("filterbank shape for the conditioning config") {
    const auto fb = mel_filterbank(80, 2048, 48000, 0.0, 24000.0);
    CHECK(fb.size() == 80u * 1025u);
}

TEST_CASE("every filter row sums to a positive value") {
    const auto fb = mel_filterbank(80, 2048, 48000, 0.0, 24000.0);
    for (int m = 0; m < 80; ++m) {
        double sum = 0.0;
        for (int k = 0; k < 1025; ++k) {
            const double w = fb[static_cast<std::size_t>(m) * 1025 + k];
            CHECK(w >= 0.0);
            sum += w;
        }
        CHECK(sum > 0.0);
    }
}

TEST_CASE("filter centers are strictly increasing") {
    double prev = -1.0;
    for (int m = 0; m < 82; ++m) {
        const double mel = hz_to_mel(0.0) + (hz_to_mel(24000.0) - hz_to_mel(0.0)) * m / 81.0;
        const double hz = mel_to_hz(mel);
        CHECK(hz > prev);
        prev = hz;
    }
}

TEST_CASE("every bin between the first and last center is covered") {
    const int n_fft = 2048, sr = 48000, n_mels = 80;
    const auto fb = mel_filterbank(n_mels, n_fft, sr, 0.0, 24000.0);
    const double mel_hi = hz_to_mel(24000.0);
    const double first_center = mel_to_hz(mel_hi / (n_mels + 1));
    const double last_center = mel_to_hz(mel_hi * n_mels / (n_mels + 1));
    for (int k = 0; k < n_fft / 2 + 1; ++k) {
        const double f = static_cast<double>(k) * sr / n_fft;
        if (f <= first_center || f >= last_center) continue;
        double total = 0.0;
        for (int m = 0; m < n_mels; ++m)
            total += fb[static_cast<std::size_t>(m) * 1025 + k];
        CHECK(total > 0.0);
    }
}

TEST_CASE("filterbank rejects invalid ranges and over-dense banks") {
    CHECK_THROWS_AS(mel_filterbank(80, 2048, 48000, 24000.0, 24000.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(mel_filterbank(80, 2048, 48000, 0.0, 30000.0),
                    std::invalid_argument);
    // 512 mels over a 64-point FFT: most filters fall between bins
    CHECK_THROWS_AS(mel_filterbank(512, 64, 48000, 0.0, 24000.0),
                    std::invalid_argument);
}

TEST_CASE("mel of silence sits at the log floor") {
    Waveform w;
    w.sample_rate = 48000;
    w.samples.assign(8192, 0.0);
    const auto mel = mel_spectrogram(w);
    for (double v : mel.data) CHECK(v == doctest::Approx(std::log(1e-10)));
}

TEST_CASE("louder signal gives elementwise >= mel values") {
    auto w = test::noise(8192, 48000, 41);
    auto loud = w;
    for (auto& s : loud.samples) s *= 10.0;
    const auto a = mel_spectrogram(w);
    const auto b = mel_spectrogram(loud);
    for (std::size_t i = 0; i < a.data.size(); ++i) CHECK(b.data[i] >= a.data[i]);
}

TEST_CASE("mel frame count matches stft frame count") {
    const auto w = test::noise(48000, 48000, 43);
    const auto mel = mel_spectrogram(w);
    const auto spec = stft(w, 2048, 512);
    CHECK(mel.n_frames == spec.n_frames);
    CHECK(mel.n_frames == 48000 / 512 + 1);
    CHECK(mel.n_mels == 80);
}
