#include "bwe/wav.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "bwe/errors.hpp"

namespace bwe {

namespace {

uint32_t rd_u32(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | p[1] << 8 | p[2] << 16 |
           static_cast<uint32_t>(p[3]) << 24;
}
uint16_t rd_u16(const uint8_t* p) { return static_cast<uint16_t>(p[0] | p[1] << 8); }

void wr_u32(std::vector<uint8_t>& b, uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
}
void wr_u16(std::vector<uint8_t>& b, uint16_t v) {
    b.push_back(static_cast<uint8_t>(v & 0xff));
    b.push_back(static_cast<uint8_t>(v >> 8));
}
void wr_tag(std::vector<uint8_t>& b, const char* tag) {
    b.insert(b.end(), tag, tag + 4);
}

} // namespace

Waveform read_wav(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open " + path);
    std::vector<uint8_t> buf((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
    if (buf.size() < 44 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
        std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
        throw format_error(path + ": not a RIFF/WAVE file");

    uint16_t audio_format = 0, channels = 0, bits = 0;
    uint32_t sample_rate = 0;
    const uint8_t* data = nullptr;
    std::size_t data_size = 0;
    bool have_fmt = false;

    std::size_t pos = 12;
    while (pos + 8 <= buf.size()) {
        const char* id = reinterpret_cast<const char*>(buf.data() + pos);
        const uint32_t size = rd_u32(buf.data() + pos + 4);
        pos += 8;
        if (pos + size > buf.size())
            throw format_error(path + ": truncated chunk");
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (size < 16) throw format_error(path + ": fmt chunk too small");
            audio_format = rd_u16(buf.data() + pos);
            channels = rd_u16(buf.data() + pos + 2);
            sample_rate = rd_u32(buf.data() + pos + 4);
            bits = rd_u16(buf.data() + pos + 14);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0 && data == nullptr) {
            data = buf.data() + pos;
            data_size = size;
        }
        pos += size + (size & 1); // chunks are word-aligned
    }

    if (!have_fmt) throw format_error(path + ": missing fmt chunk");
    if (data == nullptr) throw format_error(path + ": missing data chunk");
    if (channels != 1)
        throw format_error(path + ": only mono input is supported (got " +
                           std::to_string(channels) + " channels)");
    if (sample_rate == 0) throw format_error(path + ": invalid sample rate");

    Waveform w;
    w.sample_rate = static_cast<int>(sample_rate);
    if (audio_format == 1 && bits == 16) {
        const std::size_t n = data_size / 2;
        w.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            int16_t v;
            std::memcpy(&v, data + 2 * i, 2);
            w.samples[i] = v / 32768.0;
        }
    } else if (audio_format == 1 && bits == 24) {
        const std::size_t n = data_size / 3;
        w.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const uint8_t* p = data + 3 * i;
            int32_t v = p[0] | p[1] << 8 | p[2] << 16;
            if (v & 0x800000) v |= ~0xffffff; // sign extend
            w.samples[i] = v / 8388608.0;
        }
    } else if (audio_format == 3 && bits == 32) {
        const std::size_t n = data_size / 4;
        w.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            float v;
            std::memcpy(&v, data + 4 * i, 4);
            w.samples[i] = v;
        }
    } else {
        throw format_error(path + ": unsupported format (tag " +
                           std::to_string(audio_format) + ", " +
                           std::to_string(bits) + " bit)");
    }
    for (double s : w.samples)
        if (!std::isfinite(s)) throw numeric_error(path + ": non-finite sample");
    return w;
}

void write_wav(const std::string& path, const Waveform& w, WavFormat format) {
    if (w.sample_rate <= 0) throw std::invalid_argument("write_wav: invalid sample rate");

    const bool pcm = format == WavFormat::Pcm16;
    const uint16_t bytes_per = pcm ? 2 : 4;
    const uint32_t data_size = static_cast<uint32_t>(w.samples.size() * bytes_per);

    std::vector<uint8_t> b;
    b.reserve(data_size + 64);
    wr_tag(b, "RIFF");
    wr_u32(b, 0); // patched below
    wr_tag(b, "WAVE");
    wr_tag(b, "fmt ");
    wr_u32(b, 16);
    wr_u16(b, pcm ? 1 : 3);
    wr_u16(b, 1);
    wr_u32(b, static_cast<uint32_t>(w.sample_rate));
    wr_u32(b, static_cast<uint32_t>(w.sample_rate) * bytes_per);
    wr_u16(b, bytes_per);
    wr_u16(b, pcm ? 16 : 32);
    if (!pcm) {
        wr_tag(b, "fact");
        wr_u32(b, 4);
        wr_u32(b, static_cast<uint32_t>(w.samples.size()));
    }
    wr_tag(b, "data");
    wr_u32(b, data_size);

    if (pcm) {
        for (double s : w.samples) {
            // scale by 32768 to mirror the reader; clamp keeps +1.0 in range
            const double scaled = std::clamp(s, -1.0, 1.0) * 32768.0;
            // nearbyint under the default rounding mode = round half to even
            const int16_t v = static_cast<int16_t>(
                std::clamp(std::nearbyint(scaled), -32768.0, 32767.0));
            wr_u16(b, static_cast<uint16_t>(v));
        }
    } else {
        for (double s : w.samples) {
            const float v = static_cast<float>(s);
            const std::size_t off = b.size();
            b.resize(off + 4);
            std::memcpy(b.data() + off, &v, 4);
        }
    }

    const uint32_t riff_size = static_cast<uint32_t>(b.size()) - 8;
    for (int i = 0; i < 4; ++i) b[4 + i] = static_cast<uint8_t>((riff_size >> (8 * i)) & 0xff);

    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(b.data()),
            static_cast<std::streamsize>(b.size()));
    if (!f) throw io_error("write failed for " + path);
}

} // namespace bwe
