#include <zlib.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "bwe/errors.hpp"
#include "bwe/vocoder.hpp"

// Weight file format "BWEF", version 1, little-endian throughout:
//   magic "BWEF" (4 bytes)
//   version  u32
//   config   8 x u32: n_mels, dim, intermediate, n_blocks, n_fft, hop,
//            sample_rate, dw_kernel
//   tensors, in the canonical order below: name length u16, UTF-8 name,
//            rank u8, dims u32 each, raw f32 values row-major
//   crc32    u32 over all preceding bytes
//
// Canonical tensor order:
//   embed.weight [dim, n_mels, dw_kernel], embed.bias [dim]
//   for each block i in 0..n_blocks-1:
//     blocks.i.dwconv.weight [dim, dw_kernel], blocks.i.dwconv.bias [dim]
//     blocks.i.norm.gamma [dim], blocks.i.norm.beta [dim]
//     blocks.i.pw1.weight [intermediate, dim], blocks.i.pw1.bias [intermediate]
//     blocks.i.pw2.weight [dim, intermediate], blocks.i.pw2.bias [dim]
//   final_norm.gamma [dim], final_norm.beta [dim]
//   pointwise.weight [dim, dim], pointwise.bias [dim]
//   head.weight [2*(n_fft/2+1), dim], head.bias [2*(n_fft/2+1)]

namespace bwe {

namespace {

constexpr char kMagic[4] = {'B', 'W', 'E', 'F'};
constexpr uint32_t kVersion = 1;

struct TensorRef {
    std::string name;
    std::vector<uint32_t> dims;
    std::vector<float>* data;
};

std::vector<TensorRef> tensor_table(VocoderModel& m) {
    const uint32_t dim = m.config.dim, inter = m.config.intermediate;
    const uint32_t k = m.config.dw_kernel, n_mels = m.config.n_mels;
    const uint32_t head_out = 2 * m.config.n_bins();

    std::vector<TensorRef> t;
    t.push_back({"embed.weight", {dim, n_mels, k}, &m.embed_weight});
    t.push_back({"embed.bias", {dim}, &m.embed_bias});
    for (uint32_t i = 0; i < m.config.n_blocks; ++i) {
        auto& b = m.blocks[i];
        const std::string p = "blocks." + std::to_string(i) + ".";
        t.push_back({p + "dwconv.weight", {dim, k}, &b.dw_weight});
        t.push_back({p + "dwconv.bias", {dim}, &b.dw_bias});
        t.push_back({p + "norm.gamma", {dim}, &b.norm_gamma});
        t.push_back({p + "norm.beta", {dim}, &b.norm_beta});
        t.push_back({p + "pw1.weight", {inter, dim}, &b.pw1_weight});
        t.push_back({p + "pw1.bias", {inter}, &b.pw1_bias});
        t.push_back({p + "pw2.weight", {dim, inter}, &b.pw2_weight});
        t.push_back({p + "pw2.bias", {dim}, &b.pw2_bias});
    }
    t.push_back({"final_norm.gamma", {dim}, &m.final_norm_gamma});
    t.push_back({"final_norm.beta", {dim}, &m.final_norm_beta});
    t.push_back({"pointwise.weight", {dim, dim}, &m.pointwise_weight});
    t.push_back({"pointwise.bias", {dim}, &m.pointwise_bias});
    t.push_back({"head.weight", {head_out, dim}, &m.head_weight});
    t.push_back({"head.bias", {head_out}, &m.head_bias});
    return t;
}

void put_u16(std::vector<uint8_t>& buf, uint16_t v) {
    buf.push_back(static_cast<uint8_t>(v & 0xff));
    buf.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& buf, uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
}

struct Reader {
    const uint8_t* p;
    std::size_t n;
    std::size_t pos = 0;

    void need(std::size_t k) const {
        if (pos + k > n) throw format_error("weight file truncated");
    }
    uint8_t u8() { need(1); return p[pos++]; }
    uint16_t u16() {
        need(2);
        uint16_t v = static_cast<uint16_t>(p[pos] | (p[pos + 1] << 8));
        pos += 2;
        return v;
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(p[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    std::string str(std::size_t k) {
        need(k);
        std::string s(reinterpret_cast<const char*>(p + pos), k);
        pos += k;
        return s;
    }
    void f32s(float* dst, std::size_t count) {
        need(count * 4);
        std::memcpy(dst, p + pos, count * 4);
        pos += count * 4;
    }
};

} // namespace

void save_weights(const VocoderModel& model, const std::string& path) {
    auto& m = const_cast<VocoderModel&>(model); // table holds non-const pointers
    std::vector<uint8_t> buf;
    buf.insert(buf.end(), kMagic, kMagic + 4);
    put_u32(buf, kVersion);
    const VocoderConfig& c = m.config;
    for (uint32_t v : {c.n_mels, c.dim, c.intermediate, c.n_blocks, c.n_fft,
                       c.hop, c.sample_rate, c.dw_kernel})
        put_u32(buf, v);

    for (const auto& t : tensor_table(m)) {
        put_u16(buf, static_cast<uint16_t>(t.name.size()));
        buf.insert(buf.end(), t.name.begin(), t.name.end());
        buf.push_back(static_cast<uint8_t>(t.dims.size()));
        std::size_t count = 1;
        for (uint32_t d : t.dims) {
            put_u32(buf, d);
            count *= d;
        }
        if (t.data->size() != count)
            throw format_error("save_weights: tensor " + t.name + " has wrong size");
        const std::size_t off = buf.size();
        buf.resize(off + count * 4);
        std::memcpy(buf.data() + off, t.data->data(), count * 4);
    }

    const uint32_t crc = static_cast<uint32_t>(
        crc32(0L, buf.data(), static_cast<uInt>(buf.size())));
    put_u32(buf, crc);

    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("save_weights: cannot open " + path);
    f.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
    if (!f) throw io_error("save_weights: write failed for " + path);
}

VocoderModel load_weights(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("load_weights: cannot open " + path);
    std::vector<uint8_t> buf((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
    if (buf.size() < 4 + 4 + 32 + 4) throw format_error("weight file truncated");

    const uint32_t stored_crc =
        static_cast<uint32_t>(buf[buf.size() - 4]) |
        static_cast<uint32_t>(buf[buf.size() - 3]) << 8 |
        static_cast<uint32_t>(buf[buf.size() - 2]) << 16 |
        static_cast<uint32_t>(buf[buf.size() - 1]) << 24;
    const uint32_t actual_crc = static_cast<uint32_t>(
        crc32(0L, buf.data(), static_cast<uInt>(buf.size() - 4)));
    if (stored_crc != actual_crc) throw format_error("weight file CRC mismatch");

    Reader r{buf.data(), buf.size() - 4};
    if (r.str(4) != std::string(kMagic, 4))
        throw format_error("weight file magic mismatch (expected BWEF)");
    const uint32_t version = r.u32();
    if (version != kVersion)
        throw format_error("unsupported weight format version " + std::to_string(version));

    VocoderModel m;
    m.config.n_mels = r.u32();
    m.config.dim = r.u32();
    m.config.intermediate = r.u32();
    m.config.n_blocks = r.u32();
    m.config.n_fft = r.u32();
    m.config.hop = r.u32();
    m.config.sample_rate = r.u32();
    m.config.dw_kernel = r.u32();
    if (m.config.n_blocks == 0 || m.config.n_blocks > 1024 ||
        m.config.dim == 0 || m.config.n_fft == 0 || m.config.hop == 0 ||
        m.config.dw_kernel % 2 == 0)
        throw format_error("weight file declares invalid config");

    m.blocks.resize(m.config.n_blocks);
    for (const auto& t : tensor_table(m)) {
        const uint16_t name_len = r.u16();
        const std::string name = r.str(name_len);
        if (name != t.name)
            throw format_error("unexpected tensor '" + name + "' (expected '" +
                               t.name + "')");
        const uint8_t rank = r.u8();
        if (rank != t.dims.size())
            throw format_error("tensor " + t.name + ": rank mismatch");
        std::size_t count = 1;
        for (std::size_t i = 0; i < t.dims.size(); ++i) {
            const uint32_t d = r.u32();
            if (d != t.dims[i])
                throw format_error("tensor " + t.name +
                                   ": shape mismatch vs declared config");
            count *= d;
        }
        t.data->resize(count);
        r.f32s(t.data->data(), count);
        for (float v : *t.data)
            if (!std::isfinite(v))
                throw format_error("tensor " + t.name + ": non-finite value");
    }
    if (r.pos != r.n) throw format_error("weight file has trailing bytes");
    if (param_count(m) != param_count(m.config))
        throw format_error("parameter count inconsistent with config");
    return m;
}

} // namespace bwe
