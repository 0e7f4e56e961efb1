#include "bwe/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "bwe/bench.hpp"
#include "bwe/errors.hpp"
#include "bwe/metrics.hpp"
#include "bwe/refiner.hpp"
#include "bwe/resample.hpp"
#include "bwe/vocoder.hpp"
#include "bwe/wav.hpp"

namespace bwe::cli {

namespace {

using nlohmann::json;

int default_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n > 0 ? static_cast<int>(n) : 1;
}

Waveform load_checked(const std::string& path) {
    Waveform w = read_wav(path);
    if (w.samples.empty()) throw format_error(path + ": no samples");
    if (w.sample_rate < 8000 || w.sample_rate > 48000)
        throw format_error(path + ": sample rate " + std::to_string(w.sample_rate) +
                           " outside supported range [8000, 48000]");
    return w;
}

ResampleMethod parse_method(const std::string& s) {
    if (s == "sinc") return ResampleMethod::sinc();
    if (s == "zoh") return ResampleMethod::zoh();
    if (s == "linear") return ResampleMethod::linear();
    throw std::invalid_argument("unknown resample method: " + s);
}

struct CommonOpts {
    int threads = default_threads();
    uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--threads", c.threads, "OpenMP thread count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "RNG seed");
}

struct CrossoverOpts {
    std::optional<double> f_start, f_end;
    std::string variant;
};

void add_crossover(CLI::App* cmd, CrossoverOpts& x) {
    cmd->add_option("--f-start", x.f_start, "crossover transition start (Hz)");
    cmd->add_option("--f-end", x.f_end, "crossover transition end (Hz)");
    cmd->add_option("--variant", x.variant,
                    "crossover variant: smoothstep-lr | brickwall | butterworth4");
}

CrossoverSpec resolve_crossover(int input_rate, const CrossoverOpts& x) {
    CrossoverSpec spec = default_crossover(input_rate);
    if (x.f_start) spec.f_start = *x.f_start;
    if (x.f_end) spec.f_end = *x.f_end;
    if (!x.variant.empty()) spec.variant = crossover_variant_from_string(x.variant);
    return spec;
}

VocoderModel get_model(const std::string& weights_path, uint64_t seed,
                       std::ostream& err) {
    if (!weights_path.empty()) return load_weights(weights_path);
    err << "WARNING: no --weights given; using UNTRAINED random weights (seed "
        << seed << "). Output will not be meaningful audio.\n";
    return init_random(VocoderConfig{}, seed);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"bwe: bandwidth extension toolkit"};
    app.require_subcommand(1);

    // enhance
    auto* enhance = app.add_subcommand("enhance", "resample + generate + refine");
    std::string in_path, out_path, weights_path;
    bool pcm16 = false;
    std::optional<int> rate_override;
    CommonOpts ec;
    CrossoverOpts ex;
    enhance->add_option("input", in_path, "input WAV")->required();
    enhance->add_option("output", out_path, "output WAV (48 kHz)")->required();
    enhance->add_option("--weights", weights_path, "BWEF weight file");
    enhance->add_option("--input-rate", rate_override,
                        "override the bandwidth assumed for crossover placement (Hz)");
    enhance->add_flag("--pcm16", pcm16, "write 16-bit PCM instead of float32");
    add_crossover(enhance, ex);
    add_common(enhance, ec);

    // degrade
    auto* degrade_cmd = app.add_subcommand("degrade", "band-limit a 48 kHz file");
    std::string d_in, d_out, d_rate = "16000", d_method = "sinc";
    std::optional<int> d_bits;
    bool d_pcm16 = false;
    CommonOpts dc;
    degrade_cmd->add_option("input", d_in, "input WAV (48 kHz)")->required();
    degrade_cmd->add_option("output", d_out, "output WAV (48 kHz)")->required();
    degrade_cmd->add_option("--rate", d_rate, "target rate in Hz, or 'random' for {8000,12000,16000}");
    degrade_cmd->add_option("--method", d_method, "sinc | zoh | linear");
    degrade_cmd->add_option("--quant-bits", d_bits, "quantization depth [4,16]")
        ->check(CLI::Range(4, 16));
    degrade_cmd->add_flag("--pcm16", d_pcm16, "write 16-bit PCM");
    add_common(degrade_cmd, dc);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "spectral metrics between two files");
    std::string e_ref, e_est;
    std::optional<int> e_rate;
    CommonOpts evc;
    eval_cmd->add_option("reference", e_ref, "reference WAV")->required();
    eval_cmd->add_option("estimate", e_est, "estimate WAV")->required();
    eval_cmd->add_option("--input-rate", e_rate,
                         "original bandwidth of the estimate, for the report (Hz)");
    add_common(eval_cmd, evc);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "RTF benchmark on synthetic input");
    BenchOptions bo;
    std::string b_weights;
    CommonOpts bc;
    bench_cmd->add_option("--duration", bo.duration, "input duration in seconds")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--batch", bo.batch, "items per timed batch")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--warmup", bo.warmup, "warmup batches")
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--iters", bo.iters, "timed batches (median reported)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--weights", b_weights, "BWEF weight file");
    add_common(bench_cmd, bc);

    // mask
    auto* mask_cmd = app.add_subcommand("mask", "dump crossover mask as CSV");
    std::optional<int> m_rate;
    int m_nfft = 2048, m_sr = 48000;
    CrossoverOpts mx;
    mask_cmd->add_option("--rate", m_rate, "input rate; uses the default crossover placement");
    mask_cmd->add_option("--n-fft", m_nfft, "transform size for bin frequencies");
    mask_cmd->add_option("--sample-rate", m_sr, "working sample rate (Hz)");
    add_crossover(mask_cmd, mx);

    std::vector<std::string> argv_vec;
    argv_vec.push_back("bwe");
    argv_vec.insert(argv_vec.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_vec) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    if (enhance->parsed()) {
        omp_set_num_threads(ec.threads);
        const Waveform input = load_checked(in_path);
        const int input_rate = rate_override.value_or(input.sample_rate);
        const CrossoverSpec spec = resolve_crossover(input_rate, ex);
        validate_crossover(spec, 24000.0);
        const VocoderModel model = get_model(weights_path, ec.seed, err);

        const Waveform y = input.sample_rate == 48000
                               ? input
                               : resample(input, 48000, ResampleMethod::sinc());
        const auto t0 = std::chrono::steady_clock::now();
        const Waveform gen = generate(model, y);
        const Waveform refined = refine(y, gen, spec);
        const auto t1 = std::chrono::steady_clock::now();
        const double secs = std::chrono::duration<double>(t1 - t0).count();

        write_wav(out_path, refined, pcm16 ? WavFormat::Pcm16 : WavFormat::Float32);
        err << "crossover: f_start=" << spec.f_start << " Hz, f_end=" << spec.f_end
            << " Hz, variant=" << to_string(spec.variant) << "\n";
        err << "generate+refine: " << secs << " s for " << y.duration()
            << " s of audio (RTF " << secs / y.duration() << ")\n";
        return 0;
    }

    if (degrade_cmd->parsed()) {
        omp_set_num_threads(dc.threads);
        const Waveform input = load_checked(d_in);
        DegradeSpec spec;
        if (d_rate == "random") {
            std::mt19937 rng(static_cast<uint32_t>(dc.seed));
            const int choices[3] = {8000, 12000, 16000};
            spec.target_rate = choices[rng() % 3];
            err << "degrade: drew rate " << spec.target_rate << " Hz (seed "
                << dc.seed << ")\n";
        } else {
            spec.target_rate = std::stoi(d_rate);
        }
        spec.method = parse_method(d_method);
        spec.quant_bits = d_bits;
        const Waveform out_w = degrade(input, spec);
        write_wav(d_out, out_w, d_pcm16 ? WavFormat::Pcm16 : WavFormat::Float32);
        return 0;
    }

    if (eval_cmd->parsed()) {
        omp_set_num_threads(evc.threads);
        Waveform ref_w = load_checked(e_ref);
        Waveform est_w = load_checked(e_est);
        if (est_w.sample_rate != ref_w.sample_rate)
            est_w = resample(est_w, ref_w.sample_rate, ResampleMethod::sinc());
        if (ref_w.sample_rate != 48000)
            throw std::invalid_argument("eval: expects 48 kHz signals");

        const std::size_t n = std::min(ref_w.samples.size(), est_w.samples.size());
        const std::size_t mismatch =
            std::max(ref_w.samples.size(), est_w.samples.size()) - n;
        if (mismatch > 0 && static_cast<double>(mismatch) > 0.001 * n)
            err << "WARNING: length mismatch of " << mismatch
                << " samples; trimming both to " << n << "\n";
        ref_w.samples.resize(n);
        est_w.samples.resize(n);

        const int input_rate = e_rate.value_or(est_w.sample_rate);
        const CrossoverSpec spec = default_crossover(input_rate);
        json j;
        j["file"] = e_est;
        j["lsd"] = lsd(ref_w, est_w);
        j["mrstft"] = mrstft_distance(ref_w, est_w);
        j["mel_l1"] = mel_l1(ref_w, est_w);
        j["input_rate"] = input_rate;
        j["crossover"] = {{"f_start", spec.f_start},
                          {"f_end", spec.f_end},
                          {"variant", to_string(spec.variant)}};
        out << j.dump() << "\n";
        return 0;
    }

    if (bench_cmd->parsed()) {
        bo.seed = bc.seed;
        bo.threads = bc.threads;
        const VocoderModel model = get_model(b_weights, bc.seed, err);
        const BenchReport rep = run_bench(model, bo);
        json j;
        j["duration_s"] = rep.duration;
        j["batch"] = rep.batch;
        j["warmup"] = rep.warmup;
        j["iters"] = rep.iters;
        j["threads"] = rep.threads;
        j["latency_s"] = rep.latency_s;
        j["rtf"] = rep.rtf;
        j["speed_x"] = rep.speed_x;
        out << j.dump() << "\n";
        return 0;
    }

    if (mask_cmd->parsed()) {
        CrossoverSpec spec;
        if (m_rate) {
            spec = resolve_crossover(*m_rate, mx);
        } else {
            if (!mx.f_start || !mx.f_end)
                throw std::invalid_argument(
                    "mask: need --rate or both --f-start and --f-end");
            spec.f_start = *mx.f_start;
            spec.f_end = *mx.f_end;
            if (!mx.variant.empty())
                spec.variant = crossover_variant_from_string(mx.variant);
        }
        write_mask_csv(out, spec, m_nfft, m_sr);
        return 0;
    }

    err << "no command given\n";
    return 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const numeric_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace bwe::cli
