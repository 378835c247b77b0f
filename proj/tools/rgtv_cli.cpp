// rgtv: blind deblurring with a reweighted graph-TV skeleton prior.
//
// Exit codes: 0 success, 1 usage / invalid input, 2 I/O error, 3 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "rgtv/config.hpp"
#include "rgtv/conv.hpp"
#include "rgtv/errors.hpp"
#include "rgtv/graph.hpp"
#include "rgtv/io.hpp"
#include "rgtv/kernel_solver.hpp"
#include "rgtv/metrics.hpp"
#include "rgtv/pipeline.hpp"
#include "rgtv/synth.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kSolver = 3 };

rgtv::Kernel resolve_kernel(const std::string& arg) {
    const std::string prefix = "builtin:";
    if (arg.rfind(prefix, 0) == 0) return rgtv::parse_builtin_kernel(arg.substr(prefix.size()));
    return rgtv::load_kernel(arg);
}

template <typename T, std::size_t N>
std::array<T, N> parse_list(const std::string& s, const char* what) {
    std::array<T, N> out{};
    std::size_t pos = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const std::size_t comma = s.find(',', pos);
        const bool last = i + 1 == N;
        if (last != (comma == std::string::npos)) throw rgtv::InvalidInput(std::string("malformed ") + what + ": " + s);
        const std::string item = s.substr(pos, last ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            if constexpr (std::is_integral_v<T>) out[i] = static_cast<T>(std::stoi(item, &used));
            else out[i] = static_cast<T>(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw rgtv::InvalidInput(std::string("malformed ") + what + ": " + s);
        }
        pos = comma + 1;
    }
    return out;
}

struct BlurArgs {
    std::string input, kernel, output;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

int run_blur(const BlurArgs& a) {
    const rgtv::LoadedImage img = rgtv::load_image(a.input);
    rgtv::SynthSpec spec{resolve_kernel(a.kernel), a.noise_sigma, a.seed};
    if (img.color) {
        rgtv::ColorImage out;
        rgtv::ImageBuf* planes_out[] = {&out.r, &out.g, &out.b};
        const rgtv::ImageBuf* planes_in[] = {&img.color->r, &img.color->g, &img.color->b};
        for (int c = 0; c < 3; ++c) {
            spec.seed = a.seed + static_cast<std::uint64_t>(c);
            *planes_out[c] = rgtv::synth_blur(*planes_in[c], spec);
        }
        rgtv::save_color_image(a.output, out);
    } else {
        rgtv::save_image(a.output, rgtv::synth_blur(img.gray, spec));
    }
    return kOk;
}

struct DeblurArgs {
    std::string input, output, kernel_out, config, trace, kernel_pgm;
    int kernel_size = 0;
    bool verbose = false;
};

int run_deblur(const DeblurArgs& a) {
    rgtv::SolverParams params;
    if (!a.config.empty()) params = rgtv::load_config(a.config);
    params.kernel_size = a.kernel_size;

    const rgtv::LoadedImage img = rgtv::load_image(a.input);
    const rgtv::DeblurResult res = rgtv::deblur_blind(img.gray, params);

    if (a.verbose) {
        for (const rgtv::LevelDiagnostics& lvl : res.levels) {
            std::fprintf(stderr, "level %dx%d h=%d outer=%zu converged=%d mid-band blurry=%.4f skeleton=%.4f\n",
                         lvl.level.width, lvl.level.height, lvl.level.kernel_size, lvl.outer.size(),
                         lvl.converged ? 1 : 0, lvl.blurry_mid_band, lvl.skeleton_mid_band);
            for (const std::string& w : lvl.warnings) std::fprintf(stderr, "  warning: %s\n", w.c_str());
        }
    }

    rgtv::save_kernel(a.kernel_out, res.kernel);
    if (!a.kernel_pgm.empty()) rgtv::save_kernel_pgm(a.kernel_pgm, res.kernel);
    if (!a.trace.empty()) rgtv::write_text_file(a.trace, rgtv::trace_csv(res.trace));

    if (img.color) {
        const rgtv::NonblindParams nb{params.lambda_nb, params.sigma, params.nonblind_iters, params.nonblind_tol};
        rgtv::ColorImage out;
        out.r = rgtv::nonblind_restore(img.color->r, res.kernel, nb, &res.skeleton);
        out.g = rgtv::nonblind_restore(img.color->g, res.kernel, nb, &res.skeleton);
        out.b = rgtv::nonblind_restore(img.color->b, res.kernel, nb, &res.skeleton);
        rgtv::save_color_image(a.output, out);
    } else {
        rgtv::save_image(a.output, res.restored);
    }
    return kOk;
}

struct KernelEstimateArgs {
    std::string sharp, blurry, output, kernel_pgm;
    int kernel_size = 0;
    double mu = 0.05;
};

int run_kernel_estimate(const KernelEstimateArgs& a) {
    const rgtv::ImageBuf sharp = rgtv::load_image(a.sharp).gray;
    const rgtv::ImageBuf blurry = rgtv::load_image(a.blurry).gray;
    if (!sharp.same_shape(blurry)) throw rgtv::InvalidInput("sharp and blurry images differ in size");
    rgtv::KernelSolveParams p;
    p.mu = a.mu;
    p.kernel_size = a.kernel_size;
    const rgtv::PaddedDomain dom = rgtv::PaddedDomain::around(sharp, a.kernel_size);
    const rgtv::Kernel k = rgtv::solve_kernel(dom.pad(sharp), dom.pad(blurry), p);
    rgtv::save_kernel(a.output, k);
    if (!a.kernel_pgm.empty()) rgtv::save_kernel_pgm(a.kernel_pgm, k);
    return kOk;
}

struct AnalyzeArgs {
    std::string input, output, region, mid_band = "0.2,0.8", axis = "weight";
    int bins = 20;
    double sigma = 0.1;
};

int run_analyze(const AnalyzeArgs& a) {
    const rgtv::ImageBuf img = rgtv::load_image(a.input).gray;
    rgtv::Region region{0, 0, img.width(), img.height()};
    if (!a.region.empty()) {
        const auto v = parse_list<int, 4>(a.region, "region");
        region = {v[0], v[1], v[2], v[3]};
    }
    const auto band = parse_list<double, 2>(a.mid_band, "mid band");
    rgtv::HistogramOptions opts;
    opts.sigma = a.sigma;
    opts.bins = a.bins;
    opts.mid_lo = band[0];
    opts.mid_hi = band[1];
    if (a.axis == "weight") opts.axis = rgtv::HistogramAxis::Weight;
    else if (a.axis == "difference") opts.axis = rgtv::HistogramAxis::Difference;
    else throw rgtv::InvalidInput("axis must be 'weight' or 'difference'");
    const rgtv::WeightHistogram hist = rgtv::weight_histogram(img, region, opts);
    rgtv::write_text_file(a.output, rgtv::histogram_csv(hist));
    std::printf("mid_band_fraction %.6f\n", hist.mid_band_fraction);
    return kOk;
}

int run_psnr(const std::string& a, const std::string& b) {
    const double db = rgtv::psnr(rgtv::load_image(a).gray, rgtv::load_image(b).gray);
    std::printf("%.4f\n", db);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind image deblurring with a reweighted graph total variation prior"};
    app.require_subcommand(1);

    BlurArgs blur;
    auto* blur_cmd = app.add_subcommand("blur", "Synthesize b = x (*) k + n");
    blur_cmd->add_option("--input", blur.input, "Sharp image (PNG/PGM)")->required();
    blur_cmd->add_option("--kernel", blur.kernel, "Kernel file or builtin:gaussian(s)|motion-line(l,a)|disk(r)")
        ->required();
    blur_cmd->add_option("--noise-sigma", blur.noise_sigma, "Std of additive Gaussian noise")->required();
    blur_cmd->add_option("--seed", blur.seed, "Noise RNG seed")->required();
    blur_cmd->add_option("--output", blur.output, "Output image")->required();

    DeblurArgs deblur;
    auto* deblur_cmd = app.add_subcommand("deblur", "Estimate the kernel and restore the image");
    deblur_cmd->add_option("--input", deblur.input, "Blurry image")->required();
    deblur_cmd->add_option("--kernel-size", deblur.kernel_size, "Odd kernel size h")->required();
    deblur_cmd->add_option("--output", deblur.output, "Restored image")->required();
    deblur_cmd->add_option("--kernel-out", deblur.kernel_out, "Estimated kernel (text format)")->required();
    deblur_cmd->add_option("--config", deblur.config, "Solver configuration (key = value)");
    deblur_cmd->add_option("--trace", deblur.trace, "Per-iteration CSV trace");
    deblur_cmd->add_option("--kernel-pgm", deblur.kernel_pgm, "Kernel visualization (PGM)");
    deblur_cmd->add_flag("-v,--verbose", deblur.verbose, "Print per-level diagnostics to stderr");

    KernelEstimateArgs kest;
    auto* kest_cmd = app.add_subcommand("kernel-estimate", "Gradient-domain kernel solve from a sharp/blurry pair");
    kest_cmd->add_option("--sharp", kest.sharp, "Sharp (or skeleton) image")->required();
    kest_cmd->add_option("--blurry", kest.blurry, "Blurry image")->required();
    kest_cmd->add_option("--kernel-size", kest.kernel_size, "Odd kernel size h")->required();
    kest_cmd->add_option("--mu", kest.mu, "Tikhonov weight")->required();
    kest_cmd->add_option("--output", kest.output, "Kernel output (text format)")->required();
    kest_cmd->add_option("--kernel-pgm", kest.kernel_pgm, "Kernel visualization (PGM)");

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Edge-weight histogram of a region");
    analyze_cmd->add_option("--input", analyze.input, "Image")->required();
    analyze_cmd->add_option("--region", analyze.region, "x,y,w,h (default: whole image)");
    analyze_cmd->add_option("--bins", analyze.bins, "Histogram bins")->required();
    analyze_cmd->add_option("--output", analyze.output, "CSV output")->required();
    analyze_cmd->add_option("--sigma", analyze.sigma, "Weight kernel sigma")->capture_default_str();
    analyze_cmd->add_option("--mid-band", analyze.mid_band, "lo,hi weight band")->capture_default_str();
    analyze_cmd->add_option("--axis", analyze.axis, "weight or difference")->capture_default_str();

    std::string psnr_a, psnr_b;
    auto* psnr_cmd = app.add_subcommand("psnr", "PSNR in dB between two images");
    psnr_cmd->add_option("a", psnr_a, "First image")->required();
    psnr_cmd->add_option("b", psnr_b, "Second image")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*blur_cmd) return run_blur(blur);
        if (*deblur_cmd) return run_deblur(deblur);
        if (*kest_cmd) return run_kernel_estimate(kest);
        if (*analyze_cmd) return run_analyze(analyze);
        if (*psnr_cmd) return run_psnr(psnr_a, psnr_b);
    } catch (const rgtv::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const rgtv::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const rgtv::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const rgtv::Error& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolver;
    }
    return kUsage;
}
