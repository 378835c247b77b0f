#include "rgtv/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "rgtv/conv.hpp"
#include "rgtv/errors.hpp"
#include "rgtv/fft.hpp"
#include "rgtv/graph.hpp"

namespace rgtv {

namespace {

double l1_distance(const Kernel& a, const Kernel& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.taps.size(); ++i) s += std::abs(a.taps[i] - b.taps[i]);
    return s;
}

double mid_band(const ImageBuf& img, double sigma) {
    HistogramOptions opts;
    opts.sigma = sigma;
    return weight_histogram(img, opts).mid_band_fraction;
}

}  // namespace

void SolverParams::validate() const {
    if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
    if (!(lambda0 > 0.0)) throw ConfigError("lambda0 must be positive");
    if (!(mu > 0.0)) throw ConfigError("mu must be positive");
    if (!(lambda_decay > 1.0)) throw ConfigError("lambda_decay must exceed 1");
    if (kernel_size < 1 || kernel_size % 2 == 0) throw ConfigError("kernel_size must be a positive odd integer");
    if (!(scale_factor > 1.0)) throw ConfigError("scale_factor must exceed 1");
    if (max_outer_iters < 1) throw ConfigError("max_outer_iters must be >= 1");
    if (!(convergence_tol > 0.0)) throw ConfigError("convergence_tol must be positive");
    if (!(lambda_nb > 0.0)) throw ConfigError("lambda_nb must be positive");
    if (nonblind_iters < 1 || !(nonblind_tol > 0.0)) throw ConfigError("bad non-blind iteration budget");
    skeleton(lambda0).validate();
}

SkeletonParams SolverParams::skeleton(double lambda) const {
    return SkeletonParams{lambda, sigma, reweight_iters, pd_iters, pd_tol};
}

KernelSolveParams SolverParams::kernel_solve(int size) const {
    KernelSolveParams p;
    p.mu = mu;
    p.kernel_size = size;
    return p;
}

PaddedDomain PaddedDomain::around(const ImageBuf& img, int margin) {
    PaddedDomain d;
    d.left = margin;
    d.top = margin;
    d.width = next_fast_size(img.width() + 2 * margin);
    d.height = next_fast_size(img.height() + 2 * margin);
    return d;
}

std::vector<PyramidLevel> build_pyramid(const ImageBuf& b, int kernel_size, double scale_factor) {
    if (!(scale_factor > 1.0)) throw InvalidInput("build_pyramid: scale_factor must exceed 1");
    if (kernel_size < 1 || kernel_size % 2 == 0) throw InvalidInput("build_pyramid: kernel size must be odd");
    if (b.width() < kernel_size || b.height() < kernel_size)
        throw InvalidInput("build_pyramid: image smaller than the kernel");

    std::vector<PyramidLevel> levels{{b.width(), b.height(), kernel_size, 1.0}};
    for (int l = 1; levels.back().kernel_size > 3 && l < 64; ++l) {
        const double scale = std::pow(scale_factor, l);
        const int h = odd_round(kernel_size / scale);
        const int w = static_cast<int>(std::lround(b.width() / scale));
        const int ht = static_cast<int>(std::lround(b.height() / scale));
        if (w < 3 || ht < 3 || w < h || ht < h) break;
        levels.push_back({w, ht, h, scale});
    }
    return {levels.rbegin(), levels.rend()};
}

Kernel kernel_init(int kernel_size, const Kernel* coarser) {
    return coarser ? upsample_kernel(*coarser, kernel_size) : Kernel::delta(kernel_size);
}

ImageBuf nonblind_restore(const ImageBuf& b, const Kernel& k, const NonblindParams& p, const ImageBuf* guide) {
    k.require_normalized();
    if (guide && !guide->same_shape(b)) throw InvalidInput("nonblind_restore: guide must match the image");
    const PaddedDomain dom = PaddedDomain::around(b, k.size);
    const ImageBuf bp = dom.pad(b);
    const EdgeWeightField w =
        guide ? build_weights(dom.pad(*guide), p.sigma) : EdgeWeightField::ones(dom.width, dom.height);
    PdState state = PdState::start(bp);
    const ImageBuf x = pd_inner_solve(bp, k, w, p.lambda, state, {p.iters, p.tol});
    return clamp01(dom.unpad(x, b.width(), b.height()));
}

DeblurResult deblur_blind(const ImageBuf& b, const SolverParams& params) {
    params.validate();
    const int h = params.kernel_size;
    if (b.width() < 3 * h || b.height() < 3 * h)
        throw InvalidInput("deblur_blind: image must be at least 3h x 3h for kernel size h=" + std::to_string(h));

    DeblurResult result;
    const std::vector<PyramidLevel> pyramid = build_pyramid(b, h, params.scale_factor);
    int outer_counter = 0;
    Kernel k;
    ImageBuf skeleton_padded;
    PaddedDomain dom;

    for (std::size_t li = 0; li < pyramid.size(); ++li) {
        const PyramidLevel& lvl = pyramid[li];
        LevelDiagnostics diag;
        diag.level = lvl;

        const ImageBuf bl = lvl.scale == 1.0 ? b : downsample(b, lvl.scale);
        dom = PaddedDomain::around(bl, lvl.kernel_size);
        const ImageBuf bp = dom.pad(bl);
        k = kernel_init(lvl.kernel_size, li == 0 ? nullptr : &k);
        ImageBuf x = bp;

        double lambda = params.lambda0;
        for (int t = 0; t < params.max_outer_iters; ++t) {
            SkeletonResult skel = solve_skeleton(bp, k, params.skeleton(lambda), x);
            x = std::move(skel.skeleton);
            for (const SkeletonTraceRow& row : skel.iterations)
                result.trace.push_back({outer_counter + row.outer, row.inner, row.objective, row.primal_residual});
            outer_counter += static_cast<int>(skel.objective_trace.size());

            OuterRecord rec;
            rec.iteration = t;
            rec.lambda = lambda;
            rec.skeleton_objective = skel.objective_trace.back();
            Kernel next;
            try {
                next = solve_kernel(x, bp, params.kernel_solve(lvl.kernel_size));
            } catch (const DegenerateKernel& e) {
                diag.warnings.push_back(std::string("kept previous kernel: ") + e.what());
                diag.outer.push_back(rec);
                break;
            } catch (const DegenerateInput& e) {
                diag.warnings.push_back(std::string("kept previous kernel: ") + e.what());
                diag.outer.push_back(rec);
                break;
            }
            rec.kernel_change = l1_distance(next, k);
            k = std::move(next);
            diag.outer.push_back(rec);

            lambda = lambda / params.lambda_decay;
            if (rec.kernel_change < params.convergence_tol) {
                diag.converged = true;
                break;
            }
        }

        diag.kernel = k;
        const ImageBuf skel_crop = dom.unpad(x, bl.width(), bl.height());
        diag.blurry_mid_band = mid_band(bl, params.sigma);
        diag.skeleton_mid_band = mid_band(skel_crop, params.sigma);
        result.levels.push_back(std::move(diag));
        skeleton_padded = std::move(x);
    }

    result.kernel = k;
    result.skeleton = dom.unpad(skeleton_padded, b.width(), b.height());
    NonblindParams nb{params.lambda_nb, params.sigma, params.nonblind_iters, params.nonblind_tol};
    result.restored = nonblind_restore(b, k, nb, &result.skeleton);
    return result;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "outer,inner,objective,primal_residual\n";
    for (const TraceRow& r : rows) os << r.outer << ',' << r.inner << ',' << r.objective << ',' << r.primal_residual << '\n';
    return os.str();
}

}  // namespace rgtv
