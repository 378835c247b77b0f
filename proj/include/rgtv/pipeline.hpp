#pragma once

// Coarse-to-fine blind deblurring: alternate skeleton and kernel estimates
// with a decaying regularization weight at each pyramid level, then restore
// the full-resolution image with the final kernel.

#include <cmath>
#include <string>
#include <vector>

#include "rgtv/image.hpp"
#include "rgtv/kernel.hpp"
#include "rgtv/kernel_solver.hpp"
#include "rgtv/skeleton.hpp"

namespace rgtv {

struct SolverParams {
    double sigma = 0.1;
    double lambda0 = 0.01;
    double mu = 0.05;
    double lambda_decay = 1.1;
    int kernel_size = 0;  // required; odd
    double scale_factor = std::log2(3.0);
    int max_outer_iters = 20;
    double convergence_tol = 1e-3;
    int reweight_iters = 3;
    int pd_iters = 100;
    double pd_tol = 1e-4;
    double lambda_nb = 2e-3;
    int nonblind_iters = 300;
    double nonblind_tol = 1e-5;

    void validate() const;
    SkeletonParams skeleton(double lambda) const;
    KernelSolveParams kernel_solve(int kernel_size) const;
};

struct PyramidLevel {
    int width = 0;
    int height = 0;
    int kernel_size = 0;
    /// Downsampling factor relative to the input (1 at the finest level).
    double scale = 1.0;
};

/// Levels ordered coarsest to finest. Kernel sizes follow
/// odd_round(h / scale_factor^l) and stop at the first level reaching 3.
std::vector<PyramidLevel> build_pyramid(const ImageBuf& b, int kernel_size, double scale_factor);

/// Centered delta for the coarsest level, otherwise the previous estimate
/// upsampled to `kernel_size`.
Kernel kernel_init(int kernel_size, const Kernel* coarser);

struct NonblindParams {
    double lambda = 2e-3;
    double sigma = 0.1;
    int iters = 300;
    double tol = 1e-5;
};

/// Fixed-weight graph-TV deconvolution on a replicate-padded domain. Weights
/// come from `guide` (typically the skeleton) or are all ones when absent.
/// Output is clamped to [0,1].
ImageBuf nonblind_restore(const ImageBuf& b, const Kernel& k, const NonblindParams& p,
                          const ImageBuf* guide = nullptr);

struct OuterRecord {
    int iteration = 0;
    double lambda = 0.0;
    double kernel_change = 0.0;  // l1 distance to the previous estimate
    double skeleton_objective = 0.0;
};

struct LevelDiagnostics {
    PyramidLevel level;
    Kernel kernel;  // estimate at the end of the level
    std::vector<OuterRecord> outer;
    bool converged = false;
    double blurry_mid_band = 0.0;
    double skeleton_mid_band = 0.0;
    std::vector<std::string> warnings;
};

/// One primal-dual iteration; `outer` counts skeleton reweighting rounds over
/// the whole run.
struct TraceRow {
    int outer = 0;
    int inner = 0;
    double objective = 0.0;
    double primal_residual = 0.0;
};

struct DeblurResult {
    Kernel kernel;
    ImageBuf skeleton;
    ImageBuf restored;
    std::vector<LevelDiagnostics> levels;
    std::vector<TraceRow> trace;
};

DeblurResult deblur_blind(const ImageBuf& b, const SolverParams& params);

/// Replicate padding used before every frequency-domain solve: `margin` on
/// the left/top, and at least `margin` on the right/bottom so that both
/// dimensions become FFT-friendly.
struct PaddedDomain {
    int left = 0;
    int top = 0;
    int width = 0;
    int height = 0;

    static PaddedDomain around(const ImageBuf& img, int margin);
    ImageBuf pad(const ImageBuf& img) const { return pad_replicate(img, left, top, width, height); }
    ImageBuf unpad(const ImageBuf& img, int w, int h) const { return crop(img, left, top, w, h); }
};

std::string trace_csv(const std::vector<TraceRow>& rows);

}  // namespace rgtv
