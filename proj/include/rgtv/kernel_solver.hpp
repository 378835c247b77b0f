#pragma once

// Blur-kernel estimation in the gradient domain:
//
//     min_k  1/2 sum_{d in x,y} ||D_d x (*) k - D_d b||^2 + mu ||k||^2
//
// with circular convolution and circular forward differences D_d on the
// domain of the inputs (callers pad beforehand).

#include <vector>

#include "rgtv/image.hpp"
#include "rgtv/kernel.hpp"

namespace rgtv {

struct KernelSolveParams {
    double mu = 0.05;
    int kernel_size = 3;
    /// Shift the projected kernel so its center of mass sits on the center tap.
    bool recenter = false;
    int cg_max_iters = 2000;
    double cg_tol = 1e-13;

    void validate() const;
};

/// Unprojected h x h solution; taps may be negative and need not sum to one.
struct RawKernel {
    int size = 0;
    std::vector<double> taps;

    double operator()(int row, int col) const { return taps[static_cast<std::size_t>(row) * size + col]; }
};

/// Closed-form minimizer over kernels with full image support:
///   F(k) = sum_d conj(F(D_d x)) F(D_d b) / (sum_d |F(D_d x)|^2 + 2 mu),
/// returned on the full torus with the zero shift at (0,0).
ImageBuf solve_kernel_full_domain(const ImageBuf& sharp, const ImageBuf& blurry, double mu);

/// Minimizer over kernels supported on the centered h x h window. The normal
/// equations (A^T A + 2 mu I) k = A^T D b are applied through the FFT and
/// solved by conjugate gradients, warm-started from the center crop of the
/// full-support closed form.
RawKernel solve_kernel_raw(const ImageBuf& sharp, const ImageBuf& blurry, const KernelSolveParams& p);

/// solve_kernel_raw followed by project_kernel (and optional recentering).
Kernel solve_kernel(const ImageBuf& sharp, const ImageBuf& blurry, const KernelSolveParams& p);

/// Zero the negative taps and normalize to unit sum. Throws DegenerateKernel
/// when nothing positive remains.
Kernel project_kernel(const RawKernel& raw);

/// Integer shift moving the center of mass onto the center tap; mass shifted
/// out of the window is dropped before renormalizing.
Kernel recenter_kernel(const Kernel& k);

}  // namespace rgtv
