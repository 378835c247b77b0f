#pragma once

#include "rgtv/image.hpp"
#include "rgtv/kernel.hpp"

namespace rgtv {

/// 10 log10(1 / MSE) for signals on [0,1]; +infinity for identical images.
double psnr(const ImageBuf& a, const ImageBuf& b);

/// Maximum over integer shifts of sum(a(p) b(p+s)) / (||a|| ||b||), with both
/// kernels zero-extended. Kernels may differ in size.
double aligned_ncc(const Kernel& a, const Kernel& b);

}  // namespace rgtv
