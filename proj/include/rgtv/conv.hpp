#pragma once

#include "rgtv/fft.hpp"
#include "rgtv/image.hpp"
#include "rgtv/kernel.hpp"

namespace rgtv {

enum class Boundary { Replicate, Circular };

/// y(r,c) = sum_{i,j} k(i,j) x(r-(i-m), c-(j-m)), m = kernel radius.
/// Replicate runs a direct spatial loop; Circular goes through the FFT.
ImageBuf convolve(const ImageBuf& img, const Kernel& k, Boundary boundary);

/// Circular correlation, i.e. convolution with the 180-degree flipped kernel.
/// This is the adjoint of convolve(., k, Circular).
ImageBuf correlate_circular(const ImageBuf& img, const Kernel& k);

Kernel flip(const Kernel& k);

struct Gradients {
    ImageBuf gx;
    ImageBuf gy;
};

/// Forward differences; the last column of gx and last row of gy are zero.
Gradients image_gradients(const ImageBuf& img);

/// Forward differences with wrap-around, so they commute with circular convolution.
Gradients circular_gradients(const ImageBuf& img);

/// Separable Gaussian blur with replicate boundary; radius ceil(3*std).
ImageBuf gaussian_blur(const ImageBuf& img, double std_dev);

/// Gaussian prefilter (std = factor/2) followed by bilinear resampling to
/// round(dims/factor).
ImageBuf downsample(const ImageBuf& img, double factor);

/// Bilinear resampling of the kernel onto an odd new_size grid sharing its
/// center; coordinates scale by k.size/new_size. Negatives are clamped and the
/// result renormalized.
Kernel upsample_kernel(const Kernel& k, int new_size);

}  // namespace rgtv
