#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "rgtv/image.hpp"
#include "rgtv/kernel.hpp"

namespace rgtv {

/// Half-plane spectrum of a real width x height field: height rows of
/// width/2+1 coefficients (FFTW r2c layout).
struct Spectrum {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> coeffs;

    int half_width() const { return width / 2 + 1; }
};

/// Smallest n' >= n whose only prime factors are 2, 3, 5, 7.
int next_fast_size(int n);

/// Forward/inverse real 2-D transform pair for one fixed size. Plans use
/// FFTW_ESTIMATE, so identical inputs always give bit-identical outputs.
/// Not thread-safe per instance; separate instances may be used concurrently.
class Fft2d {
public:
    Fft2d(int width, int height);
    ~Fft2d();
    Fft2d(Fft2d&&) noexcept;
    Fft2d& operator=(Fft2d&&) noexcept;
    Fft2d(const Fft2d&) = delete;
    Fft2d& operator=(const Fft2d&) = delete;

    int width() const;
    int height() const;

    Spectrum forward(const ImageBuf& img);
    /// Normalized inverse: inverse(forward(x)) == x up to rounding.
    ImageBuf inverse(const Spectrum& spec);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Kernel embedded in a width x height torus with its center tap at (0,0).
/// Taps that wrap onto the same cell accumulate.
ImageBuf embed_kernel(const Kernel& k, int width, int height);

/// Spectrum of embed_kernel(k, ...) on the transform's domain.
Spectrum kernel_spectrum(const Kernel& k, Fft2d& fft);

}  // namespace rgtv
