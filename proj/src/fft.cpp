#include "rgtv/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "rgtv/errors.hpp"

namespace rgtv {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

bool is_fast(int n) {
    for (int p : {2, 3, 5, 7})
        while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace

int next_fast_size(int n) {
    if (n < 1) return 1;
    while (!is_fast(n)) ++n;
    return n;
}

struct Fft2d::Impl {
    int width = 0;
    int height = 0;
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    Impl(int w, int h) : width(w), height(h) {
        const std::size_t n_real = static_cast<std::size_t>(w) * h;
        const std::size_t n_cplx = static_cast<std::size_t>(w / 2 + 1) * h;
        real = fftw_alloc_real(n_real);
        cplx = fftw_alloc_complex(n_cplx);
        std::lock_guard lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_2d(h, w, real, cplx, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_2d(h, w, cplx, real, FFTW_ESTIMATE);
    }

    ~Impl() {
        {
            std::lock_guard lock(planner_mutex());
            if (fwd) fftw_destroy_plan(fwd);
            if (inv) fftw_destroy_plan(inv);
        }
        fftw_free(real);
        fftw_free(cplx);
    }
};

Fft2d::Fft2d(int width, int height) {
    if (width < 1 || height < 1) throw InvalidInput("FFT size must be positive");
    impl_ = std::make_unique<Impl>(width, height);
}

Fft2d::~Fft2d() = default;
Fft2d::Fft2d(Fft2d&&) noexcept = default;
Fft2d& Fft2d::operator=(Fft2d&&) noexcept = default;

int Fft2d::width() const { return impl_->width; }
int Fft2d::height() const { return impl_->height; }

Spectrum Fft2d::forward(const ImageBuf& img) {
    if (img.width() != impl_->width || img.height() != impl_->height)
        throw InvalidInput("FFT input does not match transform size");
    std::copy(img.data().begin(), img.data().end(), impl_->real);
    fftw_execute(impl_->fwd);
    Spectrum s{impl_->width, impl_->height, {}};
    const std::size_t n = static_cast<std::size_t>(s.half_width()) * s.height;
    s.coeffs.resize(n);
    std::memcpy(static_cast<void*>(s.coeffs.data()), impl_->cplx, n * sizeof(fftw_complex));
    return s;
}

ImageBuf Fft2d::inverse(const Spectrum& spec) {
    if (spec.width != impl_->width || spec.height != impl_->height)
        throw InvalidInput("spectrum does not match transform size");
    std::memcpy(impl_->cplx, spec.coeffs.data(), spec.coeffs.size() * sizeof(fftw_complex));
    fftw_execute(impl_->inv);
    const std::size_t n = static_cast<std::size_t>(impl_->width) * impl_->height;
    const double scale = 1.0 / static_cast<double>(n);
    std::vector<double> out(impl_->real, impl_->real + n);
    for (double& v : out) v *= scale;
    return ImageBuf(impl_->width, impl_->height, std::move(out));
}

ImageBuf embed_kernel(const Kernel& k, int width, int height) {
    ImageBuf out(width, height);
    const int m = k.radius();
    for (int i = 0; i < k.size; ++i) {
        const int r = ((i - m) % height + height) % height;
        for (int j = 0; j < k.size; ++j) {
            const int c = ((j - m) % width + width) % width;
            out(r, c) += k(i, j);
        }
    }
    return out;
}

Spectrum kernel_spectrum(const Kernel& k, Fft2d& fft) {
    return fft.forward(embed_kernel(k, fft.width(), fft.height()));
}

}  // namespace rgtv
