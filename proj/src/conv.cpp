#include "rgtv/conv.hpp"

#include <algorithm>
#include <cmath>

#include "rgtv/errors.hpp"

namespace rgtv {

namespace {

void check_kernel_fits(const ImageBuf& img, const Kernel& k) {
    if (img.empty()) throw InvalidInput("convolve: empty image");
    if (k.size > std::min(img.width(), img.height())) throw InvalidInput("convolve: kernel larger than image");
}

ImageBuf convolve_replicate(const ImageBuf& img, const Kernel& k) {
    const int W = img.width();
    const int H = img.height();
    const int m = k.radius();
    ImageBuf out(W, H);
    for (int r = 0; r < H; ++r) {
        for (int c = 0; c < W; ++c) {
            double acc = 0.0;
            for (int i = 0; i < k.size; ++i) {
                const int sr = std::clamp(r - (i - m), 0, H - 1);
                for (int j = 0; j < k.size; ++j) {
                    const int sc = std::clamp(c - (j - m), 0, W - 1);
                    acc += k(i, j) * img(sr, sc);
                }
            }
            out(r, c) = acc;
        }
    }
    return out;
}

ImageBuf convolve_circular(const ImageBuf& img, const Kernel& k) {
    Fft2d fft(img.width(), img.height());
    Spectrum x = fft.forward(img);
    const Spectrum kf = kernel_spectrum(k, fft);
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) x.coeffs[i] *= kf.coeffs[i];
    return fft.inverse(x);
}

}  // namespace

ImageBuf convolve(const ImageBuf& img, const Kernel& k, Boundary boundary) {
    check_kernel_fits(img, k);
    return boundary == Boundary::Replicate ? convolve_replicate(img, k) : convolve_circular(img, k);
}

Kernel flip(const Kernel& k) {
    Kernel f = k;
    std::reverse(f.taps.begin(), f.taps.end());
    return f;
}

ImageBuf correlate_circular(const ImageBuf& img, const Kernel& k) {
    check_kernel_fits(img, k);
    return convolve_circular(img, flip(k));
}

Gradients image_gradients(const ImageBuf& img) {
    if (img.width() < 2 || img.height() < 2) throw InvalidInput("image_gradients: image must be at least 2x2");
    const int W = img.width();
    const int H = img.height();
    Gradients g{ImageBuf(W, H), ImageBuf(W, H)};
    for (int r = 0; r < H; ++r)
        for (int c = 0; c + 1 < W; ++c) g.gx(r, c) = img(r, c + 1) - img(r, c);
    for (int r = 0; r + 1 < H; ++r)
        for (int c = 0; c < W; ++c) g.gy(r, c) = img(r + 1, c) - img(r, c);
    return g;
}

Gradients circular_gradients(const ImageBuf& img) {
    if (img.empty()) throw InvalidInput("circular_gradients: empty image");
    const int W = img.width();
    const int H = img.height();
    Gradients g{ImageBuf(W, H), ImageBuf(W, H)};
    for (int r = 0; r < H; ++r) {
        for (int c = 0; c < W; ++c) {
            g.gx(r, c) = img(r, (c + 1) % W) - img(r, c);
            g.gy(r, c) = img((r + 1) % H, c) - img(r, c);
        }
    }
    return g;
}

ImageBuf gaussian_blur(const ImageBuf& img, double std_dev) {
    if (!(std_dev > 0.0)) throw InvalidInput("gaussian_blur: std must be positive");
    const int rad = static_cast<int>(std::ceil(3.0 * std_dev));
    std::vector<double> taps(static_cast<std::size_t>(2 * rad + 1));
    double s = 0.0;
    for (int i = -rad; i <= rad; ++i) {
        taps[static_cast<std::size_t>(i + rad)] = std::exp(-0.5 * i * i / (std_dev * std_dev));
        s += taps[static_cast<std::size_t>(i + rad)];
    }
    for (double& t : taps) t /= s;

    const int W = img.width();
    const int H = img.height();
    ImageBuf tmp(W, H);
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) {
            double acc = 0.0;
            for (int i = -rad; i <= rad; ++i) acc += taps[static_cast<std::size_t>(i + rad)] * img(r, std::clamp(c + i, 0, W - 1));
            tmp(r, c) = acc;
        }
    ImageBuf out(W, H);
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) {
            double acc = 0.0;
            for (int i = -rad; i <= rad; ++i) acc += taps[static_cast<std::size_t>(i + rad)] * tmp(std::clamp(r + i, 0, H - 1), c);
            out(r, c) = acc;
        }
    return out;
}

ImageBuf downsample(const ImageBuf& img, double factor) {
    if (!(factor > 1.0) || !std::isfinite(factor)) throw InvalidInput("downsample: factor must exceed 1");
    const int out_w = static_cast<int>(std::lround(img.width() / factor));
    const int out_h = static_cast<int>(std::lround(img.height() / factor));
    if (out_w < 3 || out_h < 3) throw InvalidInput("downsample: result smaller than 3x3");

    const ImageBuf smooth = gaussian_blur(img, 0.3 * factor);
    const double sx = static_cast<double>(img.width()) / out_w;
    const double sy = static_cast<double>(img.height()) / out_h;
    ImageBuf out(out_w, out_h);
    for (int r = 0; r < out_h; ++r) {
        const double y = std::clamp((r + 0.5) * sy - 0.5, 0.0, img.height() - 1.0);
        const int y0 = std::min(static_cast<int>(y), img.height() - 1);
        const int y1 = std::min(y0 + 1, img.height() - 1);
        const double fy = y - y0;
        for (int c = 0; c < out_w; ++c) {
            const double x = std::clamp((c + 0.5) * sx - 0.5, 0.0, img.width() - 1.0);
            const int x0 = std::min(static_cast<int>(x), img.width() - 1);
            const int x1 = std::min(x0 + 1, img.width() - 1);
            const double fx = x - x0;
            out(r, c) = (1 - fy) * ((1 - fx) * smooth(y0, x0) + fx * smooth(y0, x1)) +
                        fy * ((1 - fx) * smooth(y1, x0) + fx * smooth(y1, x1));
        }
    }
    return out;
}

Kernel upsample_kernel(const Kernel& k, int new_size) {
    if (new_size < 1 || new_size % 2 == 0) throw InvalidInput("upsample_kernel: new size must be odd");
    if (new_size < k.size) throw InvalidInput("upsample_kernel: new size smaller than kernel");
    // each old tap is a point mass pushed to its scaled offset and split bilinearly
    const double scale = static_cast<double>(new_size) / k.size;
    const int cn = new_size / 2;
    const int co = k.radius();
    Kernel out(new_size, std::vector<double>(static_cast<std::size_t>(new_size) * new_size, 0.0));
    for (int i = 0; i < k.size; ++i)
        for (int j = 0; j < k.size; ++j) {
            const double m = std::max(0.0, k(i, j));
            if (m == 0.0) continue;
            const double y = cn + (i - co) * scale;
            const double x = cn + (j - co) * scale;
            const int y0 = static_cast<int>(std::floor(y));
            const int x0 = static_cast<int>(std::floor(x));
            const double fy = y - y0;
            const double fx = x - x0;
            for (int dy = 0; dy < 2; ++dy)
                for (int dx = 0; dx < 2; ++dx) {
                    const int yy = std::clamp(y0 + dy, 0, new_size - 1);
                    const int xx = std::clamp(x0 + dx, 0, new_size - 1);
                    out(yy, xx) += m * (dy ? fy : 1.0 - fy) * (dx ? fx : 1.0 - fx);
                }
        }
    double s = 0.0;
    for (double t : out.taps) s += t;
    if (!(s > 0.0)) return Kernel::delta(new_size);
    for (double& t : out.taps) t /= s;
    return out;
}

}  // namespace rgtv
