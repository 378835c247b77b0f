#include "rgtv/kernel_solver.hpp"

#include <cmath>

#include "rgtv/conv.hpp"
#include "rgtv/errors.hpp"
#include "rgtv/fft.hpp"

namespace rgtv {

namespace {

struct GradientSpectra {
    std::vector<double> energy;                   // sum_d |F(D_d x)|^2
    std::vector<std::complex<double>> cross;      // sum_d conj(F(D_d x)) F(D_d b)
};

void check_inputs(const ImageBuf& sharp, const ImageBuf& blurry) {
    if (sharp.empty() || !sharp.same_shape(blurry)) throw InvalidInput("kernel solve: images must match and be non-empty");
}

GradientSpectra gradient_spectra(Fft2d& fft, const ImageBuf& sharp, const ImageBuf& blurry) {
    const Gradients gs = circular_gradients(sharp);
    const Gradients gb = circular_gradients(blurry);
    double grad_energy = 0.0;
    for (double v : gs.gx.data()) grad_energy += v * v;
    for (double v : gs.gy.data()) grad_energy += v * v;
    if (!(grad_energy > 0.0)) throw DegenerateInput("kernel solve: sharp image has no gradients");

    const Spectrum sx = fft.forward(gs.gx);
    const Spectrum sy = fft.forward(gs.gy);
    const Spectrum bx = fft.forward(gb.gx);
    const Spectrum by = fft.forward(gb.gy);
    GradientSpectra out;
    out.energy.resize(sx.coeffs.size());
    out.cross.resize(sx.coeffs.size());
    for (std::size_t i = 0; i < sx.coeffs.size(); ++i) {
        out.energy[i] = std::norm(sx.coeffs[i]) + std::norm(sy.coeffs[i]);
        out.cross[i] = std::conj(sx.coeffs[i]) * bx.coeffs[i] + std::conj(sy.coeffs[i]) * by.coeffs[i];
    }
    return out;
}

// Read the centered h x h window out of a torus field (adjoint of embed_kernel).
std::vector<double> extract_window(const ImageBuf& field, int h) {
    const int m = h / 2;
    const int W = field.width();
    const int H = field.height();
    std::vector<double> out(static_cast<std::size_t>(h) * h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j)
            out[static_cast<std::size_t>(i) * h + j] = field(((i - m) % H + H) % H, ((j - m) % W + W) % W);
    return out;
}

ImageBuf embed_window(const std::vector<double>& taps, int h, int width, int height) {
    Kernel k(h, taps);
    return embed_kernel(k, width, height);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

void KernelSolveParams::validate() const {
    if (!(mu > 0.0)) throw ConfigError("kernel solve: mu must be positive");
    if (kernel_size < 1 || kernel_size % 2 == 0) throw ConfigError("kernel solve: kernel size must be odd");
    if (cg_max_iters < 1 || !(cg_tol > 0.0)) throw ConfigError("kernel solve: bad CG settings");
}

ImageBuf solve_kernel_full_domain(const ImageBuf& sharp, const ImageBuf& blurry, double mu) {
    check_inputs(sharp, blurry);
    if (!(mu > 0.0)) throw ConfigError("kernel solve: mu must be positive");
    Fft2d fft(sharp.width(), sharp.height());
    const GradientSpectra g = gradient_spectra(fft, sharp, blurry);
    Spectrum k{sharp.width(), sharp.height(), std::vector<std::complex<double>>(g.cross.size())};
    for (std::size_t i = 0; i < g.cross.size(); ++i) k.coeffs[i] = g.cross[i] / (g.energy[i] + 2.0 * mu);
    return fft.inverse(k);
}

RawKernel solve_kernel_raw(const ImageBuf& sharp, const ImageBuf& blurry, const KernelSolveParams& p) {
    p.validate();
    check_inputs(sharp, blurry);
    const int h = p.kernel_size;
    const int W = sharp.width();
    const int H = sharp.height();
    if (W < h || H < h) throw InvalidInput("kernel solve: image smaller than kernel");

    Fft2d fft(W, H);
    const GradientSpectra g = gradient_spectra(fft, sharp, blurry);

    auto apply_normal = [&](const std::vector<double>& k) {
        Spectrum s = fft.forward(embed_window(k, h, W, H));
        for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= g.energy[i];
        std::vector<double> out = extract_window(fft.inverse(s), h);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += 2.0 * p.mu * k[i];
        return out;
    };

    Spectrum rhs_s{W, H, g.cross};
    const std::vector<double> rhs = extract_window(fft.inverse(rhs_s), h);

    Spectrum full{W, H, std::vector<std::complex<double>>(g.cross.size())};
    for (std::size_t i = 0; i < g.cross.size(); ++i) full.coeffs[i] = g.cross[i] / (g.energy[i] + 2.0 * p.mu);
    std::vector<double> k = extract_window(fft.inverse(full), h);

    std::vector<double> r = apply_normal(k);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
    std::vector<double> dir = r;
    double rr = dot(r, r);
    const double stop = p.cg_tol * p.cg_tol * std::max(dot(rhs, rhs), 1e-300);
    for (int it = 0; it < p.cg_max_iters && rr > stop; ++it) {
        const std::vector<double> ad = apply_normal(dir);
        const double alpha = rr / dot(dir, ad);
        for (std::size_t i = 0; i < k.size(); ++i) {
            k[i] += alpha * dir[i];
            r[i] -= alpha * ad[i];
        }
        const double rr_next = dot(r, r);
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = r[i] + beta * dir[i];
    }
    return RawKernel{h, std::move(k)};
}

Kernel project_kernel(const RawKernel& raw) {
    if (raw.size < 1 || raw.size % 2 == 0 || raw.taps.size() != static_cast<std::size_t>(raw.size) * raw.size)
        throw InvalidInput("project_kernel: malformed raw kernel");
    std::vector<double> taps(raw.taps.size());
    double s = 0.0;
    for (std::size_t i = 0; i < taps.size(); ++i) {
        const double v = raw.taps[i];
        if (std::isnan(v)) throw DegenerateKernel("project_kernel: NaN tap");
        taps[i] = v > 0.0 ? v : 0.0;
        s += taps[i];
    }
    if (!(s > 0.0) || !std::isfinite(s)) throw DegenerateKernel("project_kernel: no positive mass to normalize");
    for (double& t : taps) t /= s;
    return Kernel(raw.size, std::move(taps));
}

Kernel recenter_kernel(const Kernel& k) {
    double mr = 0.0, mc = 0.0, s = 0.0;
    for (int i = 0; i < k.size; ++i)
        for (int j = 0; j < k.size; ++j) {
            mr += i * k(i, j);
            mc += j * k(i, j);
            s += k(i, j);
        }
    if (!(s > 0.0)) throw DegenerateKernel("recenter_kernel: empty kernel");
    const int dr = k.radius() - static_cast<int>(std::lround(mr / s));
    const int dc = k.radius() - static_cast<int>(std::lround(mc / s));
    if (dr == 0 && dc == 0) return k;
    RawKernel shifted{k.size, std::vector<double>(k.taps.size(), 0.0)};
    for (int i = 0; i < k.size; ++i)
        for (int j = 0; j < k.size; ++j) {
            const int ti = i + dr;
            const int tj = j + dc;
            if (ti >= 0 && tj >= 0 && ti < k.size && tj < k.size)
                shifted.taps[static_cast<std::size_t>(ti) * k.size + tj] = k(i, j);
        }
    return project_kernel(shifted);
}

Kernel solve_kernel(const ImageBuf& sharp, const ImageBuf& blurry, const KernelSolveParams& p) {
    Kernel k = project_kernel(solve_kernel_raw(sharp, blurry, p));
    return p.recenter ? recenter_kernel(k) : k;
}

}  // namespace rgtv
