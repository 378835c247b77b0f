#include "rgtv/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rgtv/errors.hpp"
#include "rgtv/fft.hpp"

namespace rgtv {

namespace {

const double kDefaultStep = 0.99 / std::sqrt(kDiffOpNormSq);

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double data_term(const ImageBuf& kx, const ImageBuf& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double r = kx.data()[i] - b.data()[i];
        s += r * r;
    }
    return 0.5 * s;
}

ImageBuf apply_circular(Fft2d& fft, const Spectrum& kf, const ImageBuf& x) {
    Spectrum xs = fft.forward(x);
    for (std::size_t i = 0; i < xs.coeffs.size(); ++i) xs.coeffs[i] *= kf.coeffs[i];
    return fft.inverse(xs);
}

// y <- clip(y + s * D xbar, [-lambda w, lambda w]); returns the largest excess
// |y_e| - lambda w_e after projection.
double dual_step(EdgeWeightField& y, const ImageBuf& xbar, const EdgeWeightField& w, double lambda, double s) {
    const int W = xbar.width();
    const int H = xbar.height();
    double worst = -INFINITY;
    for (int r = 0; r < H; ++r)
        for (int c = 0; c + 1 < W; ++c) {
            const double bound = lambda * w.h_at(r, c);
            double& v = y.h_at(r, c);
            v = std::clamp(v + s * (xbar(r, c + 1) - xbar(r, c)), -bound, bound);
            worst = std::max(worst, std::abs(v) - bound);
        }
    for (int r = 0; r + 1 < H; ++r)
        for (int c = 0; c < W; ++c) {
            const double bound = lambda * w.v_at(r, c);
            double& v = y.v_at(r, c);
            v = std::clamp(v + s * (xbar(r + 1, c) - xbar(r, c)), -bound, bound);
            worst = std::max(worst, std::abs(v) - bound);
        }
    return worst;
}

// out = x - t * D^T y
ImageBuf primal_descent(const ImageBuf& x, const EdgeWeightField& y, double t) {
    const int W = x.width();
    const int H = x.height();
    ImageBuf out = x;
    for (int r = 0; r < H; ++r)
        for (int c = 0; c + 1 < W; ++c) {
            const double e = t * y.h_at(r, c);
            out(r, c + 1) -= e;
            out(r, c) += e;
        }
    for (int r = 0; r + 1 < H; ++r)
        for (int c = 0; c < W; ++c) {
            const double e = t * y.v_at(r, c);
            out(r + 1, c) -= e;
            out(r, c) += e;
        }
    return out;
}

bool all_zero(const EdgeWeightField& w) {
    return std::all_of(w.h.begin(), w.h.end(), [](double x) { return x == 0.0; }) &&
           std::all_of(w.v.begin(), w.v.end(), [](double x) { return x == 0.0; });
}

}  // namespace

void SkeletonParams::validate() const {
    if (!(lambda > 0.0)) throw ConfigError("skeleton: lambda must be positive");
    if (!(sigma > 0.0)) throw ConfigError("skeleton: sigma must be positive");
    if (reweight_iters < 1) throw ConfigError("skeleton: reweight_iters must be >= 1");
    if (pd_iters < 1) throw ConfigError("skeleton: pd_iters must be >= 1");
    if (!(pd_tol > 0.0)) throw ConfigError("skeleton: pd_tol must be positive");
}

PdState PdState::start(const ImageBuf& init) { return start(init, kDefaultStep, kDefaultStep); }

PdState PdState::start(const ImageBuf& init, double tau, double sigma_dual) {
    PdState s;
    s.primal = init;
    s.extrapolated = init;
    s.dual = EdgeWeightField(init.width(), init.height(), 0.0);
    s.tau = tau;
    s.sigma_dual = sigma_dual;
    return s;
}

void PdState::check_steps() const {
    if (!(tau > 0.0) || !(sigma_dual > 0.0))
        throw ConfigError("primal-dual step sizes must be positive");
    if (tau * sigma_dual * kDiffOpNormSq > 1.0 + 1e-12)
        throw ConfigError("primal-dual step sizes violate tau*sigma*||D||^2 <= 1");
}

double fixed_weight_objective(const ImageBuf& b, const Kernel& k, const EdgeWeightField& weights, double lambda,
                              const ImageBuf& x) {
    if (!b.same_shape(x) || !weights.matches(x)) throw InvalidInput("objective: dimension mismatch");
    Fft2d fft(b.width(), b.height());
    const Spectrum kf = kernel_spectrum(k, fft);
    return data_term(apply_circular(fft, kf, x), b) + lambda * gtv_value(weights, x);
}

ImageBuf least_squares_deconvolve(const ImageBuf& b, const Kernel& k) {
    Fft2d fft(b.width(), b.height());
    const Spectrum kf = kernel_spectrum(k, fft);
    Spectrum bs = fft.forward(b);
    for (std::size_t i = 0; i < bs.coeffs.size(); ++i) {
        const double mag2 = std::norm(kf.coeffs[i]);
        bs.coeffs[i] = mag2 > 1e-12 ? std::conj(kf.coeffs[i]) * bs.coeffs[i] / mag2 : 0.0;
    }
    return fft.inverse(bs);
}

ImageBuf pd_inner_solve(const ImageBuf& b, const Kernel& k, const EdgeWeightField& weights, double lambda,
                        PdState& state, const PdOptions& opts, PdReport* report) {
    if (b.empty()) throw InvalidInput("pd_inner_solve: empty image");
    if (!weights.matches(b) || !state.primal.same_shape(b) || !state.extrapolated.same_shape(b) ||
        !state.dual.matches(b))
        throw InvalidInput("pd_inner_solve: dimension mismatch");
    if (!(lambda >= 0.0)) throw ConfigError("pd_inner_solve: lambda must be non-negative");
    if (opts.max_iters < 1 || !(opts.tol > 0.0)) throw ConfigError("pd_inner_solve: bad iteration budget");
    state.check_steps();

    PdReport local;
    PdReport& rep = report ? *report : local;
    rep = PdReport{};

    if (lambda == 0.0 || all_zero(weights)) {
        state.primal = least_squares_deconvolve(b, k);
        state.extrapolated = state.primal;
        std::fill(state.dual.h.begin(), state.dual.h.end(), 0.0);
        std::fill(state.dual.v.begin(), state.dual.v.end(), 0.0);
        rep.converged = true;
        return state.primal;
    }

    Fft2d fft(b.width(), b.height());
    const Spectrum kf = kernel_spectrum(k, fft);
    const Spectrum bf = fft.forward(b);
    const double inv_tau = 1.0 / state.tau;
    std::vector<std::complex<double>> rhs(kf.coeffs.size());
    std::vector<double> denom(kf.coeffs.size());
    for (std::size_t i = 0; i < kf.coeffs.size(); ++i) {
        rhs[i] = std::conj(kf.coeffs[i]) * bf.coeffs[i];
        denom[i] = std::norm(kf.coeffs[i]) + inv_tau;
    }

    // CP iterates are not monotone in the objective; hand back the best one seen
    ImageBuf best = state.primal;
    double best_obj = fixed_weight_objective(b, k, weights, lambda, best);

    rep.max_dual_violation = -INFINITY;
    for (int it = 1; it <= opts.max_iters; ++it) {
        rep.max_dual_violation = std::max(
            rep.max_dual_violation, dual_step(state.dual, state.extrapolated, weights, lambda, state.sigma_dual));

        Spectrum v = fft.forward(primal_descent(state.primal, state.dual, state.tau));
        for (std::size_t i = 0; i < v.coeffs.size(); ++i) v.coeffs[i] = (rhs[i] + v.coeffs[i] * inv_tau) / denom[i];
        ImageBuf next = fft.inverse(v);
        for (std::size_t i = 0; i < v.coeffs.size(); ++i) v.coeffs[i] *= kf.coeffs[i];
        const ImageBuf kx = fft.inverse(v);

        double diff2 = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            const double xn = next.data()[i];
            const double xo = state.primal.data()[i];
            diff2 += (xn - xo) * (xn - xo);
            state.extrapolated.pixels()[i] = 2.0 * xn - xo;
        }
        const double residual = std::sqrt(diff2) / std::max(norm2(state.primal.pixels()), 1e-12);
        state.primal = std::move(next);

        const double obj = data_term(kx, b) + lambda * gtv_value(weights, state.primal);
        if (obj < best_obj) {
            best_obj = obj;
            best = state.primal;
        }
        rep.iterations = it;
        rep.trace.push_back({it, best_obj, residual, obj});
        if (residual < opts.tol) {
            rep.converged = true;
            break;
        }
    }
    return best;
}

EdgeWeightField refresh_weights(const ImageBuf& x, double sigma) { return build_weights(x, sigma); }

SkeletonResult solve_skeleton(const ImageBuf& b, const Kernel& k, const SkeletonParams& p, const ImageBuf& init) {
    p.validate();
    k.require_normalized();
    if (!init.same_shape(b)) throw InvalidInput("solve_skeleton: init must match the blurry image");

    EdgeWeightField weights = EdgeWeightField::ones(b.width(), b.height());
    const double initial = fixed_weight_objective(b, k, weights, p.lambda, init);

    SkeletonResult result;
    result.skeleton = init;
    for (int outer = 1; outer <= p.reweight_iters; ++outer) {
        if (outer > 1) weights = refresh_weights(result.skeleton, p.sigma);
        PdState state = PdState::start(result.skeleton);
        PdReport rep;
        result.skeleton = pd_inner_solve(b, k, weights, p.lambda, state, {p.pd_iters, p.pd_tol}, &rep);
        for (const PdIterate& row : rep.trace)
            result.iterations.push_back({outer, row.iter, row.objective, row.primal_residual});

        const double obj = fixed_weight_objective(b, k, weights, p.lambda, result.skeleton);
        result.objective_trace.push_back(obj);
        if (!std::isfinite(obj) || (obj > 10.0 * initial && obj > 1e-12))
            throw SolverFailure("solve_skeleton diverged: objective " + std::to_string(obj) + " after round " +
                                std::to_string(outer) + ", initial " + std::to_string(initial));
    }
    return result;
}

}  // namespace rgtv
