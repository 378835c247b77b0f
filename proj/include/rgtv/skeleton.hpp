#pragma once

// Skeleton-image estimation: deconvolution regularized by reweighted graph
// TV, solved by alternating a weight refresh with a primal-dual solve of the
// fixed-weight (convex) problem
//
//     min_x  1/2 ||k (*) x - b||^2 + lambda * sum_e w_e |x_j - x_i|
//
// All convolutions here are circular on the domain of `b`; callers that want
// a different boundary model pad first.

#include <vector>

#include "rgtv/graph.hpp"
#include "rgtv/image.hpp"
#include "rgtv/kernel.hpp"

namespace rgtv {

/// Squared operator-norm bound of the unweighted 4-neighbor difference operator.
inline constexpr double kDiffOpNormSq = 8.0;

struct SkeletonParams {
    double lambda = 0.01;
    double sigma = 0.1;
    int reweight_iters = 3;
    int pd_iters = 100;
    double pd_tol = 1e-4;

    void validate() const;
};

/// Iterates of the primal-dual loop. The dual holds one value per graph edge,
/// stored in the same two-plane layout as edge weights.
struct PdState {
    ImageBuf primal;
    ImageBuf extrapolated;
    EdgeWeightField dual;
    double tau = 0.0;
    double sigma_dual = 0.0;

    /// Zero dual, primal = extrapolated = init, tau = sigma_dual = 0.99/sqrt(8).
    static PdState start(const ImageBuf& init);
    static PdState start(const ImageBuf& init, double tau, double sigma_dual);

    /// Throws ConfigError unless tau * sigma_dual * 8 <= 1.
    void check_steps() const;
};

struct PdOptions {
    int max_iters = 100;
    double tol = 1e-4;
};

struct PdIterate {
    int iter = 0;
    double objective = 0.0;  // best so far, i.e. the objective of what would be returned
    double primal_residual = 0.0;
    double iterate_objective = 0.0;  // raw objective of this iterate
};

struct PdReport {
    int iterations = 0;
    bool converged = false;
    /// max_e (|y_e| - lambda * w_e) over all iterations; <= 0 when feasible.
    double max_dual_violation = 0.0;
    std::vector<PdIterate> trace;
};

/// Fixed-weight objective with circular data term.
double fixed_weight_objective(const ImageBuf& b, const Kernel& k, const EdgeWeightField& weights, double lambda,
                              const ImageBuf& x);

/// Minimum-norm least-squares deconvolution of b by k on the torus.
ImageBuf least_squares_deconvolve(const ImageBuf& b, const Kernel& k);

/// Chambolle-Pock iterations on the fixed-weight problem, continuing from
/// `state`. Stops when ||x_{n+1}-x_n|| / ||x_n|| < tol or after max_iters.
/// If every weight is zero the closed-form least-squares solution is returned.
ImageBuf pd_inner_solve(const ImageBuf& b, const Kernel& k, const EdgeWeightField& weights, double lambda,
                        PdState& state, const PdOptions& opts, PdReport* report = nullptr);

/// W(x); same contract as build_weights.
EdgeWeightField refresh_weights(const ImageBuf& x, double sigma);

struct SkeletonTraceRow {
    int outer = 0;
    int inner = 0;
    double objective = 0.0;
    double primal_residual = 0.0;
};

struct SkeletonResult {
    ImageBuf skeleton;
    /// Fixed-weight objective after each outer round, using that round's weights.
    std::vector<double> objective_trace;
    std::vector<SkeletonTraceRow> iterations;
};

/// Starts from all-one weights, then alternates primal-dual solves with
/// W <- W(x). Throws SolverFailure if the objective exceeds ten times its
/// initial value.
SkeletonResult solve_skeleton(const ImageBuf& b, const Kernel& k, const SkeletonParams& p, const ImageBuf& init);

}  // namespace rgtv
