#pragma once

// Weighted 4-neighbor grid graph over an image: Gaussian similarity
// weights, the combinatorial Laplacian, the graph-TV family of regularizers
// and edge-weight histograms.

#include <cstddef>
#include <string>
#include <vector>

#include "rgtv/image.hpp"

namespace rgtv {

/// One weight per undirected edge. Horizontal edge (r,c)-(r,c+1) is stored at
/// h[r*(width-1)+c]; vertical edge (r,c)-(r+1,c) at v[r*width+c].
struct EdgeWeightField {
    int width = 0;
    int height = 0;
    std::vector<double> h;
    std::vector<double> v;

    EdgeWeightField() = default;
    EdgeWeightField(int width, int height, double fill);

    static EdgeWeightField ones(int width, int height) { return {width, height, 1.0}; }

    std::size_t edge_count() const { return h.size() + v.size(); }
    double& h_at(int row, int col) { return h[static_cast<std::size_t>(row) * (width - 1) + col]; }
    double h_at(int row, int col) const { return h[static_cast<std::size_t>(row) * (width - 1) + col]; }
    double& v_at(int row, int col) { return v[static_cast<std::size_t>(row) * width + col]; }
    double v_at(int row, int col) const { return v[static_cast<std::size_t>(row) * width + col]; }

    bool matches(const ImageBuf& img) const { return width == img.width() && height == img.height(); }
    double max_weight() const;
};

/// exp(-(xi-xj)^2 / sigma^2).
double edge_weight(double xi, double xj, double sigma);

EdgeWeightField build_weights(const ImageBuf& img, double sigma);

/// y = L x with L = diag(W1) - W, applied edge by edge.
ImageBuf laplacian_apply(const EdgeWeightField& weights, const ImageBuf& img);

/// Sum over undirected edges of w_ij (x_j - x_i)^2, i.e. x^T L x.
double laplacian_quadratic(const EdgeWeightField& weights, const ImageBuf& img);

/// Fixed-weight graph TV: sum over undirected edges of w_ij |x_j - x_i|.
double gtv_value(const EdgeWeightField& weights, const ImageBuf& img);

/// Graph TV with weights recomputed from the signal itself.
double rgtv_value(const ImageBuf& img, double sigma);

enum class PenaltyKind { GTV, RGTV, GL, RGL };

const char* to_string(PenaltyKind kind);

/// Per-edge penalty as a function of d = |x_i - x_j|.
struct PairPenaltyCurve {
    PenaltyKind kind = PenaltyKind::RGTV;
    double sigma = 0.1;
    double fixed_weight = 0.1;  // only read by GTV and GL

    void validate() const;
};

double pair_penalty(const PairPenaltyCurve& curve, double d);
double pair_penalty_derivative(const PairPenaltyCurve& curve, double d);

struct Region {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;
};

enum class HistogramAxis { Weight, Difference };

struct HistogramOptions {
    double sigma = 0.1;
    int bins = 20;
    double mid_lo = 0.2;
    double mid_hi = 0.8;
    HistogramAxis axis = HistogramAxis::Weight;
};

/// Counts of edge weights (or absolute differences) over [0,1]. Values on the
/// upper boundary land in the last bin.
struct WeightHistogram {
    std::vector<double> bin_edges;  // bins + 1 entries
    std::vector<std::size_t> counts;
    double mid_band_fraction = 0.0;  // always measured on the weight axis
    HistogramAxis axis = HistogramAxis::Weight;

    std::size_t total() const;
};

/// Histogram of every 4-neighbor edge with both endpoints inside `region`.
WeightHistogram weight_histogram(const ImageBuf& img, const Region& region, const HistogramOptions& opts);

/// Convenience overload over the whole image.
WeightHistogram weight_histogram(const ImageBuf& img, const HistogramOptions& opts);

/// CSV with header `bin_lo,bin_hi,count` and a trailing `mid_band_fraction,<value>` line.
std::string histogram_csv(const WeightHistogram& hist);

}  // namespace rgtv
