#include "rgtv/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rgtv/errors.hpp"

namespace rgtv {

namespace {

void check_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidInput("sigma must be positive and finite");
}

void check_match(const EdgeWeightField& weights, const ImageBuf& img) {
    if (!weights.matches(img)) throw InvalidInput("edge-weight field does not match image dimensions");
}

// Visits every undirected edge once: horizontal plane first, then vertical,
// both in row-major order. All reductions share this order.
template <typename Fn>
void for_each_edge(const EdgeWeightField& w, const ImageBuf& img, Fn&& fn) {
    const int W = img.width();
    const int H = img.height();
    for (int r = 0; r < H; ++r)
        for (int c = 0; c + 1 < W; ++c) fn(w.h_at(r, c), img(r, c), img(r, c + 1));
    for (int r = 0; r + 1 < H; ++r)
        for (int c = 0; c < W; ++c) fn(w.v_at(r, c), img(r, c), img(r + 1, c));
}

}  // namespace

EdgeWeightField::EdgeWeightField(int w, int hgt, double fill) : width(w), height(hgt) {
    if (w < 0 || hgt < 0) throw InvalidInput("negative graph dimensions");
    h.assign(static_cast<std::size_t>(std::max(w - 1, 0)) * hgt, fill);
    v.assign(static_cast<std::size_t>(w) * std::max(hgt - 1, 0), fill);
}

double EdgeWeightField::max_weight() const {
    double m = 0.0;
    for (double x : h) m = std::max(m, x);
    for (double x : v) m = std::max(m, x);
    return m;
}

double edge_weight(double xi, double xj, double sigma) {
    check_sigma(sigma);
    if (!std::isfinite(xi) || !std::isfinite(xj)) throw InvalidInput("edge_weight: non-finite intensity");
    const double d = xi - xj;
    return std::exp(-(d * d) / (sigma * sigma));
}

EdgeWeightField build_weights(const ImageBuf& img, double sigma) {
    check_sigma(sigma);
    if (img.empty()) throw InvalidInput("build_weights: empty image");
    EdgeWeightField w(img.width(), img.height(), 0.0);
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c + 1 < img.width(); ++c) w.h_at(r, c) = edge_weight(img(r, c), img(r, c + 1), sigma);
    for (int r = 0; r + 1 < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) w.v_at(r, c) = edge_weight(img(r, c), img(r + 1, c), sigma);
    return w;
}

ImageBuf laplacian_apply(const EdgeWeightField& weights, const ImageBuf& img) {
    check_match(weights, img);
    ImageBuf y(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c + 1 < img.width(); ++c) {
            const double flow = weights.h_at(r, c) * (img(r, c) - img(r, c + 1));
            y(r, c) += flow;
            y(r, c + 1) -= flow;
        }
    }
    for (int r = 0; r + 1 < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const double flow = weights.v_at(r, c) * (img(r, c) - img(r + 1, c));
            y(r, c) += flow;
            y(r + 1, c) -= flow;
        }
    }
    return y;
}

double laplacian_quadratic(const EdgeWeightField& weights, const ImageBuf& img) {
    check_match(weights, img);
    double s = 0.0;
    for_each_edge(weights, img, [&](double w, double a, double b) { s += w * (b - a) * (b - a); });
    return s;
}

double gtv_value(const EdgeWeightField& weights, const ImageBuf& img) {
    check_match(weights, img);
    double s = 0.0;
    for_each_edge(weights, img, [&](double w, double a, double b) { s += w * std::abs(b - a); });
    return s;
}

double rgtv_value(const ImageBuf& img, double sigma) {
    return gtv_value(build_weights(img, sigma), img);
}

const char* to_string(PenaltyKind kind) {
    switch (kind) {
        case PenaltyKind::GTV: return "GTV";
        case PenaltyKind::RGTV: return "RGTV";
        case PenaltyKind::GL: return "GL";
        case PenaltyKind::RGL: return "RGL";
    }
    return "?";
}

void PairPenaltyCurve::validate() const {
    check_sigma(sigma);
    if (!(fixed_weight >= 0.0 && fixed_weight <= 1.0)) throw InvalidInput("fixed_weight must lie in [0,1]");
}

double pair_penalty(const PairPenaltyCurve& curve, double d) {
    curve.validate();
    if (!(d >= 0.0)) throw InvalidInput("pair_penalty: d must be a non-negative difference");
    const double g = std::exp(-(d * d) / (curve.sigma * curve.sigma));
    switch (curve.kind) {
        case PenaltyKind::GTV: return curve.fixed_weight * d;
        case PenaltyKind::RGTV: return g * d;
        case PenaltyKind::GL: return curve.fixed_weight * d * d;
        case PenaltyKind::RGL: return g * d * d;
    }
    return 0.0;
}

double pair_penalty_derivative(const PairPenaltyCurve& curve, double d) {
    curve.validate();
    if (!(d >= 0.0)) throw InvalidInput("pair_penalty_derivative: d must be a non-negative difference");
    const double s2 = curve.sigma * curve.sigma;
    const double g = std::exp(-(d * d) / s2);
    switch (curve.kind) {
        case PenaltyKind::GTV: return curve.fixed_weight;
        case PenaltyKind::RGTV: return g * (1.0 - 2.0 * d * d / s2);
        case PenaltyKind::GL: return 2.0 * curve.fixed_weight * d;
        case PenaltyKind::RGL: return g * 2.0 * d * (1.0 - d * d / s2);
    }
    return 0.0;
}

std::size_t WeightHistogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

WeightHistogram weight_histogram(const ImageBuf& img, const Region& region, const HistogramOptions& opts) {
    check_sigma(opts.sigma);
    if (opts.bins < 2) throw InvalidInput("weight_histogram: need at least 2 bins");
    if (!(opts.mid_lo <= opts.mid_hi)) throw InvalidInput("weight_histogram: mid band lower bound exceeds upper");
    if (region.width <= 0 || region.height <= 0) throw InvalidInput("weight_histogram: empty region");
    if (region.x < 0 || region.y < 0 || region.x + region.width > img.width() ||
        region.y + region.height > img.height())
        throw InvalidInput("weight_histogram: region outside image");

    const ImageBuf patch = crop(img, region.x, region.y, region.width, region.height);
    if (patch.size() < 2) throw InvalidInput("weight_histogram: region contains no edges");

    WeightHistogram hist;
    hist.axis = opts.axis;
    hist.counts.assign(static_cast<std::size_t>(opts.bins), 0);
    for (int i = 0; i <= opts.bins; ++i) hist.bin_edges.push_back(static_cast<double>(i) / opts.bins);

    std::size_t mid = 0;
    std::size_t edges = 0;
    const EdgeWeightField w = build_weights(patch, opts.sigma);
    for_each_edge(w, patch, [&](double weight, double a, double b) {
        const double value = opts.axis == HistogramAxis::Weight ? weight : std::min(std::abs(a - b), 1.0);
        auto bin = static_cast<int>(value * opts.bins);
        bin = std::clamp(bin, 0, opts.bins - 1);
        ++hist.counts[static_cast<std::size_t>(bin)];
        if (weight >= opts.mid_lo && weight <= opts.mid_hi) ++mid;
        ++edges;
    });
    hist.mid_band_fraction = static_cast<double>(mid) / static_cast<double>(edges);
    return hist;
}

WeightHistogram weight_histogram(const ImageBuf& img, const HistogramOptions& opts) {
    return weight_histogram(img, Region{0, 0, img.width(), img.height()}, opts);
}

std::string histogram_csv(const WeightHistogram& hist) {
    std::ostringstream os;
    os.precision(17);
    os << "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < hist.counts.size(); ++i)
        os << hist.bin_edges[i] << ',' << hist.bin_edges[i + 1] << ',' << hist.counts[i] << '\n';
    os << "mid_band_fraction," << hist.mid_band_fraction << '\n';
    return os.str();
}

}  // namespace rgtv
