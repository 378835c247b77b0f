#include "rgtv/metrics.hpp"

#include <cmath>
#include <limits>

#include "rgtv/errors.hpp"

namespace rgtv {

double psnr(const ImageBuf& a, const ImageBuf& b) {
    if (!a.same_shape(b) || a.empty()) throw InvalidInput("psnr: images must have identical, non-zero dimensions");
    double se = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        se += d * d;
    }
    if (se == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(static_cast<double>(a.size()) / se);
}

double aligned_ncc(const Kernel& a, const Kernel& b) {
    double na = 0.0, nb = 0.0;
    for (double t : a.taps) na += t * t;
    for (double t : b.taps) nb += t * t;
    if (na == 0.0 || nb == 0.0) return 0.0;
    const int ca = a.radius();
    const int cb = b.radius();
    const int reach = ca + cb;
    double best = -1.0;
    for (int dr = -reach; dr <= reach; ++dr)
        for (int dc = -reach; dc <= reach; ++dc) {
            double s = 0.0;
            for (int i = 0; i < a.size; ++i) {
                const int bi = i - ca + cb + dr;
                if (bi < 0 || bi >= b.size) continue;
                for (int j = 0; j < a.size; ++j) {
                    const int bj = j - ca + cb + dc;
                    if (bj >= 0 && bj < b.size) s += a(i, j) * b(bi, bj);
                }
            }
            best = std::max(best, s);
        }
    return best / std::sqrt(na * nb);
}

}  // namespace rgtv
