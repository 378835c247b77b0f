#include "rgtv/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "rgtv/errors.hpp"

namespace rgtv {

Kernel::Kernel(int sz, std::vector<double> t) : size(sz), taps(std::move(t)) {
    if (sz < 1 || sz % 2 == 0) throw InvalidInput("kernel size must be a positive odd integer");
    if (taps.size() != static_cast<std::size_t>(sz) * sz) throw InvalidInput("kernel tap count does not match size");
}

Kernel Kernel::delta(int size) {
    Kernel k(size, std::vector<double>(static_cast<std::size_t>(size) * size, 0.0));
    k(size / 2, size / 2) = 1.0;
    return k;
}

double Kernel::sum() const { return std::accumulate(taps.begin(), taps.end(), 0.0); }

bool Kernel::is_normalized(double tol) const {
    if (size < 1 || size % 2 == 0 || taps.size() != static_cast<std::size_t>(size) * size) return false;
    for (double t : taps)
        if (!std::isfinite(t) || t < 0.0) return false;
    return std::abs(sum() - 1.0) <= tol;
}

void Kernel::require_normalized(double tol) const {
    if (!is_normalized(tol)) throw InvalidInput("kernel must be non-negative and sum to 1");
}

int odd_round(double h) {
    auto n = static_cast<int>(std::lround(h));
    if (n % 2 == 0) ++n;
    return n < 3 ? 3 : n;
}

Kernel parse_kernel_text(const std::string& text) {
    std::istringstream in(text);
    long long h = 0;
    if (!(in >> h)) throw InvalidInput("kernel text: missing size line");
    if (h < 1 || h % 2 == 0 || h > 4095) throw InvalidInput("kernel text: size must be a positive odd integer");
    const auto n = static_cast<std::size_t>(h * h);
    std::vector<double> taps;
    taps.reserve(n);
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0' || !std::isfinite(v))
            throw InvalidInput("kernel text: malformed value '" + tok + "'");
        if (v < 0.0) throw InvalidInput("kernel text: negative tap");
        taps.push_back(v);
    }
    if (taps.size() != n) throw InvalidInput("kernel text: expected " + std::to_string(n) + " taps, found " +
                                             std::to_string(taps.size()));
    const double s = std::accumulate(taps.begin(), taps.end(), 0.0);
    if (std::abs(s - 1.0) > 1e-3) throw InvalidInput("kernel text: taps sum to " + std::to_string(s) + ", not 1");
    for (double& t : taps) t /= s;
    return Kernel(static_cast<int>(h), std::move(taps));
}

std::string format_kernel_text(const Kernel& k) {
    std::string out = std::to_string(k.size) + "\n";
    char buf[32];
    for (int r = 0; r < k.size; ++r) {
        for (int c = 0; c < k.size; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", k(r, c));
            if (c) out += ' ';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace rgtv
