#include "rgtv/synth.hpp"

#include <cmath>
#include <numbers>
#include <regex>

#include "rgtv/conv.hpp"
#include "rgtv/errors.hpp"

namespace rgtv {

namespace {

Kernel normalized(Kernel k) {
    const double s = k.sum();
    for (double& t : k.taps) t /= s;
    return k;
}

Kernel zeros(int size) { return Kernel(size, std::vector<double>(static_cast<std::size_t>(size) * size, 0.0)); }

}  // namespace

Kernel gaussian_kernel(double std_dev) {
    if (!(std_dev > 0.0) || !std::isfinite(std_dev)) throw InvalidInput("gaussian kernel: std must be positive");
    const int rad = static_cast<int>(std::ceil(3.0 * std_dev));
    Kernel k = zeros(2 * rad + 1);
    for (int i = 0; i < k.size; ++i)
        for (int j = 0; j < k.size; ++j) {
            const double d2 = (i - rad) * (i - rad) + (j - rad) * (j - rad);
            k(i, j) = std::exp(-0.5 * d2 / (std_dev * std_dev));
        }
    return normalized(std::move(k));
}

Kernel motion_line_kernel(double length, double angle_deg) {
    if (!(length >= 0.0) || !std::isfinite(length) || !std::isfinite(angle_deg))
        throw InvalidInput("motion-line kernel: bad length or angle");
    if (length <= 1.0) return Kernel::delta(1);
    const double half = 0.5 * (length - 1.0);
    const int rad = static_cast<int>(std::ceil(half - 1e-9));
    Kernel k = zeros(2 * rad + 1);
    const double theta = angle_deg * std::numbers::pi / 180.0;
    const double dx = std::cos(theta);
    const double dy = -std::sin(theta);
    const int samples = static_cast<int>(std::ceil(length)) * 16 + 1;
    for (int s = 0; s < samples; ++s) {
        const double t = -half + 2.0 * half * s / (samples - 1);
        const double col = rad + t * dx;
        const double row = rad + t * dy;
        const int r0 = static_cast<int>(std::floor(row));
        const int c0 = static_cast<int>(std::floor(col));
        const double fr = row - r0;
        const double fc = col - c0;
        auto splat = [&](int r, int c, double w) {
            if (w > 0.0 && r >= 0 && c >= 0 && r < k.size && c < k.size) k(r, c) += w;
        };
        splat(r0, c0, (1 - fr) * (1 - fc));
        splat(r0, c0 + 1, (1 - fr) * fc);
        splat(r0 + 1, c0, fr * (1 - fc));
        splat(r0 + 1, c0 + 1, fr * fc);
    }
    return normalized(std::move(k));
}

Kernel disk_kernel(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("disk kernel: radius must be positive");
    const int rad = static_cast<int>(std::ceil(radius));
    Kernel k = zeros(2 * rad + 1);
    constexpr int ss = 8;
    for (int i = 0; i < k.size; ++i)
        for (int j = 0; j < k.size; ++j) {
            int inside = 0;
            for (int a = 0; a < ss; ++a)
                for (int b = 0; b < ss; ++b) {
                    const double y = i - rad - 0.5 + (a + 0.5) / ss;
                    const double x = j - rad - 0.5 + (b + 0.5) / ss;
                    if (x * x + y * y <= radius * radius) ++inside;
                }
            k(i, j) = static_cast<double>(inside) / (ss * ss);
        }
    return normalized(std::move(k));
}

Kernel parse_builtin_kernel(const std::string& spec) {
    static const std::regex one(R"(^\s*(gaussian|disk)\s*\(\s*([-+0-9.eE]+)\s*\)\s*$)");
    static const std::regex two(R"(^\s*motion-line\s*\(\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\)\s*$)");
    std::smatch m;
    try {
        if (std::regex_match(spec, m, one)) {
            const double v = std::stod(m[2].str());
            return m[1].str() == "gaussian" ? gaussian_kernel(v) : disk_kernel(v);
        }
        if (std::regex_match(spec, m, two)) return motion_line_kernel(std::stod(m[1].str()), std::stod(m[2].str()));
    } catch (const std::logic_error&) {
        throw InvalidInput("builtin kernel: bad number in '" + spec + "'");
    }
    throw InvalidInput("unknown builtin kernel '" + spec + "' (use gaussian(std), motion-line(len,angle), disk(r))");
}

double GaussianNoise::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * kScale;
    const double u2 = static_cast<double>(engine_() >> 11) * kScale;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

ImageBuf synth_blur(const ImageBuf& sharp, const SynthSpec& spec) {
    if (!(spec.noise_sigma >= 0.0)) throw InvalidInput("synth_blur: noise sigma must be non-negative");
    spec.kernel.require_normalized(1e-9);
    ImageBuf out = convolve(sharp, spec.kernel, Boundary::Replicate);
    if (spec.noise_sigma > 0.0) {
        GaussianNoise noise(spec.seed);
        for (double& v : out.pixels()) v += spec.noise_sigma * noise.next();
    }
    return clamp01(std::move(out));
}

}  // namespace rgtv
