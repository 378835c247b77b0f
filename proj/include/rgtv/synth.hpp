#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "rgtv/image.hpp"
#include "rgtv/kernel.hpp"

namespace rgtv {

/// Isotropic Gaussian, size 2*ceil(3*std)+1.
Kernel gaussian_kernel(double std_dev);

/// Uniform segment of the given length through the center at `angle_deg`
/// (counter-clockwise from the +x axis, image rows pointing down), rasterized
/// by bilinear splatting. Size is the smallest odd value >= length.
Kernel motion_line_kernel(double length, double angle_deg);

/// Uniform disk with anti-aliased rim (8x8 supersampling), size 2*ceil(r)+1.
Kernel disk_kernel(double radius);

/// Parses `gaussian(std)`, `motion-line(length,angle)` or `disk(radius)`.
Kernel parse_builtin_kernel(const std::string& spec);

/// Standard normal deviates from std::mt19937_64 seeded with `seed`, via the
/// Box-Muller transform: u1 = ((a >> 11) + 1) * 2^-53, u2 = (b >> 11) * 2^-53,
/// z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 = sqrt(-2 ln u1) sin(2 pi u2).
/// Both values of each pair are used, in that order.
class GaussianNoise {
public:
    explicit GaussianNoise(std::uint64_t seed) : engine_(seed) {}
    double next();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct SynthSpec {
    Kernel kernel;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Replicate-boundary blur plus seeded white Gaussian noise (row-major order),
/// clamped to [0,1].
ImageBuf synth_blur(const ImageBuf& sharp, const SynthSpec& spec);

}  // namespace rgtv
