#pragma once

// Deterministic synthetic images shared by the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <random>

#include "rgtv/image.hpp"
#include "rgtv/kernel.hpp"

namespace rgtv::testing {

/// Piecewise-constant scene: background, two rectangles, a disk and a
/// triangle at distinct gray levels.
inline ImageBuf pws_scene(int size = 96) {
    ImageBuf img(size, size, 0.2);
    const double s = size / 96.0;
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const double y = r / s;
            const double x = c / s;
            if (x >= 10 && x < 44 && y >= 12 && y < 40) img(r, c) = 0.85;
            if (x >= 54 && x < 86 && y >= 8 && y < 30) img(r, c) = 0.55;
            if ((x - 30) * (x - 30) + (y - 68) * (y - 68) < 16 * 16) img(r, c) = 0.95;
            if (y >= 50 && y < 88 && x >= 56 && x - 56 < (y - 50) * 0.9) img(r, c) = 0.05;
            if (x >= 20 && x < 40 && y >= 22 && y < 30) img(r, c) = 0.4;
        }
    }
    return img;
}

/// Left half `lo`, right half `hi`.
inline ImageBuf step_patch(int width, int height, double lo, double hi) {
    ImageBuf img(width, height, lo);
    for (int r = 0; r < height; ++r)
        for (int c = width / 2; c < width; ++c) img(r, c) = hi;
    return img;
}

inline ImageBuf random_image(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ImageBuf img(width, height);
    for (double& v : img.pixels()) v = u(rng);
    return img;
}

inline Kernel random_kernel(int size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Kernel k(size, std::vector<double>(static_cast<std::size_t>(size) * size));
    double s = 0.0;
    for (double& t : k.taps) s += (t = u(rng));
    for (double& t : k.taps) t /= s;
    return k;
}

}  // namespace rgtv::testing
