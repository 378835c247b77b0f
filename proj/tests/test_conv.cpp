#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles/oracles.hpp"
#include "rgtv/conv.hpp"
#include "rgtv/errors.hpp"
#include "rgtv/fft.hpp"

using namespace rgtv;

namespace {

double max_abs_diff(const ImageBuf& a, const ImageBuf& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double inner(const ImageBuf& a, const ImageBuf& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * b.data()[i];
    return s;
}

ImageBuf gaussian_blob(int n) {
    ImageBuf img(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const double dr = r - n / 2.0, dc = c - n / 2.0;
            img(r, c) = 0.2 + 0.6 * std::exp(-(dr * dr + dc * dc) / (2.0 * (n / 6.0) * (n / 6.0)));
        }
    return img;
}

}  // namespace

TEST_CASE("next_fast_size") {
    CHECK(next_fast_size(1) == 1);
    CHECK(next_fast_size(11) == 12);
    CHECK(next_fast_size(97) == 98);
    CHECK(next_fast_size(110) == 112);
    CHECK(next_fast_size(128) == 128);
}

TEST_CASE("FFT round trip") {
    for (auto [w, h] : {std::pair{16, 16}, std::pair{15, 7}, std::pair{1, 5}, std::pair{30, 21}}) {
        const ImageBuf x = testing::random_image(w, h, static_cast<std::uint64_t>(w * 100 + h));
        Fft2d fft(w, h);
        CHECK(max_abs_diff(fft.inverse(fft.forward(x)), x) < 1e-10);
    }
}

TEST_CASE("convolve") {
    const ImageBuf x = testing::random_image(8, 8, 3);

    SUBCASE("delta kernel is the identity") {
        CHECK(convolve(x, Kernel::delta(1), Boundary::Replicate) == x);
        CHECK(max_abs_diff(convolve(x, Kernel::delta(1), Boundary::Circular), x) < 1e-15);
        CHECK(convolve(x, Kernel::delta(3), Boundary::Replicate) == x);
    }
    SUBCASE("constant image is preserved with replicate boundary") {
        const ImageBuf c = convolve(ImageBuf(9, 9, 0.37), testing::random_kernel(5, 1), Boundary::Replicate);
        for (double v : c.data()) CHECK(v == doctest::Approx(0.37).epsilon(1e-12));
    }
    SUBCASE("circular path matches the direct spatial loop") {
        const Kernel k = testing::random_kernel(3, 2);
        CHECK(max_abs_diff(convolve(x, k, Boundary::Circular), oracle::direct_circular_convolve(x, k)) < 1e-10);
    }
    SUBCASE("kernel orientation follows the convolution convention") {
        Kernel k(3, std::vector<double>(9, 0.0));
        k(1, 2) = 1.0;  // shift right by one column
        const ImageBuf y = convolve(x, k, Boundary::Circular);
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) CHECK(y(r, c) == doctest::Approx(x(r, (c + 7) % 8)));
    }
    CHECK_THROWS_AS(convolve(ImageBuf(4, 4), Kernel::delta(5), Boundary::Replicate), InvalidInput);
}

TEST_CASE("circular convolution theorem and adjointness") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const ImageBuf x = testing::random_image(16, 16, 40 + seed);
        const ImageBuf y = testing::random_image(16, 16, 50 + seed);
        const Kernel k = testing::random_kernel(5, 60 + seed);

        Fft2d fft(16, 16);
        Spectrum xs = fft.forward(x);
        const Spectrum ks = kernel_spectrum(k, fft);
        for (std::size_t i = 0; i < xs.coeffs.size(); ++i) xs.coeffs[i] *= ks.coeffs[i];
        CHECK(max_abs_diff(fft.inverse(xs), oracle::direct_circular_convolve(x, k)) < 1e-8);

        const double lhs = inner(convolve(x, k, Boundary::Circular), y);
        const double rhs = inner(x, correlate_circular(y, k));
        CHECK(std::abs(lhs - rhs) < 1e-8);
        CHECK(max_abs_diff(correlate_circular(y, k), oracle::direct_circular_correlate(y, k)) < 1e-10);
    }
}

TEST_CASE("image_gradients") {
    SUBCASE("constant") {
        const Gradients g = image_gradients(ImageBuf(5, 4, 0.6));
        for (double v : g.gx.data()) CHECK(v == 0.0);
        for (double v : g.gy.data()) CHECK(v == 0.0);
    }
    SUBCASE("horizontal ramp") {
        const int W = 6;
        ImageBuf ramp(W, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < W; ++c) ramp(r, c) = c / (W - 1.0);
        const Gradients g = image_gradients(ramp);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c + 1 < W; ++c) CHECK(g.gx(r, c) == doctest::Approx(1.0 / (W - 1)));
            CHECK(g.gx(r, W - 1) == 0.0);
        }
        for (double v : g.gy.data()) CHECK(v == 0.0);
    }
    SUBCASE("row sums telescope") {
        const ImageBuf x = testing::random_image(7, 5, 8);
        const Gradients g = image_gradients(x);
        for (int r = 0; r < 5; ++r) {
            double s = 0.0;
            for (int c = 0; c < 7; ++c) s += g.gx(r, c);
            CHECK(s == doctest::Approx(x(r, 6) - x(r, 0)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(image_gradients(ImageBuf(1, 5)), InvalidInput);
}

TEST_CASE("downsample") {
    const ImageBuf c = downsample(ImageBuf(20, 20, 0.42), 2.0);
    CHECK(c.width() == 10);
    for (double v : c.data()) CHECK(v == doctest::Approx(0.42).epsilon(1e-12));

    const ImageBuf d = downsample(ImageBuf(64, 64), 2.0);
    CHECK(d.width() == 32);
    CHECK(d.height() == 32);

    const ImageBuf blob = gaussian_blob(64);
    for (double f : {1.585, 2.0, 3.0}) CHECK(std::abs(mean(downsample(blob, f)) - mean(blob)) < 1e-3);

    CHECK_THROWS_AS(downsample(ImageBuf(4, 4), 2.0), InvalidInput);
    CHECK_THROWS_AS(downsample(ImageBuf(10, 10), 1.0), InvalidInput);
}

TEST_CASE("upsample_kernel") {
    const Kernel k = testing::random_kernel(5, 77);
    const Kernel same = upsample_kernel(k, 5);
    for (std::size_t i = 0; i < k.taps.size(); ++i) CHECK(std::abs(same.taps[i] - k.taps[i]) <= 1e-12);

    const Kernel up = upsample_kernel(Kernel::delta(3), 5);
    CHECK(up.is_normalized());
    double central = 0.0;
    for (int i = 2; i < 4; ++i)
        for (int j = 2; j < 4; ++j) central += up(i, j);
    CHECK(central == doctest::Approx(1.0).epsilon(1e-12));

    // an off-center tap moves out by the size ratio and splits between its neighbors
    Kernel side(3, std::vector<double>(9, 0.0));
    side(1, 2) = 1.0;
    const Kernel moved = upsample_kernel(side, 5);
    CHECK(moved(2, 3) == doctest::Approx(1.0 / 3.0));
    CHECK(moved(2, 4) == doctest::Approx(2.0 / 3.0));

    const Kernel g = upsample_kernel(testing::random_kernel(5, 3), 9);
    double cx = 0.0;
    const Kernel src = testing::random_kernel(5, 3);
    double sx = 0.0;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) cx += g(i, j) * (j - 4);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) sx += src(i, j) * (j - 2);
    CHECK(cx == doctest::Approx(sx * 9.0 / 5.0));

    for (int n : {7, 9, 15}) CHECK(upsample_kernel(testing::random_kernel(5, n), n).is_normalized(1e-12));

    CHECK_THROWS_AS(upsample_kernel(k, 6), InvalidInput);
    CHECK_THROWS_AS(upsample_kernel(k, 3), InvalidInput);
}

TEST_CASE("kernel text format") {
    const Kernel k = testing::random_kernel(3, 4);
    const Kernel back = parse_kernel_text(format_kernel_text(k));
    CHECK(back.size == 3);
    for (std::size_t i = 0; i < 9; ++i) CHECK(back.taps[i] == doctest::Approx(k.taps[i]).epsilon(1e-15));

    CHECK(parse_kernel_text("1\n1.0\n").taps == std::vector<double>{1.0});
    const Kernel near = parse_kernel_text("3\n0 0 0\n0 0.9995 0\n0 0 0\n");
    CHECK(near(1, 1) == 1.0);

    CHECK_THROWS_AS(parse_kernel_text("3\n0 0 0\n0 0.9 0\n0 0 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_kernel_text("3\n0 0 0\n0 1.1 -0.1\n0 0 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_kernel_text("2\n0.25 0.25\n0.25 0.25\n"), InvalidInput);
    CHECK_THROWS_AS(parse_kernel_text("3\n1 0 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_kernel_text("3\n1 0 0 0 0 0 0 0 x\n"), InvalidInput);
    CHECK_THROWS_AS(parse_kernel_text(""), InvalidInput);
}

TEST_CASE("odd_round") {
    CHECK(odd_round(27.0 / 3.0) == 9);
    CHECK(odd_round(27.0 / 9.0) == 3);
    CHECK(odd_round(4.4) == 5);
    CHECK(odd_round(1.0) == 3);
    CHECK(odd_round(6.6) == 7);
}
