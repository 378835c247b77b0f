#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "rgtv/errors.hpp"
#include "rgtv/io.hpp"
#include "rgtv/metrics.hpp"
#include "rgtv/synth.hpp"

using namespace rgtv;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "rgtv_test_io";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("8-bit scaling") {
    const fs::path p = scratch("extremes.pgm");
    {
        std::ofstream out(p, std::ios::binary);
        out << "P5\n2 1\n255\n";
        out.put(static_cast<char>(255));
        out.put(static_cast<char>(0));
    }
    const LoadedImage img = load_image(p.string());
    CHECK(img.gray(0, 0) == 1.0);
    CHECK(img.gray(0, 1) == 0.0);
    CHECK(!img.color);
}

TEST_CASE("16-bit and ASCII PGM") {
    const fs::path p16 = scratch("wide.pgm");
    {
        std::ofstream out(p16, std::ios::binary);
        out << "P5\n# comment\n2 1\n65535\n";
        const unsigned char bytes[] = {0xFF, 0xFF, 0x80, 0x00};
        out.write(reinterpret_cast<const char*>(bytes), 4);
    }
    const LoadedImage a = load_image(p16.string());
    CHECK(a.bit_depth == 16);
    CHECK(a.gray(0, 0) == 1.0);
    CHECK(a.gray(0, 1) == doctest::Approx(32768.0 / 65535.0));

    const fs::path p2 = scratch("ascii.pgm");
    {
        std::ofstream out(p2);
        out << "P2\n3 1\n10\n0 5 10\n";
    }
    const LoadedImage b = load_image(p2.string());
    CHECK(b.gray(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("PNG and PGM round trips stay within 8-bit quantization") {
    const ImageBuf img = testing::random_image(23, 17, 5);
    for (const char* name : {"rt.png", "rt.pgm"}) {
        const fs::path p = scratch(name);
        save_image(p.string(), img);
        const LoadedImage back = load_image(p.string());
        REQUIRE(back.gray.same_shape(img));
        for (std::size_t i = 0; i < img.size(); ++i) CHECK(std::abs(back.gray.data()[i] - img.data()[i]) <= 1.0 / 255.0);
    }
}

TEST_CASE("color PNG yields planes and BT.601 luminance") {
    ColorImage c{ImageBuf(4, 3, 1.0), ImageBuf(4, 3, 0.0), ImageBuf(4, 3, 0.0)};
    const fs::path p = scratch("red.png");
    save_color_image(p.string(), c);
    const LoadedImage back = load_image(p.string());
    REQUIRE(back.color);
    CHECK(back.color->r(1, 1) == 1.0);
    CHECK(back.gray(1, 1) == doctest::Approx(0.299));
}

TEST_CASE("I/O errors carry the path") {
    CHECK_THROWS_AS(load_image("/nonexistent/file.png"), IoError);
    const fs::path junk = scratch("junk.png");
    {
        std::ofstream out(junk);
        out << "definitely not an image";
    }
    CHECK_THROWS_AS(load_image(junk.string()), IoError);
    const fs::path bad_png = scratch("truncated.png");
    {
        std::ofstream out(bad_png, std::ios::binary);
        const unsigned char sig[] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A, 0, 0, 0};
        out.write(reinterpret_cast<const char*>(sig), sizeof sig);
    }
    try {
        load_image(bad_png.string());
        FAIL("expected an IoError");
    } catch (const IoError& e) {
        CHECK(e.path() == bad_png.string());
    }
}

TEST_CASE("kernel files") {
    const Kernel k = motion_line_kernel(5, 20);
    const fs::path p = scratch("k.txt");
    save_kernel(p.string(), k);
    const Kernel back = load_kernel(p.string());
    CHECK(back.size == k.size);
    for (std::size_t i = 0; i < k.taps.size(); ++i) CHECK(back.taps[i] == doctest::Approx(k.taps[i]).epsilon(1e-15));

    const fs::path vis = scratch("k.pgm");
    save_kernel_pgm(vis.string(), k);
    const LoadedImage v = load_image(vis.string());
    CHECK(*std::max_element(v.gray.data().begin(), v.gray.data().end()) == 1.0);
}

TEST_CASE("builtin kernels are normalized") {
    for (const Kernel& k : {gaussian_kernel(1.5), motion_line_kernel(7, 30), motion_line_kernel(7, 0),
                            motion_line_kernel(9.5, 120), disk_kernel(2.5), disk_kernel(0.4)}) {
        CHECK(k.is_normalized(1e-12));
        CHECK(k.size % 2 == 1);
    }
    CHECK(motion_line_kernel(7, 30).size == 7);
    CHECK(gaussian_kernel(1.5).size == 11);
    CHECK(disk_kernel(2.5).size == 7);

    const Kernel horiz = motion_line_kernel(5, 0);
    double row_mass = 0.0;
    for (int c = 0; c < 5; ++c) {
        row_mass += horiz(2, c);
        CHECK(horiz(2, c) == doctest::Approx(horiz(2, 4 - c)));
    }
    CHECK(row_mass == doctest::Approx(1.0));

    CHECK(parse_builtin_kernel("gaussian(1.5)") == gaussian_kernel(1.5));
    CHECK(parse_builtin_kernel("motion-line(7, 30)") == motion_line_kernel(7, 30));
    CHECK(parse_builtin_kernel("disk(2)") == disk_kernel(2));
    CHECK_THROWS_AS(parse_builtin_kernel("box(3)"), InvalidInput);
    CHECK_THROWS_AS(parse_builtin_kernel("gaussian(-1)"), InvalidInput);
}

TEST_CASE("synth_blur") {
    const ImageBuf x = testing::random_image(20, 20, 3);
    CHECK(synth_blur(x, {Kernel::delta(1), 0.0, 1}) == x);

    const SynthSpec spec{motion_line_kernel(5, 45), 0.02, 99};
    CHECK(synth_blur(x, spec) == synth_blur(x, spec));
    CHECK(synth_blur(x, spec) != synth_blur(x, {spec.kernel, 0.02, 100}));

    const ImageBuf flat = synth_blur(ImageBuf(64, 64, 0.5), {Kernel::delta(1), 0.01, 2024});
    const double m = mean(flat);
    double var = 0.0;
    for (double v : flat.data()) var += (v - m) * (v - m);
    const double sd = std::sqrt(var / (flat.size() - 1));
    CHECK(std::abs(sd - 0.01) < 0.001);

    for (double v : synth_blur(x, {Kernel::delta(1), 0.5, 7}).data()) CHECK((v >= 0.0 && v <= 1.0));
    CHECK_THROWS_AS(synth_blur(x, {Kernel::delta(1), -0.1, 7}), InvalidInput);
}

TEST_CASE("GaussianNoise reproduces mt19937_64 + Box-Muller") {
    GaussianNoise g(5);
    std::mt19937_64 e(5);
    const double u1 = static_cast<double>((e() >> 11) + 1) / 9007199254740992.0;
    const double u2 = static_cast<double>(e() >> 11) / 9007199254740992.0;
    const double r = std::sqrt(-2.0 * std::log(u1));
    CHECK(g.next() == r * std::cos(2.0 * M_PI * u2));
    CHECK(g.next() == r * std::sin(2.0 * M_PI * u2));
}

TEST_CASE("psnr") {
    const ImageBuf a = testing::random_image(10, 10, 1);
    CHECK(std::isinf(psnr(a, a)));
    ImageBuf b = a;
    for (double& v : b.pixels()) v += 0.1;
    CHECK(psnr(a, b) == doctest::Approx(20.0).epsilon(1e-9));
    const ImageBuf c = testing::random_image(10, 10, 2);
    CHECK(psnr(a, c) == psnr(c, a));
    CHECK_THROWS_AS(psnr(a, ImageBuf(9, 10)), InvalidInput);
}

TEST_CASE("aligned_ncc") {
    const Kernel k = motion_line_kernel(7, 30);
    CHECK(aligned_ncc(k, k) == doctest::Approx(1.0));
    Kernel shifted(9, std::vector<double>(81, 0.0));
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) shifted(i + 2, j) = k(i, j);
    CHECK(aligned_ncc(shifted, k) == doctest::Approx(1.0));
    CHECK(aligned_ncc(Kernel::delta(7), k) < 0.5);
}
