#include "rgtv/io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "rgtv/errors.hpp"

namespace rgtv {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw IoError(path, std::string("cannot open (") + mode + ")");
    return f;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                      [](char a, char b) { return std::tolower(a) == std::tolower(b); });
}

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// --- PGM ------------------------------------------------------------------

std::string next_token(std::istream& in) {
    std::string tok;
    char ch;
    while (in.get(ch)) {
        if (ch == '#') {
            std::string discard;
            std::getline(in, discard);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!tok.empty()) break;
            continue;
        }
        tok += ch;
    }
    return tok;
}

LoadedImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open");
    const std::string magic = next_token(in);
    if (magic != "P5" && magic != "P2") throw IoError(path, "not a PGM file");
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(next_token(in));
        h = std::stoi(next_token(in));
        maxval = std::stoi(next_token(in));
    } catch (const std::exception&) {
        throw IoError(path, "malformed PGM header");
    }
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) throw IoError(path, "unsupported PGM geometry or maxval");

    ImageBuf img(w, h);
    const double scale = 1.0 / maxval;
    if (magic == "P5") {
        const int bpp = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h * bpp);
        if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
            throw IoError(path, "truncated PGM data");
        for (std::size_t i = 0; i < img.size(); ++i) {
            const unsigned v = bpp == 2 ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
            img.pixels()[i] = std::min(v * scale, 1.0);
        }
    } else {
        for (std::size_t i = 0; i < img.size(); ++i) {
            const std::string tok = next_token(in);
            if (tok.empty()) throw IoError(path, "truncated PGM data");
            img.pixels()[i] = std::min(std::stoi(tok) * scale, 1.0);
        }
    }
    return {img, std::nullopt, maxval > 255 ? 16 : 8};
}

void save_pgm(const std::string& path, const ImageBuf& img) {
    FilePtr f = open_file(path, "wb");
    std::fprintf(f.get(), "P5\n%d %d\n255\n", img.width(), img.height());
    std::vector<std::uint8_t> bytes(img.size());
    std::transform(img.data().begin(), img.data().end(), bytes.begin(), to_byte);
    if (std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size()) throw IoError(path, "write failed");
}

// --- PNG ------------------------------------------------------------------

LoadedImage load_png(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) throw IoError(path, "not a PNG file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path, "libpng initialization failed");
    }
    std::vector<png_byte> buffer;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path, "corrupt PNG data");
    }
    png_init_io(png, f.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_byte color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const auto w = static_cast<int>(png_get_image_width(png, info));
    const auto h = static_cast<int>(png_get_image_height(png, info));
    const int depth = png_get_bit_depth(png, info);
    const int channels = png_get_channels(png, info);
    const std::size_t stride = png_get_rowbytes(png, info);
    buffer.resize(stride * h);
    rows.resize(h);
    for (int r = 0; r < h; ++r) rows[r] = buffer.data() + stride * r;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    const double scale = depth == 16 ? 1.0 / 65535.0 : 1.0 / 255.0;
    auto sample = [&](int r, int c, int ch) {
        const png_byte* p = rows[r] + (static_cast<std::size_t>(c) * channels + ch) * (depth == 16 ? 2 : 1);
        return (depth == 16 ? (p[0] << 8 | p[1]) : p[0]) * scale;
    };

    LoadedImage out;
    out.bit_depth = depth;
    if (channels == 1) {
        out.gray = ImageBuf(w, h);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) out.gray(r, c) = sample(r, c, 0);
        return out;
    }
    ColorImage color{ImageBuf(w, h), ImageBuf(w, h), ImageBuf(w, h)};
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            color.r(r, c) = sample(r, c, 0);
            color.g(r, c) = sample(r, c, 1);
            color.b(r, c) = sample(r, c, 2);
        }
    out.gray = color.luminance();
    out.color = std::move(color);
    return out;
}

void write_png(const std::string& path, int w, int h, int channels, const std::vector<std::uint8_t>& bytes) {
    FilePtr f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path, "libpng initialization failed");
    }
    std::vector<png_const_bytep> rows(h);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path, "PNG encoding failed");
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, w, h, 8, channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int r = 0; r < h; ++r) rows[r] = bytes.data() + static_cast<std::size_t>(r) * w * channels;
    png_write_image(png, const_cast<png_bytepp>(rows.data()));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

LoadedImage load_image(const std::string& path) {
    std::FILE* probe = std::fopen(path.c_str(), "rb");
    if (!probe) throw IoError(path, "cannot open");
    unsigned char head[2] = {0, 0};
    const std::size_t n = std::fread(head, 1, 2, probe);
    std::fclose(probe);
    if (n == 2 && head[0] == 'P' && (head[1] == '5' || head[1] == '2')) return load_pgm(path);
    if (n == 2 && head[0] == 0x89 && head[1] == 'P') return load_png(path);
    throw IoError(path, "unsupported image format (expected PNG or PGM)");
}

void save_image(const std::string& path, const ImageBuf& img) {
    if (img.empty()) throw InvalidInput("save_image: empty image");
    if (has_suffix(path, ".pgm")) return save_pgm(path, img);
    std::vector<std::uint8_t> bytes(img.size());
    std::transform(img.data().begin(), img.data().end(), bytes.begin(), to_byte);
    write_png(path, img.width(), img.height(), 1, bytes);
}

void save_color_image(const std::string& path, const ColorImage& img) {
    std::vector<std::uint8_t> bytes(img.r.size() * 3);
    for (std::size_t i = 0; i < img.r.size(); ++i) {
        bytes[3 * i] = to_byte(img.r.data()[i]);
        bytes[3 * i + 1] = to_byte(img.g.data()[i]);
        bytes[3 * i + 2] = to_byte(img.b.data()[i]);
    }
    write_png(path, img.width(), img.height(), 3, bytes);
}

Kernel load_kernel(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return parse_kernel_text(text);
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

void save_kernel(const std::string& path, const Kernel& k) { write_text_file(path, format_kernel_text(k)); }

void save_kernel_pgm(const std::string& path, const Kernel& k) {
    const double peak = *std::max_element(k.taps.begin(), k.taps.end());
    ImageBuf img(k.size, k.size);
    for (std::size_t i = 0; i < k.taps.size(); ++i) img.pixels()[i] = peak > 0 ? k.taps[i] / peak : 0.0;
    save_pgm(path, img);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    out << text;
    if (!out) throw IoError(path, "write failed");
}

}  // namespace rgtv
