#pragma once

#include <optional>
#include <string>

#include "rgtv/image.hpp"
#include "rgtv/kernel.hpp"

namespace rgtv {

struct LoadedImage {
    /// Intensity plane: the image itself when grayscale, the luminance otherwise.
    ImageBuf gray;
    std::optional<ColorImage> color;
    int bit_depth = 8;
};

/// PNG (any color type, 8/16 bit; alpha dropped) or PGM (P2/P5, maxval up to
/// 65535). Samples are scaled to [0,1] by the format's maximum value.
LoadedImage load_image(const std::string& path);

/// 8-bit grayscale. `.pgm` writes binary PGM, anything else PNG. Values are
/// clamped to [0,1] and rounded.
void save_image(const std::string& path, const ImageBuf& img);

/// 8-bit RGB PNG.
void save_color_image(const std::string& path, const ColorImage& img);

Kernel load_kernel(const std::string& path);
void save_kernel(const std::string& path, const Kernel& k);

/// Binary PGM with taps rescaled so the largest maps to 255.
void save_kernel_pgm(const std::string& path, const Kernel& k);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rgtv
