#include "rgtv/image.hpp"

#include <algorithm>
#include <numeric>

#include "rgtv/errors.hpp"

namespace rgtv {

ImageBuf::ImageBuf(int width, int height, double fill)
    : width_(width), height_(height) {
    if (width < 0 || height < 0) throw InvalidInput("negative image dimensions");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

ImageBuf::ImageBuf(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 0 || height < 0) throw InvalidInput("negative image dimensions");
    if (data_.size() != static_cast<std::size_t>(width) * height)
        throw InvalidInput("image data length does not match width*height");
}

ImageBuf clamp01(ImageBuf img) {
    for (double& v : img.pixels()) v = std::clamp(v, 0.0, 1.0);
    return img;
}

double mean(const ImageBuf& img) {
    if (img.empty()) return 0.0;
    return std::accumulate(img.data().begin(), img.data().end(), 0.0) / static_cast<double>(img.size());
}

ImageBuf pad_replicate(const ImageBuf& img, int left, int top, int out_width, int out_height) {
    if (img.empty()) throw InvalidInput("cannot pad an empty image");
    if (left < 0 || top < 0 || out_width < left + img.width() || out_height < top + img.height())
        throw InvalidInput("padding geometry does not contain the source image");
    ImageBuf out(out_width, out_height);
    for (int r = 0; r < out_height; ++r) {
        const int sr = std::clamp(r - top, 0, img.height() - 1);
        for (int c = 0; c < out_width; ++c) {
            const int sc = std::clamp(c - left, 0, img.width() - 1);
            out(r, c) = img(sr, sc);
        }
    }
    return out;
}

ImageBuf crop(const ImageBuf& img, int x, int y, int width, int height) {
    if (x < 0 || y < 0 || width < 0 || height < 0 || x + width > img.width() || y + height > img.height())
        throw InvalidInput("crop window outside image");
    ImageBuf out(width, height);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) out(r, c) = img(y + r, x + c);
    return out;
}

ImageBuf ColorImage::luminance() const {
    ImageBuf y(r.width(), r.height());
    for (std::size_t i = 0; i < y.size(); ++i)
        y.pixels()[i] = 0.299 * r.pixels()[i] + 0.587 * g.pixels()[i] + 0.114 * b.pixels()[i];
    return y;
}

}  // namespace rgtv
