#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rgtv {

/// Single-channel raster, row-major. Intensities are nominally in [0,1];
/// solver iterates may leave that range, persisted images are clamped.
class ImageBuf {
public:
    ImageBuf() = default;
    ImageBuf(int width, int height, double fill = 0.0);
    ImageBuf(int width, int height, std::vector<double> data);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(int row, int col) { return data_[static_cast<std::size_t>(row) * width_ + col]; }
    double operator()(int row, int col) const { return data_[static_cast<std::size_t>(row) * width_ + col]; }

    std::span<double> pixels() { return data_; }
    std::span<const double> pixels() const { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const ImageBuf& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    bool operator==(const ImageBuf&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Clamp every sample to [0,1].
ImageBuf clamp01(ImageBuf img);

double mean(const ImageBuf& img);

/// Replicate-pad by `left`/`top` and enough on the right/bottom to reach
/// `out_width` x `out_height`.
ImageBuf pad_replicate(const ImageBuf& img, int left, int top, int out_width, int out_height);

ImageBuf crop(const ImageBuf& img, int x, int y, int width, int height);

/// Three-plane color image; `luminance()` uses ITU-R BT.601 weights.
struct ColorImage {
    ImageBuf r, g, b;

    int width() const { return r.width(); }
    int height() const { return r.height(); }
    ImageBuf luminance() const;
};

}  // namespace rgtv
