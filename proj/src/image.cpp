#include "paw/image.hpp"

#include <algorithm>

#include "paw/error.hpp"

namespace paw {

Image::Image(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
    if (width <= 0 || height <= 0) throw PawError(ErrorKind::EmptyImage, "image dimensions must be positive");
    if (channels != 1 && channels != 3) throw PawError(ErrorKind::InvalidArgument, "channels must be 1 or 3");
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image::Image(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    if (width <= 0 || height <= 0) throw PawError(ErrorKind::EmptyImage, "image dimensions must be positive");
    if (channels != 1 && channels != 3) throw PawError(ErrorKind::InvalidArgument, "channels must be 1 or 3");
    if (data_.size() != static_cast<std::size_t>(width) * height * channels)
        throw PawError(ErrorKind::DimensionMismatch, "pixel buffer size does not match dimensions");
}

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw PawError(ErrorKind::InvalidArgument, "mask dimensions must be positive");
    bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BinaryMask::any() const noexcept {
    return std::find(bits_.begin(), bits_.end(), std::uint8_t{1}) != bits_.end();
}

Image mask_to_image(const BinaryMask& mask) {
    Image out(mask.width(), mask.height(), 1);
    for (std::size_t i = 0; i < mask.bits().size(); ++i) out.data()[i] = mask.bits()[i] ? 255 : 0;
    return out;
}

Image to_gray(const Image& image) {
    if (image.channels() == 1) return image;
    Image out(image.width(), image.height(), 1);
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            const int r = image.at(x, y, 0), g = image.at(x, y, 1), b = image.at(x, y, 2);
            out.at(x, y) = static_cast<std::uint8_t>((r * 299 + g * 587 + b * 114 + 500) / 1000);
        }
    }
    return out;
}

}  // namespace paw
