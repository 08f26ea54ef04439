#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace paw {

// 8-bit raster, row-major, interleaved channels (1 = gray, 3 = RGB).
// Pixel (x, y) covers the unit square with center (x + 0.5, y + 0.5).
class Image {
public:
    Image() = default;
    Image(int width, int height, int channels, std::uint8_t fill = 0);
    Image(int width, int height, int channels, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
    std::uint8_t at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

    const std::vector<std::uint8_t>& data() const noexcept { return data_; }
    std::vector<std::uint8_t>& data() noexcept { return data_; }

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t index(int x, int y, int c) const noexcept {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    std::vector<std::uint8_t> data_;
};

// Rectangular bit grid. Bits are stored one byte each (0 or 1).
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height, bool fill = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    bool get(int x, int y) const { return bits_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    void set(int x, int y, bool v = true) { bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0; }

    // Out-of-frame reads are false.
    bool get_or_false(int x, int y) const {
        return x >= 0 && y >= 0 && x < width_ && y < height_ && get(x, y);
    }

    std::size_t count() const noexcept;
    bool any() const noexcept;

    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

// 0/255 gray rendering of a mask.
Image mask_to_image(const BinaryMask& mask);

// Integer luma for RGB; gray passes through.
Image to_gray(const Image& image);

}  // namespace paw
