#pragma once

// Synthetic masks and images for tests and fixtures.

#include <cstdint>
#include <random>
#include <vector>

#include "paw/image.hpp"
#include "paw/point.hpp"

namespace paw::synth {

// Portable uniform draws (std distributions differ between standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }
    double normal();

private:
    std::mt19937_64 engine_;
};

// Pixel (x, y) is set when its center lies inside the rotated ellipse.
BinaryMask ellipse_mask(int size, Point2 center, double semi_x, double semi_y, double angle_rad);

// Star-shaped blob r(t) = base * (1 + sum of low harmonics) around `center`.
struct Blob {
    Point2 center;
    double base = 30.0;
    std::vector<double> cos_terms, sin_terms;  // harmonics 2, 3, ...
    double rotation = 0.0;

    double radius(double theta) const;
};
BinaryMask blob_mask(int size, const Blob& blob);
Blob random_blob(Rng& rng, int size);

// 500-mask geometry suite: alternating ellipses and smoothed random blobs.
std::vector<BinaryMask> suite_masks(int count, std::uint64_t seed, int size = 112);

Image checkerboard(int size, int cell, std::uint8_t dark = 32, std::uint8_t light = 224);
Image radial_gradient(int size, Point2 center);
Image ramp_x(int size);

// Ear-like subject: outer helix outline plus inner ridges, rendered as a gray
// image and matching region mask, rotated by `angle_rad` about the frame center.
struct EarSample {
    Image image;
    BinaryMask mask;
};
EarSample ear_sample(int subject, double angle_rad, int size = 112);

}  // namespace paw::synth
