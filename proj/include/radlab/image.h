// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#ifndef RADLAB_IMAGE_H
#define RADLAB_IMAGE_H

#include <cstdint>
#include <string>
#include <vector>

namespace radlab {

// Row-major interleaved image, values nominally in [0, 1]. channels is 1
// (grayscale) or 3 (RGB). All internal math runs in double; bit depth only
// matters at the PNG boundary.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, int c, double fill = 0.0)
        : width(w), height(h), channels(c),
          data(static_cast<size_t>(w) * h * c, fill) {}

    double &at(int x, int y, int c) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    double at(int x, int y, int c) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
    bool same_shape(const Image &o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

// Integer PNG samples before white-level normalization.
struct RawImage {
    int width = 0;
    int height = 0;
    int channels = 0;
    int bit_depth = 0; // 8 or 16
    std::vector<std::uint16_t> samples;
};

// PNG I/O. Writers clamp to [0, 1] and quantize with rounding; the 16-bit
// writer accepts a white level (1023 emulates 10-bit sources in a 16-bit
// container). Readers return raw integer samples; divide by the white level
// to get back to [0, 1].
void write_png(const std::string &path, const Image &img, int bit_depth = 16,
               int white_level = 0 /* 0 = full scale for the depth */);
RawImage read_png_raw(const std::string &path);
Image normalize_raw(const RawImage &raw, double white_level);

// Portable float map (PF color / Pf grayscale, little-endian).
void write_pfm(const std::string &path, const Image &img);
Image read_pfm(const std::string &path);

// 10*log10(1 / MSE) over all pixels and channels of [0,1] images. Identical
// images return +infinity. Throws on shape mismatch.
double psnr(const Image &a, const Image &b);

} // namespace radlab

#endif
