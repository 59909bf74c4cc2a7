// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "radlab/image.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <memory>
#include <stdexcept>

namespace radlab {

namespace {

struct FileCloser {
    void operator()(std::FILE *f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::string &msg) { throw std::runtime_error(msg); }

} // namespace

void write_png(const std::string &path, const Image &img, int bit_depth, int white_level) {
    if (img.width <= 0 || img.height <= 0 || (img.channels != 1 && img.channels != 3))
        fail("write_png: image must be non-empty with 1 or 3 channels");
    if (bit_depth != 8 && bit_depth != 16) fail("write_png: bit depth must be 8 or 16");
    const int full = (1 << bit_depth) - 1;
    if (white_level == 0) white_level = full;
    if (white_level < 1 || white_level > full) fail("write_png: bad white level");

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) fail("write_png: cannot open " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) fail("write_png: png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        fail("write_png: png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail("write_png: libpng error writing " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, img.width, img.height, bit_depth,
                 img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const size_t samples_per_row = static_cast<size_t>(img.width) * img.channels;
    if (bit_depth == 8) {
        std::vector<png_byte> row(samples_per_row);
        for (int y = 0; y < img.height; ++y) {
            for (size_t i = 0; i < samples_per_row; ++i) {
                double v = std::clamp(img.data[y * samples_per_row + i], 0.0, 1.0);
                row[i] = static_cast<png_byte>(std::lround(v * white_level));
            }
            png_write_row(png, row.data());
        }
    } else {
        std::vector<png_byte> row(samples_per_row * 2);
        for (int y = 0; y < img.height; ++y) {
            for (size_t i = 0; i < samples_per_row; ++i) {
                double v = std::clamp(img.data[y * samples_per_row + i], 0.0, 1.0);
                auto q = static_cast<std::uint16_t>(std::lround(v * white_level));
                row[2 * i] = static_cast<png_byte>(q >> 8); // PNG is big-endian
                row[2 * i + 1] = static_cast<png_byte>(q & 0xff);
            }
            png_write_row(png, row.data());
        }
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

RawImage read_png_raw(const std::string &path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) fail("read_png: cannot open " + path);

    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8))
        fail("read_png: not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) fail("read_png: png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail("read_png: png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail("read_png: libpng error reading " + path);
    }
    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    // Normalize palette/alpha/low-depth variants to plain gray or RGB.
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    RawImage raw;
    raw.width = static_cast<int>(png_get_image_width(png, info));
    raw.height = static_cast<int>(png_get_image_height(png, info));
    raw.bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    raw.channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
    if (color_type != PNG_COLOR_TYPE_RGB && color_type != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail("read_png: unsupported color type in " + path);
    }

    const size_t samples_per_row = static_cast<size_t>(raw.width) * raw.channels;
    raw.samples.resize(samples_per_row * raw.height);
    std::vector<png_byte> row(png_get_rowbytes(png, info));
    for (int y = 0; y < raw.height; ++y) {
        png_read_row(png, row.data(), nullptr);
        if (raw.bit_depth == 8) {
            for (size_t i = 0; i < samples_per_row; ++i)
                raw.samples[y * samples_per_row + i] = row[i];
        } else {
            for (size_t i = 0; i < samples_per_row; ++i)
                raw.samples[y * samples_per_row + i] =
                    static_cast<std::uint16_t>((row[2 * i] << 8) | row[2 * i + 1]);
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return raw;
}

Image normalize_raw(const RawImage &raw, double white_level) {
    if (white_level <= 0) fail("normalize_raw: white level must be positive");
    Image img(raw.width, raw.height, raw.channels);
    for (size_t i = 0; i < raw.samples.size(); ++i)
        img.data[i] = std::clamp(raw.samples[i] / white_level, 0.0, 1.0);
    return img;
}

void write_pfm(const std::string &path, const Image &img) {
    if (img.channels != 1 && img.channels != 3)
        fail("write_pfm: image must have 1 or 3 channels");
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) fail("write_pfm: cannot open " + path);
    // Negative scale marks little-endian data. PFM rows run bottom-to-top.
    std::fprintf(fp.get(), "%s\n%d %d\n-1.0\n", img.channels == 3 ? "PF" : "Pf", img.width,
                 img.height);
    std::vector<float> row(static_cast<size_t>(img.width) * img.channels);
    for (int y = img.height - 1; y >= 0; --y) {
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c)
                row[static_cast<size_t>(x) * img.channels + c] =
                    static_cast<float>(img.at(x, y, c));
        if (std::fwrite(row.data(), sizeof(float), row.size(), fp.get()) != row.size())
            fail("write_pfm: short write to " + path);
    }
}

Image read_pfm(const std::string &path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) fail("read_pfm: cannot open " + path);
    char magic[3] = {};
    int w = 0, h = 0;
    double scale = 0;
    if (std::fscanf(fp.get(), "%2s %d %d %lf", magic, &w, &h, &scale) != 4)
        fail("read_pfm: malformed header in " + path);
    std::fgetc(fp.get()); // single whitespace after the header
    int channels = 0;
    if (std::strcmp(magic, "PF") == 0) channels = 3;
    else if (std::strcmp(magic, "Pf") == 0) channels = 1;
    else fail("read_pfm: bad magic in " + path);
    if (scale > 0) fail("read_pfm: big-endian PFM not supported: " + path);
    if (w <= 0 || h <= 0) fail("read_pfm: bad dimensions in " + path);

    Image img(w, h, channels);
    std::vector<float> row(static_cast<size_t>(w) * channels);
    for (int y = h - 1; y >= 0; --y) {
        if (std::fread(row.data(), sizeof(float), row.size(), fp.get()) != row.size())
            fail("read_pfm: truncated data in " + path);
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < channels; ++c)
                img.at(x, y, c) = row[static_cast<size_t>(x) * channels + c];
    }
    return img;
}

double psnr(const Image &a, const Image &b) {
    if (!a.same_shape(b)) fail("psnr: image dimensions do not match");
    if (a.data.empty()) fail("psnr: empty images");
    double se = 0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        double d = a.data[i] - b.data[i];
        se += d * d;
    }
    double mse = se / static_cast<double>(a.data.size());
    if (mse == 0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

} // namespace radlab
