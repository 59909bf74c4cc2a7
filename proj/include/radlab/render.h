// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#ifndef RADLAB_RENDER_H
#define RADLAB_RENDER_H

#include <functional>
#include <span>
#include <vector>

#include "radlab/colorspace.h"
#include "radlab/image.h"
#include "radlab/model.h"
#include "radlab/rng.h"
#include "radlab/vec.h"

namespace radlab {

// Pinhole camera; pose maps camera coordinates (x right, y up, looking down
// -z) into world coordinates.
struct Camera {
    int width = 0;
    int height = 0;
    double focal = 0; // pixels
    Pose pose;
    double near = 0.1;
    double far = 10.0;
};

void validate_camera(const Camera &cam);

struct Ray {
    Vec3 origin;
    Vec3 direction; // unit length
    double near = 0;
    double far = 0;
};

struct RenderConfig {
    int samples_per_ray = 48;
    bool stratified = true;
    ColorSpace representation_space = ColorSpace::linear();
    bool white_background = true;
    std::uint64_t seed = 0; // base for the per-pixel sample streams
};

// Ray through the center of pixel (i, j); i is the column, j the row
// (top-left origin). Throws std::out_of_range outside the image.
Ray camera_rays(const Camera &cam, int i, int j);

struct RaySample {
    double t = 0;     // depth along the ray
    double delta = 0; // segment length; deltas partition [near, far]
};

// n equal bins over [near, far]; bin midpoints, or uniform within each bin
// when stratified (rng required in that case).
std::vector<RaySample> sample_along_ray(const Ray &ray, int n, bool stratified, Rng *rng);
void sample_along_ray_into(const Ray &ray, int n, bool stratified, Rng *rng,
                           std::vector<RaySample> &out);

struct CompositeResult {
    Vec3 color;         // linear RGB
    double depth = 0;   // expected depth, guarded by eps for empty rays
    double opacity = 0; // in [0, 1]
};

// Alpha compositing: alpha_i = 1 - exp(-sigma_i delta_i), transmittance
// T_i = prod_{j<i} (1 - alpha_j), color = sum T_i alpha_i c_i. Colors must be
// linear; densities nonnegative.
CompositeResult composite(std::span<const Vec3> colors_linear, std::span<const double> densities,
                          std::span<const RaySample> samples);

struct PixelRender {
    Vec3 srgb;   // after the linear -> sRGB output transform
    Vec3 linear; // composited linear color incl. background
    double depth = 0;
    double opacity = 0;
};

// A field in representation space: rep-space color in [0,1]^3 plus density.
using FieldFn = std::function<FieldOutput(const Vec3 &p, const Vec3 &dir)>;

// Full pixel pipeline: per-sample field query, representation -> linear
// conversion, linear-space compositing, optional white background, then the
// linear -> sRGB transform. rng drives stratified sampling (nullptr falls
// back to bin midpoints).
PixelRender render_pixel(const FieldFn &field, const Ray &ray, const RenderConfig &cfg,
                         Rng *rng = nullptr);
PixelRender render_pixel(const RadianceModel &model, const Ray &ray, const RenderConfig &cfg,
                         Rng *rng = nullptr);

// Forward render that records everything needed for an exact reverse pass.
// Reuse one tape per worker; buffers are recycled between rays.
class PixelTape {
  public:
    PixelRender forward(const RadianceModel &model, const Ray &ray, const RenderConfig &cfg,
                        Rng *rng = nullptr);
    // Accumulates d(upstream)/d(params) into grad for upstream gradient
    // dsrgb on the rendered sRGB triple.
    void backward(const RadianceModel &model, const Vec3 &dsrgb, std::span<double> grad);

  private:
    std::vector<RaySample> samples_;
    std::vector<FieldContext> contexts_;
    std::vector<Vec3> rep_colors_;
    std::vector<Vec3> linear_colors_;
    std::vector<double> transmit_;  // exp(-sigma delta), clamped away from 0
    std::vector<double> weights_;   // T_i alpha_i
    Vec3 pre_srgb_;                 // linear color entering the sRGB transform
    ColorSpace rep_space_;
    bool white_background_ = false;
    int count_ = 0;
};

struct RenderedView {
    Image srgb;    // height x width x 3
    Image depth;   // height x width x 1, composite expected depth
    Image opacity; // height x width x 1
};

// Per-pixel RNG streams are keyed by pixel index, so parallel rendering is
// bit-identical to sequential rendering.
RenderedView render_view(const RadianceModel &model, const Camera &cam, const RenderConfig &cfg,
                         int threads = 0);
RenderedView render_view(const FieldFn &field, const Camera &cam, const RenderConfig &cfg,
                         int threads = 0);
Image render_image(const RadianceModel &model, const Camera &cam, const RenderConfig &cfg,
                   int threads = 0);
Image render_depth(const RadianceModel &model, const Camera &cam, const RenderConfig &cfg,
                   int threads = 0);

// Grayscale visualization: depth normalized over pixels with opacity >= 0.5,
// brighter = closer; near-empty rays paint as far (black).
void export_depth_png(const std::string &path, const Image &depth, const Image &opacity);

} // namespace radlab

#endif
