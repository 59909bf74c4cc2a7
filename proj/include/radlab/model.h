// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#ifndef RADLAB_MODEL_H
#define RADLAB_MODEL_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radlab/colorspace.h"
#include "radlab/vec.h"

namespace radlab {

// Dense trilinearly-interpolated feature grid. The cube resolution and the
// per-vertex feature width must respect the total entry budget
// (resolution^3 * feature_dim <= entry_budget).
struct GridSetup {
    int resolution = 16;
    int feature_dim = 4;
    long long entry_budget = 0; // 0 = exactly resolution^3 * feature_dim

    // Largest cube resolution whose feature entries fit the budget.
    static int max_resolution_for_budget(long long budget, int feature_dim);
};

struct ModelConfig {
    int mlp_width = 32;
    int mlp_depth = 2;      // hidden layers
    int pe_frequencies = 4; // L
    std::optional<GridSetup> grid;
    ColorSpace representation_space = ColorSpace::linear();
    std::uint64_t seed = 0;
    bool use_view_dirs = false; // feed the ray direction to the color head
    AABB aabb;                  // world box normalized into [-1,1]^3 inputs
};

// Flat parameter vector layout: [grid features][trunk W,b per layer]
// [density head W,b][color head W,b]. Weights are row-major [out][in].
struct ParamLayout {
    struct Block {
        size_t weight_offset = 0;
        size_t bias_offset = 0;
        int in = 0, out = 0;
    };
    size_t grid_offset = 0;
    size_t grid_count = 0;
    int input_dim = 0;
    std::vector<Block> trunk;
    Block density_head;
    Block color_head;
    size_t total = 0;
};

ParamLayout make_layout(const ModelConfig &config);
size_t parameter_count(const ModelConfig &config);
void validate_model_config(const ModelConfig &config);

struct RadianceModel {
    ModelConfig config;
    std::vector<double> params;
};

// Deterministic in config.seed; uniform init scaled by 1/sqrt(fan_in), grid
// features in [-0.01, 0.01].
RadianceModel init_model(const ModelConfig &config);

// Frequency encoding of a point in [-1,1]^3: the point itself followed by
// (sin(2^k pi p_i), cos(2^k pi p_i)) for k = 0..L-1; length 3 + 6L.
std::vector<double> positional_encoding(const Vec3 &p, int L);
void positional_encoding_into(const Vec3 &p, int L, double *out);

// Trilinear interpolation of the 8 cell corners at normalized q in [0,1]^3
// (clamped). features holds resolution^3 * feature_dim values.
std::vector<double> grid_encode(const Vec3 &q01, int resolution, int feature_dim,
                                std::span<const double> features);

struct FieldOutput {
    Vec3 rep_color;     // representation-space color, inside (0,1)^3
    double density = 0; // >= 0
};

// Saved forward activations so the backward pass can run without recompute.
class FieldContext {
  public:
    void prepare(const ModelConfig &config);

  private:
    friend FieldOutput field_eval(const RadianceModel &, const Vec3 &, const Vec3 &,
                                  FieldContext *);
    friend void field_backward(const RadianceModel &, const FieldContext &, const Vec3 &,
                               double, std::span<double>);
    std::vector<double> input;     // encoded input features
    std::vector<double> hidden;    // depth x width post-ReLU activations
    std::vector<double> scratch_a; // backward work buffers
    std::vector<double> scratch_b;
    Vec3 color;
    double density = 0;
    Vec3 dir;
    int grid_corner[8] = {};
    double grid_weight[8] = {};
    int grid_corners_used = 0;
};

// Evaluate the field at p (world coordinates, clamped into config.aabb).
// Color is sigmoid-squashed, density softplus-squashed; both ranges hold by
// construction. Pass a context to enable a later backward pass.
FieldOutput field_eval(const RadianceModel &model, const Vec3 &p, const Vec3 &dir,
                       FieldContext *ctx = nullptr);

// Accumulate d(upstream)/d(params) into grad given upstream gradients for the
// color triple and the density. grad.size() must equal the parameter count.
void field_backward(const RadianceModel &model, const FieldContext &ctx, const Vec3 &dcolor,
                    double ddensity, std::span<double> grad);

// One-shot convenience: forward at (p, dir) then backward.
std::vector<double> field_backward(const RadianceModel &model, const Vec3 &p, const Vec3 &dir,
                                   const Vec3 &dcolor, double ddensity);

// Versioned binary checkpoints; reload is bit-exact.
void save_checkpoint(const std::string &path, const RadianceModel &model);
RadianceModel load_checkpoint(const std::string &path);

} // namespace radlab

#endif
