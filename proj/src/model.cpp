// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "radlab/model.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "radlab/rng.h"

namespace radlab {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

double stable_sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double stable_softplus(double x) {
    if (x > 30.0) return x;
    if (x < -30.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

} // namespace

int GridSetup::max_resolution_for_budget(long long budget, int feature_dim) {
    if (budget < feature_dim) return 0;
    int res = 1;
    while (static_cast<long long>(res + 1) * (res + 1) * (res + 1) * feature_dim <= budget)
        ++res;
    return res;
}

void validate_model_config(const ModelConfig &config) {
    if (config.mlp_width < 1) throw std::invalid_argument("model: mlp_width must be >= 1");
    if (config.mlp_depth < 1 || config.mlp_depth > 16)
        throw std::invalid_argument("model: mlp_depth must be in [1, 16]");
    if (config.pe_frequencies < 0)
        throw std::invalid_argument("model: pe_frequencies must be >= 0");
    if (config.grid) {
        const auto &g = *config.grid;
        if (g.resolution < 1 || g.feature_dim < 1)
            throw std::invalid_argument("model: grid resolution and feature_dim must be >= 1");
        long long entries =
            static_cast<long long>(g.resolution) * g.resolution * g.resolution * g.feature_dim;
        if (g.entry_budget > 0 && entries > g.entry_budget)
            throw std::invalid_argument("model: grid entries exceed the entry budget");
    }
    if (min_component(config.aabb.extent()) <= 0)
        throw std::invalid_argument("model: degenerate aabb");
}

ParamLayout make_layout(const ModelConfig &config) {
    validate_model_config(config);
    ParamLayout layout;
    const int fdim = config.grid ? config.grid->feature_dim : 0;
    layout.input_dim = 3 + 6 * config.pe_frequencies + fdim;

    size_t off = 0;
    layout.grid_offset = 0;
    if (config.grid) {
        const auto &g = *config.grid;
        layout.grid_count =
            static_cast<size_t>(g.resolution) * g.resolution * g.resolution * g.feature_dim;
        off += layout.grid_count;
    }

    int in = layout.input_dim;
    for (int l = 0; l < config.mlp_depth; ++l) {
        ParamLayout::Block b;
        b.in = in;
        b.out = config.mlp_width;
        b.weight_offset = off;
        off += static_cast<size_t>(b.in) * b.out;
        b.bias_offset = off;
        off += b.out;
        layout.trunk.push_back(b);
        in = config.mlp_width;
    }

    layout.density_head = {off, off + static_cast<size_t>(config.mlp_width), config.mlp_width, 1};
    off += static_cast<size_t>(config.mlp_width) + 1;

    const int color_in = config.mlp_width + (config.use_view_dirs ? 3 : 0);
    layout.color_head = {off, off + static_cast<size_t>(color_in) * 3, color_in, 3};
    off += static_cast<size_t>(color_in) * 3 + 3;

    layout.total = off;
    return layout;
}

size_t parameter_count(const ModelConfig &config) { return make_layout(config).total; }

RadianceModel init_model(const ModelConfig &config) {
    ParamLayout layout = make_layout(config);
    RadianceModel model;
    model.config = config;
    model.params.resize(layout.total);

    Rng rng(derive_seed(config.seed, 0x6d6f64656cULL));
    for (size_t i = 0; i < layout.grid_count; ++i)
        model.params[layout.grid_offset + i] = rng.uniform(-0.01, 0.01);

    auto init_block = [&](const ParamLayout::Block &b) {
        double bound = 1.0 / std::sqrt(static_cast<double>(b.in));
        for (size_t i = 0; i < static_cast<size_t>(b.in) * b.out; ++i)
            model.params[b.weight_offset + i] = rng.uniform(-bound, bound);
        for (int i = 0; i < b.out; ++i)
            model.params[b.bias_offset + i] = rng.uniform(-bound, bound);
    };
    for (const auto &b : layout.trunk) init_block(b);
    init_block(layout.density_head);
    init_block(layout.color_head);
    return model;
}

void positional_encoding_into(const Vec3 &p, int L, double *out) {
    out[0] = p.x;
    out[1] = p.y;
    out[2] = p.z;
    if (L == 0) return;
    // sin/cos of 2^k pi p via the double-angle recurrence; one sincos pair
    // per axis instead of 2L libm calls.
    double s[3], c[3];
    for (int a = 0; a < 3; ++a) {
        s[a] = std::sin(kPi * p[a]);
        c[a] = std::cos(kPi * p[a]);
    }
    double *dst = out + 3;
    for (int k = 0; k < L; ++k) {
        dst[0] = s[0];
        dst[1] = s[1];
        dst[2] = s[2];
        dst[3] = c[0];
        dst[4] = c[1];
        dst[5] = c[2];
        dst += 6;
        if (k + 1 < L) {
            for (int a = 0; a < 3; ++a) {
                double s2 = 2.0 * s[a] * c[a];
                double c2 = 1.0 - 2.0 * s[a] * s[a];
                s[a] = s2;
                c[a] = c2;
            }
        }
    }
}

std::vector<double> positional_encoding(const Vec3 &p, int L) {
    if (L < 0) throw std::invalid_argument("positional_encoding: L must be >= 0");
    std::vector<double> out(3 + 6 * static_cast<size_t>(L));
    positional_encoding_into(p, L, out.data());
    return out;
}

namespace {

// Corner indices and trilinear weights for normalized q (clamped to [0,1]^3).
int grid_corners(const Vec3 &q01, int res, int fdim, int corner[8], double weight[8]) {
    Vec3 q = clamp01(q01);
    if (res == 1) {
        corner[0] = 0;
        weight[0] = 1.0;
        return 1;
    }
    double g[3];
    int i0[3];
    double f[3];
    for (int a = 0; a < 3; ++a) {
        g[a] = q[a] * (res - 1);
        i0[a] = std::min(static_cast<int>(g[a]), res - 2);
        f[a] = g[a] - i0[a];
    }
    int n = 0;
    for (int dx = 0; dx < 2; ++dx)
        for (int dy = 0; dy < 2; ++dy)
            for (int dz = 0; dz < 2; ++dz) {
                double w = (dx ? f[0] : 1 - f[0]) * (dy ? f[1] : 1 - f[1]) * (dz ? f[2] : 1 - f[2]);
                int idx = ((i0[0] + dx) * res + (i0[1] + dy)) * res + (i0[2] + dz);
                corner[n] = idx * fdim;
                weight[n] = w;
                ++n;
            }
    return n;
}

} // namespace

std::vector<double> grid_encode(const Vec3 &q01, int resolution, int feature_dim,
                                std::span<const double> features) {
    if (resolution < 1 || feature_dim < 1)
        throw std::invalid_argument("grid_encode: bad grid shape");
    if (features.size() !=
        static_cast<size_t>(resolution) * resolution * resolution * feature_dim)
        throw std::invalid_argument("grid_encode: feature span does not match grid shape");
    int corner[8];
    double weight[8];
    int n = grid_corners(q01, resolution, feature_dim, corner, weight);
    std::vector<double> out(feature_dim, 0.0);
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < feature_dim; ++f) out[f] += weight[i] * features[corner[i] + f];
    return out;
}

void FieldContext::prepare(const ModelConfig &config) {
    ParamLayout layout = make_layout(config);
    input.resize(layout.input_dim);
    hidden.resize(static_cast<size_t>(config.mlp_depth) * config.mlp_width);
    size_t scratch = std::max<size_t>(layout.input_dim, config.mlp_width) + 3;
    scratch_a.resize(scratch);
    scratch_b.resize(scratch);
}

FieldOutput field_eval(const RadianceModel &model, const Vec3 &p, const Vec3 &dir,
                       FieldContext *ctx) {
    const ModelConfig &cfg = model.config;
    FieldContext local;
    if (!ctx) {
        ctx = &local;
    }
    const size_t in0 =
        3 + 6 * static_cast<size_t>(cfg.pe_frequencies) + (cfg.grid ? cfg.grid->feature_dim : 0);
    if (ctx->input.size() != in0 ||
        ctx->hidden.size() != static_cast<size_t>(cfg.mlp_depth) * cfg.mlp_width)
        ctx->prepare(cfg);

    // Normalize into [-1,1]^3 (clamped to the world box).
    Vec3 q = (p - cfg.aabb.lo) / cfg.aabb.extent();
    q = clamp01(q);
    Vec3 u = q * 2.0 - Vec3(1.0);

    double *in = ctx->input.data();
    positional_encoding_into(u, cfg.pe_frequencies, in);
    const int pe_len = 3 + 6 * cfg.pe_frequencies;
    ctx->grid_corners_used = 0;
    if (cfg.grid) {
        const auto &g = *cfg.grid;
        ctx->grid_corners_used =
            grid_corners(q, g.resolution, g.feature_dim, ctx->grid_corner, ctx->grid_weight);
        const double *grid = model.params.data(); // grid block sits at offset 0
        for (int f = 0; f < g.feature_dim; ++f) {
            double acc = 0;
            for (int i = 0; i < ctx->grid_corners_used; ++i)
                acc += ctx->grid_weight[i] * grid[ctx->grid_corner[i] + f];
            in[pe_len + f] = acc;
        }
    }

    // Trunk. Layout recomputation per call would be wasteful; derive offsets
    // incrementally (identical arithmetic to make_layout).
    const double *params = model.params.data();
    size_t off = cfg.grid ? static_cast<size_t>(cfg.grid->resolution) * cfg.grid->resolution *
                                cfg.grid->resolution * cfg.grid->feature_dim
                          : 0;
    const int width = cfg.mlp_width;
    int in_dim = pe_len + (cfg.grid ? cfg.grid->feature_dim : 0);
    const double *x = in;
    for (int l = 0; l < cfg.mlp_depth; ++l) {
        const double *w = params + off;
        const double *b = params + off + static_cast<size_t>(in_dim) * width;
        double *h = ctx->hidden.data() + static_cast<size_t>(l) * width;
        for (int o = 0; o < width; ++o) {
            const double *row = w + static_cast<size_t>(o) * in_dim;
            double acc = b[o];
            for (int i = 0; i < in_dim; ++i) acc += row[i] * x[i];
            h[o] = acc > 0 ? acc : 0.0;
        }
        off += static_cast<size_t>(in_dim) * width + width;
        x = h;
        in_dim = width;
    }

    // Density head.
    const double *wd = params + off;
    double zd = wd[width];
    for (int i = 0; i < width; ++i) zd += wd[i] * x[i];
    off += static_cast<size_t>(width) + 1;

    // Color head (optionally direction-conditioned).
    const int color_in = width + (cfg.use_view_dirs ? 3 : 0);
    const double *wc = params + off;
    const double *bc = wc + static_cast<size_t>(color_in) * 3;
    FieldOutput out;
    for (int c = 0; c < 3; ++c) {
        const double *row = wc + static_cast<size_t>(c) * color_in;
        double acc = bc[c];
        for (int i = 0; i < width; ++i) acc += row[i] * x[i];
        if (cfg.use_view_dirs)
            for (int i = 0; i < 3; ++i) acc += row[width + i] * dir[i];
        out.rep_color[c] = stable_sigmoid(acc);
    }
    out.density = stable_softplus(zd);

    if (!all_finite(out.rep_color) || !std::isfinite(out.density))
        throw std::runtime_error(
            "field_eval: non-finite activation (width=" + std::to_string(cfg.mlp_width) +
            " depth=" + std::to_string(cfg.mlp_depth) +
            " params=" + std::to_string(model.params.size()) + ")");

    ctx->color = out.rep_color;
    ctx->density = out.density;
    ctx->dir = dir;
    return out;
}

void field_backward(const RadianceModel &model, const FieldContext &ctx, const Vec3 &dcolor,
                    double ddensity, std::span<double> grad) {
    const ModelConfig &cfg = model.config;
    if (grad.size() != model.params.size())
        throw std::invalid_argument("field_backward: gradient span size mismatch");
    if (ctx.input.empty())
        throw std::invalid_argument("field_backward: context not produced by field_eval");

    const double *params = model.params.data();
    double *g = grad.data();
    const int width = cfg.mlp_width;
    const int pe_len = 3 + 6 * cfg.pe_frequencies;
    const int in0 = pe_len + (cfg.grid ? cfg.grid->feature_dim : 0);

    size_t grid_count = cfg.grid ? static_cast<size_t>(cfg.grid->resolution) *
                                       cfg.grid->resolution * cfg.grid->resolution *
                                       cfg.grid->feature_dim
                                 : 0;

    // Head offsets (same arithmetic as make_layout).
    size_t off = grid_count;
    size_t layer_off[16];
    int layer_in[16];
    int in_dim = in0;
    for (int l = 0; l < cfg.mlp_depth; ++l) {
        layer_off[l] = off;
        layer_in[l] = in_dim;
        off += static_cast<size_t>(in_dim) * width + width;
        in_dim = width;
    }
    const size_t density_off = off;
    off += static_cast<size_t>(width) + 1;
    const int color_in = width + (cfg.use_view_dirs ? 3 : 0);
    const size_t color_off = off;

    const double *h_last = ctx.hidden.data() + static_cast<size_t>(cfg.mlp_depth - 1) * width;

    // dh accumulates the gradient flowing into the last trunk activation.
    double *dh = const_cast<FieldContext &>(ctx).scratch_a.data();
    double *dprev = const_cast<FieldContext &>(ctx).scratch_b.data();
    for (int i = 0; i < width; ++i) dh[i] = 0;

    // Color head: sigmoid' recovered from the stored outputs.
    const double *wc = params + color_off;
    for (int c = 0; c < 3; ++c) {
        double y = ctx.color[c];
        double dz = dcolor[c] * y * (1.0 - y);
        if (dz == 0) continue;
        const double *row = wc + static_cast<size_t>(c) * color_in;
        double *grow = g + color_off + static_cast<size_t>(c) * color_in;
        for (int i = 0; i < width; ++i) {
            grow[i] += dz * h_last[i];
            dh[i] += dz * row[i];
        }
        if (cfg.use_view_dirs)
            for (int i = 0; i < 3; ++i) grow[width + i] += dz * ctx.dir[i];
        g[color_off + static_cast<size_t>(color_in) * 3 + c] += dz;
    }

    // Density head: softplus' = 1 - exp(-softplus).
    {
        double dz = ddensity * (1.0 - std::exp(-ctx.density));
        if (dz != 0) {
            const double *wd = params + density_off;
            double *gd = g + density_off;
            for (int i = 0; i < width; ++i) {
                gd[i] += dz * h_last[i];
                dh[i] += dz * wd[i];
            }
            gd[width] += dz;
        }
    }

    // Trunk, back to front.
    for (int l = cfg.mlp_depth - 1; l >= 0; --l) {
        const int in_l = layer_in[l];
        const double *x =
            l == 0 ? ctx.input.data() : ctx.hidden.data() + static_cast<size_t>(l - 1) * width;
        const double *h = ctx.hidden.data() + static_cast<size_t>(l) * width;
        const double *w = params + layer_off[l];
        double *gw = g + layer_off[l];
        double *gb = gw + static_cast<size_t>(in_l) * width;
        for (int i = 0; i < in_l; ++i) dprev[i] = 0;
        for (int o = 0; o < width; ++o) {
            double dz = h[o] > 0 ? dh[o] : 0.0; // ReLU mask
            if (dz == 0) continue;
            const double *row = w + static_cast<size_t>(o) * in_l;
            double *grow = gw + static_cast<size_t>(o) * in_l;
            for (int i = 0; i < in_l; ++i) {
                grow[i] += dz * x[i];
                dprev[i] += dz * row[i];
            }
            gb[o] += dz;
        }
        std::swap(dh, dprev);
    }

    // Input gradient reaches learnable state only through the grid features.
    if (cfg.grid) {
        const int fdim = cfg.grid->feature_dim;
        for (int f = 0; f < fdim; ++f) {
            double din = dh[pe_len + f];
            if (din == 0) continue;
            for (int i = 0; i < ctx.grid_corners_used; ++i)
                g[ctx.grid_corner[i] + f] += din * ctx.grid_weight[i];
        }
    }
}

std::vector<double> field_backward(const RadianceModel &model, const Vec3 &p, const Vec3 &dir,
                                   const Vec3 &dcolor, double ddensity) {
    FieldContext ctx;
    field_eval(model, p, dir, &ctx);
    std::vector<double> grad(model.params.size(), 0.0);
    field_backward(model, ctx, dcolor, ddensity, grad);
    return grad;
}

namespace {

constexpr char kCheckpointMagic[8] = {'R', 'A', 'D', 'L', 'A', 'B', 'C', 'K'};
constexpr std::uint32_t kCheckpointVersion = 1;

template <typename T> void put(std::ofstream &out, const T &v) {
    out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}
template <typename T> T take(std::ifstream &in) {
    T v{};
    in.read(reinterpret_cast<char *>(&v), sizeof(T));
    if (!in) throw std::runtime_error("checkpoint truncated");
    return v;
}

} // namespace

void save_checkpoint(const std::string &path, const RadianceModel &model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
    out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
    put(out, kCheckpointVersion);
    const ModelConfig &c = model.config;
    put<std::int32_t>(out, c.mlp_width);
    put<std::int32_t>(out, c.mlp_depth);
    put<std::int32_t>(out, c.pe_frequencies);
    put<std::uint8_t>(out, c.grid ? 1 : 0);
    if (c.grid) {
        put<std::int32_t>(out, c.grid->resolution);
        put<std::int32_t>(out, c.grid->feature_dim);
        put<std::int64_t>(out, c.grid->entry_budget);
    }
    std::string space = to_string(c.representation_space);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(space.size()));
    out.write(space.data(), static_cast<std::streamsize>(space.size()));
    put<std::uint64_t>(out, c.seed);
    put<std::uint8_t>(out, c.use_view_dirs ? 1 : 0);
    for (int a = 0; a < 3; ++a) put(out, c.aabb.lo[a]);
    for (int a = 0; a < 3; ++a) put(out, c.aabb.hi[a]);
    put<std::uint64_t>(out, model.params.size());
    out.write(reinterpret_cast<const char *>(model.params.data()),
              static_cast<std::streamsize>(model.params.size() * sizeof(double)));
    if (!out) throw std::runtime_error("short write to checkpoint: " + path);
}

RadianceModel load_checkpoint(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kCheckpointMagic, 8) != 0)
        throw std::runtime_error("not a radlab checkpoint: " + path);
    auto version = take<std::uint32_t>(in);
    if (version != kCheckpointVersion)
        throw std::runtime_error("unsupported checkpoint version in " + path);

    RadianceModel model;
    ModelConfig &c = model.config;
    c.mlp_width = take<std::int32_t>(in);
    c.mlp_depth = take<std::int32_t>(in);
    c.pe_frequencies = take<std::int32_t>(in);
    if (take<std::uint8_t>(in)) {
        GridSetup g;
        g.resolution = take<std::int32_t>(in);
        g.feature_dim = take<std::int32_t>(in);
        g.entry_budget = take<std::int64_t>(in);
        c.grid = g;
    }
    auto len = take<std::uint32_t>(in);
    std::string space(len, '\0');
    in.read(space.data(), len);
    if (!in) throw std::runtime_error("checkpoint truncated: " + path);
    c.representation_space = parse_color_space(space);
    c.seed = take<std::uint64_t>(in);
    c.use_view_dirs = take<std::uint8_t>(in) != 0;
    for (int a = 0; a < 3; ++a) c.aabb.lo[a] = take<double>(in);
    for (int a = 0; a < 3; ++a) c.aabb.hi[a] = take<double>(in);
    auto count = take<std::uint64_t>(in);
    if (count != parameter_count(c))
        throw std::runtime_error("checkpoint parameter count does not match config: " + path);
    model.params.resize(count);
    in.read(reinterpret_cast<char *>(model.params.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("checkpoint truncated: " + path);
    return model;
}

} // namespace radlab
