// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#ifndef RADLAB_BIDR_H
#define RADLAB_BIDR_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radlab/config.h"
#include "radlab/vec.h"

namespace radlab {

// Body reflectance R_B; every channel must be strictly positive so logs stay
// finite.
struct Material {
    Vec3 body_reflectance{0.5, 0.5, 0.5};
};

// Ambient A (strictly positive) and direct D (nonnegative), constrained
// channelwise to A + D <= 1 so body reflection stays inside [0, 1].
struct Illumination {
    Vec3 ambient{0.1, 0.1, 0.1};
    Vec3 direct{0.8, 0.8, 0.8};
};

// Shadow fraction field gamma(p) in [0, 1]: the portion of the direct
// illuminant reaching p.
struct ShadowField {
    enum class Kind { Constant, HalfSpace, Ramp };
    Kind kind = Kind::Constant;
    double constant_gamma = 1.0;
    Vec3 normal{1, 0, 0}; // plane normal for HalfSpace/Ramp
    double d0 = 0.0;      // HalfSpace threshold; Ramp start (gamma = 0)
    double d1 = 0.0;      // Ramp end (gamma = 1)

    double eval(const Vec3 &p) const;
};

struct Primitive {
    enum class Shape { Sphere, Box };
    Shape shape = Shape::Sphere;
    Vec3 center;      // sphere
    double radius = 0;
    Vec3 box_lo, box_hi; // box
    Material material;

    bool contains(const Vec3 &p) const;
};

struct Scene {
    std::vector<Primitive> primitives;
    Illumination illumination;
    ShadowField shadow;
    AABB bounds;
    double density_opaque = 500.0;
};

// Body reflection under the bi-illuminant model: channelwise R_B * (A + g*D).
Vec3 body_reflection(const Material &m, const Illumination &illum, double gamma);

// The shadow-to-lit displacement in log space, ln(A + g*D) - ln(A).
// Material-independent: every body cylinder moves along this same vector.
Vec3 log_illumination_span(const Illumination &illum, double gamma);

// Recipe for random scene generation; parsed from a key=value file.
struct SceneRecipe {
    int primitive_count = 5;
    enum class ShapeKind { Sphere, Box, Mix } shape_kind = ShapeKind::Mix;
    double material_min = 0.2;
    double material_max = 0.9;
    Illumination illumination;
    double illum_scale = 1.0;
    ShadowField shadow;
    AABB bounds;
    double density = 500.0;
    double radius_min = 0.12;
    double radius_max = 0.3;
    bool floor = false;
};

SceneRecipe parse_scene_recipe(const ConfigMap &cfg);
SceneRecipe load_scene_recipe(const std::string &path);

// Deterministic in (recipe, seed). Throws std::runtime_error when the recipe
// is infeasible (primitives cannot fit the bounds) or violates invariants.
Scene generate_scene(const SceneRecipe &recipe, std::uint64_t seed);

void validate_scene(const Scene &scene);

struct SceneSample {
    Vec3 color;        // linear RGB
    double density = 0;
};

// Analytic radiance oracle: inside a primitive the body reflection at p with
// the local shadow fraction, outside empty space. Lambertian, so the view
// direction is unused.
SceneSample scene_radiance(const Scene &scene, const Vec3 &p, const Vec3 &dir);

struct TraceHit {
    double t = 0;
    Vec3 color; // linear RGB at the hit point
};

// First-intersection ray cast against the primitives; the exact reference
// renderer behind synthetic datasets and depth checks.
std::optional<TraceHit> trace_scene(const Scene &scene, const Vec3 &origin, const Vec3 &dir,
                                    double tmin, double tmax);

// Versioned plain-text scene files; save/load round-trips exactly.
void save_scene(const std::string &path, const Scene &scene);
Scene load_scene(const std::string &path);

} // namespace radlab

#endif
