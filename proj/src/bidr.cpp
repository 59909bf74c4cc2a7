// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "radlab/bidr.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "radlab/rng.h"

namespace radlab {

double ShadowField::eval(const Vec3 &p) const {
    switch (kind) {
    case Kind::Constant:
        return constant_gamma;
    case Kind::HalfSpace:
        return dot(normal, p) >= d0 ? 1.0 : 0.0;
    case Kind::Ramp: {
        double s = dot(normal, p);
        if (d1 <= d0) return s >= d0 ? 1.0 : 0.0;
        return std::clamp((s - d0) / (d1 - d0), 0.0, 1.0);
    }
    }
    return 1.0;
}

bool Primitive::contains(const Vec3 &p) const {
    if (shape == Shape::Sphere) {
        Vec3 d = p - center;
        return dot(d, d) <= radius * radius;
    }
    return p.x >= box_lo.x && p.x <= box_hi.x && p.y >= box_lo.y && p.y <= box_hi.y &&
           p.z >= box_lo.z && p.z <= box_hi.z;
}

Vec3 body_reflection(const Material &m, const Illumination &illum, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("body_reflection: gamma outside [0, 1]");
    return m.body_reflectance * (illum.ambient + illum.direct * gamma);
}

Vec3 log_illumination_span(const Illumination &illum, double gamma) {
    Vec3 lit = illum.ambient + illum.direct * gamma;
    return {std::log(lit.x) - std::log(illum.ambient.x),
            std::log(lit.y) - std::log(illum.ambient.y),
            std::log(lit.z) - std::log(illum.ambient.z)};
}

namespace {

void validate_illumination(const Illumination &illum) {
    if (min_component(illum.ambient) <= 0)
        throw std::runtime_error("illumination: ambient channels must be > 0");
    if (min_component(illum.direct) < 0)
        throw std::runtime_error("illumination: direct channels must be >= 0");
    Vec3 total = illum.ambient + illum.direct;
    if (max_component(total) > 1.0 + 1e-12)
        throw std::runtime_error("illumination: A + D must be <= 1 channelwise");
}

void validate_material(const Material &m) {
    if (min_component(m.body_reflectance) <= 0 || max_component(m.body_reflectance) > 1.0)
        throw std::runtime_error("material: reflectance channels must lie in (0, 1]");
}

AABB primitive_bounds(const Primitive &p) {
    if (p.shape == Primitive::Shape::Sphere)
        return {p.center - Vec3(p.radius), p.center + Vec3(p.radius)};
    return {p.box_lo, p.box_hi};
}

} // namespace

void validate_scene(const Scene &scene) {
    validate_illumination(scene.illumination);
    if (scene.density_opaque <= 0)
        throw std::runtime_error("scene: density_opaque must be positive");
    for (const auto &prim : scene.primitives) {
        validate_material(prim.material);
        AABB pb = primitive_bounds(prim);
        if (!scene.bounds.contains(pb.lo) || !scene.bounds.contains(pb.hi))
            throw std::runtime_error("scene: primitive lies outside bounds");
        if (prim.shape == Primitive::Shape::Sphere && prim.radius <= 0)
            throw std::runtime_error("scene: sphere radius must be positive");
        if (prim.shape == Primitive::Shape::Box &&
            (prim.box_lo.x >= prim.box_hi.x || prim.box_lo.y >= prim.box_hi.y ||
             prim.box_lo.z >= prim.box_hi.z))
            throw std::runtime_error("scene: degenerate box");
    }
}

SceneRecipe parse_scene_recipe(const ConfigMap &cfg) {
    SceneRecipe r;
    r.primitive_count = cfg.get_int("primitives", r.primitive_count);
    std::string shape = cfg.get_str("shape", "mix");
    if (shape == "sphere") r.shape_kind = SceneRecipe::ShapeKind::Sphere;
    else if (shape == "box") r.shape_kind = SceneRecipe::ShapeKind::Box;
    else if (shape == "mix") r.shape_kind = SceneRecipe::ShapeKind::Mix;
    else throw std::runtime_error("recipe: unknown shape kind: " + shape);

    r.material_min = cfg.get_double("material_min", r.material_min);
    r.material_max = cfg.get_double("material_max", r.material_max);
    r.illumination.ambient = cfg.get_vec3("ambient", r.illumination.ambient);
    r.illumination.direct = cfg.get_vec3("direct", r.illumination.direct);
    r.illum_scale = cfg.get_double("illum_scale", 1.0);

    std::string shadow = cfg.get_str("shadow", "constant");
    if (shadow == "constant") r.shadow.kind = ShadowField::Kind::Constant;
    else if (shadow == "halfspace") r.shadow.kind = ShadowField::Kind::HalfSpace;
    else if (shadow == "ramp") r.shadow.kind = ShadowField::Kind::Ramp;
    else throw std::runtime_error("recipe: unknown shadow kind: " + shadow);
    r.shadow.constant_gamma = cfg.get_double("shadow_gamma", 1.0);
    r.shadow.normal = cfg.get_vec3("shadow_normal", {1, 0, 0});
    if (length(r.shadow.normal) == 0) throw std::runtime_error("recipe: zero shadow normal");
    r.shadow.normal = normalized(r.shadow.normal);
    r.shadow.d0 = cfg.get_double("shadow_d0", -0.4);
    r.shadow.d1 = cfg.get_double("shadow_d1", 0.4);

    r.bounds.lo = cfg.get_vec3("bounds_min", {-1, -1, -1});
    r.bounds.hi = cfg.get_vec3("bounds_max", {1, 1, 1});
    r.density = cfg.get_double("density", 500.0);
    r.radius_min = cfg.get_double("radius_min", r.radius_min);
    r.radius_max = cfg.get_double("radius_max", r.radius_max);
    r.floor = cfg.get_int("floor", 0) != 0;
    return r;
}

SceneRecipe load_scene_recipe(const std::string &path) {
    return parse_scene_recipe(ConfigMap::parse_file(path));
}

Scene generate_scene(const SceneRecipe &recipe, std::uint64_t seed) {
    if (recipe.primitive_count < 0)
        throw std::runtime_error("recipe: negative primitive count");
    if (!(recipe.material_min > 0 && recipe.material_max <= 1 &&
          recipe.material_min <= recipe.material_max))
        throw std::runtime_error("recipe: material range must satisfy 0 < min <= max <= 1");
    if (!(recipe.radius_min > 0 && recipe.radius_min <= recipe.radius_max))
        throw std::runtime_error("recipe: bad radius range");

    Scene scene;
    scene.illumination.ambient = recipe.illumination.ambient * recipe.illum_scale;
    scene.illumination.direct = recipe.illumination.direct * recipe.illum_scale;
    validate_illumination(scene.illumination);
    scene.shadow = recipe.shadow;
    scene.bounds = recipe.bounds;
    scene.density_opaque = recipe.density;

    Rng rng(derive_seed(seed, 0x5ce9e5));
    auto sample_material = [&] {
        Material m;
        for (int c = 0; c < 3; ++c)
            m.body_reflectance[c] = rng.uniform(recipe.material_min, recipe.material_max);
        return m;
    };

    Vec3 ext = scene.bounds.extent();
    if (recipe.floor) {
        double thickness = 0.08 * ext.y;
        Primitive floor;
        floor.shape = Primitive::Shape::Box;
        floor.box_lo = scene.bounds.lo;
        floor.box_hi = {scene.bounds.hi.x, scene.bounds.lo.y + thickness, scene.bounds.hi.z};
        floor.material = sample_material();
        scene.primitives.push_back(floor);
    }

    for (int i = 0; i < recipe.primitive_count; ++i) {
        Primitive prim;
        bool sphere = recipe.shape_kind == SceneRecipe::ShapeKind::Sphere ||
                      (recipe.shape_kind == SceneRecipe::ShapeKind::Mix && rng.uniform() < 0.5);
        if (sphere) {
            prim.shape = Primitive::Shape::Sphere;
            prim.radius = rng.uniform(recipe.radius_min, recipe.radius_max);
            for (int a = 0; a < 3; ++a) {
                double lo = scene.bounds.lo[a] + prim.radius;
                double hi = scene.bounds.hi[a] - prim.radius;
                if (lo > hi)
                    throw std::runtime_error("recipe infeasible: primitive cannot fit bounds");
                prim.center[a] = rng.uniform(lo, hi);
            }
        } else {
            prim.shape = Primitive::Shape::Box;
            Vec3 half;
            for (int a = 0; a < 3; ++a) half[a] = rng.uniform(recipe.radius_min, recipe.radius_max);
            Vec3 center;
            for (int a = 0; a < 3; ++a) {
                double lo = scene.bounds.lo[a] + half[a];
                double hi = scene.bounds.hi[a] - half[a];
                if (lo > hi)
                    throw std::runtime_error("recipe infeasible: primitive cannot fit bounds");
                center[a] = rng.uniform(lo, hi);
            }
            prim.box_lo = center - half;
            prim.box_hi = center + half;
        }
        prim.material = sample_material();
        scene.primitives.push_back(prim);
    }
    validate_scene(scene);
    return scene;
}

SceneSample scene_radiance(const Scene &scene, const Vec3 &p, const Vec3 & /*dir*/) {
    for (const auto &prim : scene.primitives) {
        if (prim.contains(p)) {
            double gamma = scene.shadow.eval(p);
            return {body_reflection(prim.material, scene.illumination, gamma),
                    scene.density_opaque};
        }
    }
    return {{0, 0, 0}, 0.0};
}

namespace {

// Entry parameter of the ray against one primitive, if the overlap of
// [tmin, tmax] with the primitive interval is non-empty.
std::optional<double> intersect_primitive(const Primitive &prim, const Vec3 &o, const Vec3 &d,
                                          double tmin, double tmax) {
    double t0, t1;
    if (prim.shape == Primitive::Shape::Sphere) {
        Vec3 oc = o - prim.center;
        double b = dot(oc, d);
        double c = dot(oc, oc) - prim.radius * prim.radius;
        double disc = b * b - c;
        if (disc < 0) return std::nullopt;
        double sq = std::sqrt(disc);
        t0 = -b - sq;
        t1 = -b + sq;
    } else {
        t0 = -std::numeric_limits<double>::infinity();
        t1 = std::numeric_limits<double>::infinity();
        for (int a = 0; a < 3; ++a) {
            if (d[a] == 0) {
                if (o[a] < prim.box_lo[a] || o[a] > prim.box_hi[a]) return std::nullopt;
                continue;
            }
            double inv = 1.0 / d[a];
            double ta = (prim.box_lo[a] - o[a]) * inv;
            double tb = (prim.box_hi[a] - o[a]) * inv;
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return std::nullopt;
        }
    }
    double entry = std::max(t0, tmin);
    if (entry > std::min(t1, tmax)) return std::nullopt;
    return entry;
}

} // namespace

std::optional<TraceHit> trace_scene(const Scene &scene, const Vec3 &origin, const Vec3 &dir,
                                    double tmin, double tmax) {
    std::optional<TraceHit> best;
    for (const auto &prim : scene.primitives) {
        auto t = intersect_primitive(prim, origin, dir, tmin, tmax);
        if (!t) continue;
        if (!best || *t < best->t) {
            Vec3 p = origin + dir * *t;
            double gamma = scene.shadow.eval(p);
            best = TraceHit{*t, body_reflection(prim.material, scene.illumination, gamma)};
        }
    }
    return best;
}

namespace {
constexpr const char *kSceneMagic = "radlab_scene_v1";
}

void save_scene(const std::string &path, const Scene &scene) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scene file: " + path);
    out << kSceneMagic << "\n";
    auto v3 = [](const Vec3 &v) {
        return format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z);
    };
    out << "illumination " << v3(scene.illumination.ambient) << " "
        << v3(scene.illumination.direct) << "\n";
    out << "shadow ";
    switch (scene.shadow.kind) {
    case ShadowField::Kind::Constant:
        out << "constant " << format_double(scene.shadow.constant_gamma);
        break;
    case ShadowField::Kind::HalfSpace:
        out << "halfspace " << v3(scene.shadow.normal) << " " << format_double(scene.shadow.d0);
        break;
    case ShadowField::Kind::Ramp:
        out << "ramp " << v3(scene.shadow.normal) << " " << format_double(scene.shadow.d0) << " "
            << format_double(scene.shadow.d1);
        break;
    }
    out << "\n";
    out << "bounds " << v3(scene.bounds.lo) << " " << v3(scene.bounds.hi) << "\n";
    out << "density " << format_double(scene.density_opaque) << "\n";
    for (const auto &p : scene.primitives) {
        if (p.shape == Primitive::Shape::Sphere)
            out << "sphere " << v3(p.center) << " " << format_double(p.radius) << " "
                << v3(p.material.body_reflectance) << "\n";
        else
            out << "box " << v3(p.box_lo) << " " << v3(p.box_hi) << " "
                << v3(p.material.body_reflectance) << "\n";
    }
}

Scene load_scene(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scene file: " + path);
    std::string magic;
    if (!(in >> magic) || magic != kSceneMagic)
        throw std::runtime_error("not a radlab scene file (bad version line): " + path);

    Scene scene;
    scene.primitives.clear();
    std::string tok;
    auto read_vec3 = [&](Vec3 &v) {
        if (!(in >> v.x >> v.y >> v.z))
            throw std::runtime_error("scene file truncated: " + path);
    };
    while (in >> tok) {
        if (tok == "illumination") {
            read_vec3(scene.illumination.ambient);
            read_vec3(scene.illumination.direct);
        } else if (tok == "shadow") {
            std::string kind;
            in >> kind;
            if (kind == "constant") {
                scene.shadow.kind = ShadowField::Kind::Constant;
                in >> scene.shadow.constant_gamma;
            } else if (kind == "halfspace") {
                scene.shadow.kind = ShadowField::Kind::HalfSpace;
                read_vec3(scene.shadow.normal);
                in >> scene.shadow.d0;
            } else if (kind == "ramp") {
                scene.shadow.kind = ShadowField::Kind::Ramp;
                read_vec3(scene.shadow.normal);
                in >> scene.shadow.d0 >> scene.shadow.d1;
            } else {
                throw std::runtime_error("scene file: unknown shadow kind " + kind);
            }
        } else if (tok == "bounds") {
            read_vec3(scene.bounds.lo);
            read_vec3(scene.bounds.hi);
        } else if (tok == "density") {
            in >> scene.density_opaque;
        } else if (tok == "sphere") {
            Primitive p;
            p.shape = Primitive::Shape::Sphere;
            read_vec3(p.center);
            in >> p.radius;
            read_vec3(p.material.body_reflectance);
            scene.primitives.push_back(p);
        } else if (tok == "box") {
            Primitive p;
            p.shape = Primitive::Shape::Box;
            read_vec3(p.box_lo);
            read_vec3(p.box_hi);
            read_vec3(p.material.body_reflectance);
            scene.primitives.push_back(p);
        } else {
            throw std::runtime_error("scene file: unknown record " + tok);
        }
    }
    validate_scene(scene);
    return scene;
}

} // namespace radlab
