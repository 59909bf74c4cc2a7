// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#ifndef RADLAB_COLORSPACE_H
#define RADLAB_COLORSPACE_H

#include <string>

#include "radlab/vec.h"

namespace radlab {

// The representation spaces the radiance field can learn in. Every variant's
// forward map is a strictly increasing bijection from [x_lo, 1] onto [0, 1];
// x_lo is 0 for all spaces except TrueLog, whose forward map sends values
// below 1/255 to 0.
enum class ColorSpaceKind {
    Linear,    // identity
    SRGBGamma, // x^(1/2.22), the pure power-law approximation
    GPLog,     // ln(x*(e-1) + 1)
    TrueLog,   // ln(max(255x, 1)) / ln(255)
    ScaledLog, // log(kx + 1) / log(k + 1)
};

struct ColorSpace {
    ColorSpaceKind kind = ColorSpaceKind::Linear;
    double k = 0; // ScaledLog scale coefficient, > 0; unused otherwise

    static ColorSpace linear() { return {ColorSpaceKind::Linear, 0}; }
    static ColorSpace srgb_gamma() { return {ColorSpaceKind::SRGBGamma, 0}; }
    static ColorSpace gplog() { return {ColorSpaceKind::GPLog, 0}; }
    static ColorSpace truelog() { return {ColorSpaceKind::TrueLog, 0}; }
    static ColorSpace scaledlog(double k);
    // Named ScaledLog presets: k = 255*100 and k = 255*0.1.
    static ColorSpace log100() { return scaledlog(25500.0); }
    static ColorSpace log01() { return scaledlog(25.5); }

    bool operator==(const ColorSpace &o) const {
        return kind == o.kind && (kind != ColorSpaceKind::ScaledLog || k == o.k);
    }

    // Lower edge of the invertible input domain (1/255 for TrueLog, else 0).
    double domain_lo() const;
};

// Canonical string forms: linear, srgb, gplog, truelog, scaledlog:<k>.
// parse_color_space additionally accepts the preset aliases log100 and log01.
std::string to_string(const ColorSpace &space);
ColorSpace parse_color_space(const std::string &name);

// Forward transform linear -> representation space. The input is clamped into
// [0, 1] before the map is applied; non-finite input throws.
double forward_transform(const ColorSpace &space, double x);

// Analytic inverse, representation space -> linear. y must lie in [0, 1].
double inverse_transform(const ColorSpace &space, double y);

// d/dx of forward_transform. For TrueLog the clamp region [0, 1/255) has
// derivative 0 (subgradient choice: below-noise-floor values stay untrainable).
double transform_derivative(const ColorSpace &space, double x);

// d/dy of inverse_transform; the reciprocal of transform_derivative evaluated
// at the preimage, in closed form. Needed to backpropagate through the
// representation-to-linear step of the render pipeline.
double inverse_derivative(const ColorSpace &space, double y);

struct ColorValue {
    Vec3 rgb;
    ColorSpace space;
};

inline Vec3 forward_transform(const ColorSpace &space, const Vec3 &v) {
    return {forward_transform(space, v.x), forward_transform(space, v.y),
            forward_transform(space, v.z)};
}
inline Vec3 inverse_transform(const ColorSpace &space, const Vec3 &v) {
    return {inverse_transform(space, v.x), inverse_transform(space, v.y),
            inverse_transform(space, v.z)};
}

// Two-step conversion: source -> linear RGB -> target.
ColorValue convert(const ColorValue &c, const ColorSpace &target);

// Y-weighted luminance 0.299 R + 0.587 G + 0.114 B of a linear-space color.
double luminance(const ColorValue &c);

} // namespace radlab

#endif
