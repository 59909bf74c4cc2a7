// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "radlab/colorspace.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace radlab {

namespace {

constexpr double kGamma = 2.22;
constexpr double kEMinus1 = 1.7182818284590452353602874713527;
constexpr double kLn255 = 5.5412635451584261462455391880218; // ln(255)
constexpr double kTrueLogLo = 1.0 / 255.0;

[[noreturn]] void bad_input(const char *what) { throw std::invalid_argument(what); }

} // namespace

ColorSpace ColorSpace::scaledlog(double k) {
    if (!(k > 0) || !std::isfinite(k)) bad_input("ScaledLog requires finite k > 0");
    return {ColorSpaceKind::ScaledLog, k};
}

double ColorSpace::domain_lo() const {
    return kind == ColorSpaceKind::TrueLog ? kTrueLogLo : 0.0;
}

std::string to_string(const ColorSpace &space) {
    switch (space.kind) {
    case ColorSpaceKind::Linear: return "linear";
    case ColorSpaceKind::SRGBGamma: return "srgb";
    case ColorSpaceKind::GPLog: return "gplog";
    case ColorSpaceKind::TrueLog: return "truelog";
    case ColorSpaceKind::ScaledLog: {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "scaledlog:%.17g", space.k);
        return buf;
    }
    }
    bad_input("unknown color space kind");
}

ColorSpace parse_color_space(const std::string &name) {
    if (name == "linear") return ColorSpace::linear();
    if (name == "srgb") return ColorSpace::srgb_gamma();
    if (name == "gplog") return ColorSpace::gplog();
    if (name == "truelog") return ColorSpace::truelog();
    if (name == "log100") return ColorSpace::log100();
    if (name == "log01") return ColorSpace::log01();
    if (name.rfind("scaledlog:", 0) == 0) {
        const std::string arg = name.substr(10);
        char *end = nullptr;
        double k = std::strtod(arg.c_str(), &end);
        if (end == arg.c_str() || *end != '\0')
            throw std::invalid_argument("bad scaledlog coefficient: " + name);
        return ColorSpace::scaledlog(k);
    }
    throw std::invalid_argument("unknown color space: " + name);
}

double forward_transform(const ColorSpace &space, double x) {
    if (!std::isfinite(x)) bad_input("forward_transform: non-finite input");
    x = std::clamp(x, 0.0, 1.0);
    switch (space.kind) {
    case ColorSpaceKind::Linear:
        return x;
    case ColorSpaceKind::SRGBGamma:
        return std::pow(x, 1.0 / kGamma);
    case ColorSpaceKind::GPLog:
        return std::log1p(x * kEMinus1);
    case ColorSpaceKind::TrueLog:
        // Algebraically equal to the normalized two-step definition; the
        // inner exponential cancels against the normalization constants.
        return std::log(std::max(255.0 * x, 1.0)) / kLn255;
    case ColorSpaceKind::ScaledLog:
        return std::log1p(space.k * x) / std::log1p(space.k);
    }
    bad_input("unknown color space kind");
}

double inverse_transform(const ColorSpace &space, double y) {
    if (!std::isfinite(y) || y < 0.0 || y > 1.0)
        bad_input("inverse_transform: input outside [0, 1]");
    switch (space.kind) {
    case ColorSpaceKind::Linear:
        return y;
    case ColorSpaceKind::SRGBGamma:
        return std::pow(y, kGamma);
    case ColorSpaceKind::GPLog:
        return std::expm1(y) / kEMinus1;
    case ColorSpaceKind::TrueLog:
        return std::exp((y - 1.0) * kLn255); // 255^(y-1)
    case ColorSpaceKind::ScaledLog:
        return std::expm1(y * std::log1p(space.k)) / space.k;
    }
    bad_input("unknown color space kind");
}

double transform_derivative(const ColorSpace &space, double x) {
    if (!std::isfinite(x)) bad_input("transform_derivative: non-finite input");
    x = std::clamp(x, 0.0, 1.0);
    switch (space.kind) {
    case ColorSpaceKind::Linear:
        return 1.0;
    case ColorSpaceKind::SRGBGamma:
        return (1.0 / kGamma) * std::pow(x, 1.0 / kGamma - 1.0);
    case ColorSpaceKind::GPLog:
        return kEMinus1 / (x * kEMinus1 + 1.0);
    case ColorSpaceKind::TrueLog:
        return x < kTrueLogLo ? 0.0 : 1.0 / (x * kLn255);
    case ColorSpaceKind::ScaledLog:
        return space.k / ((space.k * x + 1.0) * std::log1p(space.k));
    }
    bad_input("unknown color space kind");
}

double inverse_derivative(const ColorSpace &space, double y) {
    if (!std::isfinite(y) || y < 0.0 || y > 1.0)
        bad_input("inverse_derivative: input outside [0, 1]");
    switch (space.kind) {
    case ColorSpaceKind::Linear:
        return 1.0;
    case ColorSpaceKind::SRGBGamma:
        return kGamma * std::pow(y, kGamma - 1.0);
    case ColorSpaceKind::GPLog:
        return std::exp(y) / kEMinus1;
    case ColorSpaceKind::TrueLog:
        return kLn255 * std::exp((y - 1.0) * kLn255);
    case ColorSpaceKind::ScaledLog: {
        const double lk1 = std::log1p(space.k);
        return lk1 * std::exp(y * lk1) / space.k;
    }
    }
    bad_input("unknown color space kind");
}

ColorValue convert(const ColorValue &c, const ColorSpace &target) {
    if (!all_finite(c.rgb)) bad_input("convert: non-finite color");
    Vec3 lin = inverse_transform(c.space, clamp01(c.rgb));
    return {forward_transform(target, lin), target};
}

double luminance(const ColorValue &c) {
    if (c.space.kind != ColorSpaceKind::Linear)
        bad_input("luminance requires a linear-space color");
    return 0.299 * c.rgb.x + 0.587 * c.rgb.y + 0.114 * c.rgb.z;
}

} // namespace radlab
