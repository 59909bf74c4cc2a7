// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "radlab/colorspace.h"
#include "radlab/rng.h"

using namespace radlab;

namespace {

const ColorSpace kAllSpaces[] = {
    ColorSpace::linear(),  ColorSpace::srgb_gamma(),       ColorSpace::gplog(),
    ColorSpace::truelog(), ColorSpace::scaledlog(25500.0), ColorSpace::scaledlog(25.5),
};

// Literal two-step normalized-log pipeline evaluated in extended precision;
// the production code uses the algebraically simplified closed form.
long double truelog_literal(long double x) {
    auto f = [](long double v) -> long double {
        const long double e = 2.718281828459045235360287471352662498L;
        long double inner = expl(logl(std::max(255.0L * v, 1.0L)) - 1.0L);
        return logl(inner * 255.0L / (e - 1.0L));
    };
    const long double xmin = 1.0L / 255.0L;
    return (f(x) - f(xmin)) / (f(1.0L) - f(xmin));
}

double central_fd(const ColorSpace &s, double x, double h) {
    return (forward_transform(s, x + h) - forward_transform(s, x - h)) / (2 * h);
}

} // namespace

TEST_CASE("forward transform fixed points and frozen values") {
    const ColorSpace gplog = ColorSpace::gplog();
    CHECK(forward_transform(gplog, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(forward_transform(gplog, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(forward_transform(gplog, 0.5) == doctest::Approx(0.6201145069582775).epsilon(1e-12));

    CHECK(forward_transform(ColorSpace::srgb_gamma(), 0.5) ==
          doctest::Approx(0.7318143190404220).epsilon(1e-12));

    const ColorSpace truelog = ColorSpace::truelog();
    CHECK(forward_transform(truelog, 1.0 / 255.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(forward_transform(truelog, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(forward_transform(truelog, 0.1) == doctest::Approx(0.5844656955531585).epsilon(1e-12));
    CHECK(forward_transform(truelog, 0.0) == 0.0);

    const ColorSpace log100 = ColorSpace::scaledlog(25500.0);
    CHECK(forward_transform(log100, 0.0) == 0.0);
    CHECK(forward_transform(log100, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

    for (const auto &s : kAllSpaces) {
        CHECK(forward_transform(s, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
        if (s.kind != ColorSpaceKind::TrueLog) CHECK(forward_transform(s, 0.0) == 0.0);
    }

    // Inputs are clamped into [0, 1] before the map.
    CHECK(forward_transform(gplog, -0.25) == 0.0);
    CHECK(forward_transform(gplog, 1.25) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(forward_transform(gplog, std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
    CHECK_THROWS_AS(forward_transform(gplog, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("inverse transform endpoints and frozen values") {
    CHECK(inverse_transform(ColorSpace::gplog(), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(inverse_transform(ColorSpace::truelog(), 0.0) ==
          doctest::Approx(1.0 / 255.0).epsilon(1e-14));
    CHECK(inverse_transform(ColorSpace::srgb_gamma(), 0.7318143190404220) ==
          doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(inverse_transform(ColorSpace::gplog(), -0.01), std::invalid_argument);
    CHECK_THROWS_AS(inverse_transform(ColorSpace::gplog(), 1.01), std::invalid_argument);
}

TEST_CASE("round trip property over every space") {
    Rng rng(1234);
    for (const auto &s : kAllSpaces) {
        const double lo = s.domain_lo();
        for (int i = 0; i < 100000; ++i) {
            double x = rng.uniform(lo, 1.0);
            double rt = inverse_transform(s, forward_transform(s, x));
            REQUIRE(std::abs(rt - x) < 1e-9);
        }
    }
}

TEST_CASE("truelog closed form matches the literal normalized pipeline") {
    for (int i = 0; i <= 10000; ++i) {
        double x = i / 10000.0;
        double lit = static_cast<double>(truelog_literal(x));
        // The literal pipeline has no clamp below 1/255; restrict to the
        // invertible domain where both definitions are meant to agree.
        if (x < 1.0 / 255.0) continue;
        REQUIRE(std::abs(forward_transform(ColorSpace::truelog(), x) - lit) < 1e-12);
    }
}

TEST_CASE("monotonicity over every space") {
    Rng rng(99);
    for (const auto &s : kAllSpaces) {
        const double lo = s.domain_lo();
        for (int i = 0; i < 2000; ++i) {
            double a = rng.uniform(lo, 1.0);
            double b = rng.uniform(lo, 1.0);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            REQUIRE(forward_transform(s, a) < forward_transform(s, b));
        }
    }
}

TEST_CASE("derivatives match central finite differences") {
    CHECK(transform_derivative(ColorSpace::linear(), 0.3) == 1.0);
    CHECK(transform_derivative(ColorSpace::gplog(), 0.0) ==
          doctest::Approx(1.7182818284590452).epsilon(1e-12));
    CHECK(transform_derivative(ColorSpace::truelog(), 0.001) == 0.0);

    Rng rng(7);
    const double h = 1e-6;
    for (const auto &s : kAllSpaces) {
        const double lo = s.domain_lo();
        for (int i = 0; i < 2000; ++i) {
            // Stay away from the clamp boundaries where the FD stencil
            // straddles a kink.
            double x = rng.uniform(lo + 1e-3, 1.0 - 1e-3);
            double d = transform_derivative(s, x);
            double fd = central_fd(s, x, h);
            REQUIRE(std::abs(d - fd) / std::max(1.0, std::abs(d)) < 1e-5);
        }
    }
}

TEST_CASE("inverse derivative matches finite differences of the inverse") {
    Rng rng(8);
    const double h = 1e-6;
    for (const auto &s : kAllSpaces) {
        for (int i = 0; i < 2000; ++i) {
            double y = rng.uniform(1e-3, 1.0 - 1e-3);
            double d = inverse_derivative(s, y);
            double fd = (inverse_transform(s, y + h) - inverse_transform(s, y - h)) / (2 * h);
            REQUIRE(std::abs(d - fd) / std::max(1.0, std::abs(d)) < 1e-5);
        }
    }
}

TEST_CASE("convert goes through linear and round-trips") {
    ColorValue gray{{0.5, 0.5, 0.5}, ColorSpace::linear()};
    ColorValue as_gplog = convert(gray, ColorSpace::gplog());
    CHECK(as_gplog.rgb.x == doctest::Approx(0.6201145069582775).epsilon(1e-12));
    CHECK(as_gplog.rgb.y == doctest::Approx(as_gplog.rgb.x).epsilon(1e-15));
    CHECK(as_gplog.space == ColorSpace::gplog());

    Rng rng(21);
    for (const auto &src : kAllSpaces) {
        ColorValue c{{rng.uniform(), rng.uniform(), rng.uniform()}, src};
        ColorValue back = convert(c, c.space);
        CHECK(std::abs(back.rgb.x - c.rgb.x) < 1e-9);
        CHECK(std::abs(back.rgb.y - c.rgb.y) < 1e-9);
        CHECK(std::abs(back.rgb.z - c.rgb.z) < 1e-9);
    }

    ColorValue white{{1, 1, 1}, ColorSpace::gplog()};
    ColorValue w2 = convert(white, ColorSpace::srgb_gamma());
    CHECK(w2.rgb.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w2.rgb.y == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w2.rgb.z == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("luminance weights") {
    CHECK(luminance({{1, 1, 1}, ColorSpace::linear()}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(luminance({{1, 0, 0}, ColorSpace::linear()}) == doctest::Approx(0.299).epsilon(1e-15));
    CHECK(luminance({{0, 0, 1}, ColorSpace::linear()}) == doctest::Approx(0.114).epsilon(1e-15));
    CHECK_THROWS_AS(luminance({{1, 1, 1}, ColorSpace::gplog()}), std::invalid_argument);
}

TEST_CASE("string forms") {
    CHECK(to_string(ColorSpace::linear()) == "linear");
    CHECK(to_string(ColorSpace::srgb_gamma()) == "srgb");
    CHECK(to_string(ColorSpace::gplog()) == "gplog");
    CHECK(to_string(ColorSpace::truelog()) == "truelog");
    CHECK(to_string(ColorSpace::scaledlog(25.5)) == "scaledlog:25.5");

    CHECK(parse_color_space("scaledlog:25500") == ColorSpace::scaledlog(25500.0));
    CHECK(parse_color_space("log100") == ColorSpace::scaledlog(25500.0));
    CHECK(parse_color_space("log01") == ColorSpace::scaledlog(25.5));
    for (const auto &s : kAllSpaces) CHECK(parse_color_space(to_string(s)) == s);

    CHECK_THROWS_AS(parse_color_space("bt709"), std::invalid_argument);
    CHECK_THROWS_AS(parse_color_space("scaledlog:oops"), std::invalid_argument);
    CHECK_THROWS_AS(ColorSpace::scaledlog(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ColorSpace::scaledlog(-3.0), std::invalid_argument);
}
