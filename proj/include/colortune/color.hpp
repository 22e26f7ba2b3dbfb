#pragma once

// sRGB <-> OKLCH <-> CIELAB conversion chain with sRGB gamut testing and
// hex parsing/formatting. All math is double precision; 8-bit colors are
// the external currency, continuous triples the optimizer's working form.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace colortune {

struct RgbColor {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    constexpr bool operator==(const RgbColor&) const = default;
};

// Cylindrical OKLAB coordinates. l in [0,1], c >= 0, h in degrees [0,360).
// Colors with c below kAchromaticChroma carry h = 0.
struct OklchColor {
    double l = 0.0;
    double c = 0.0;
    double h = 0.0;
};

// CIELAB, D65 white point, 2-degree observer.
struct LabColor {
    double l_star = 0.0;
    double a_star = 0.0;
    double b_star = 0.0;
};

// Continuous sRGB-encoded channels in [0,1]; used where quantization to
// 8 bits would destroy gradient information.
struct Rgb01 {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

// Tolerance on linear channels when deciding sRGB gamut membership.
inline constexpr double kGamutEpsilon = 1e-6;
// Below this chroma a color is treated as achromatic and its hue is 0.
inline constexpr double kAchromaticChroma = 1e-6;

namespace detail {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline double srgb_decode(double u) {
    return u <= 0.04045 ? u / 12.92 : std::pow((u + 0.055) / 1.055, 2.4);
}

inline double srgb_encode(double v) {
    return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

struct Linear {
    double r, g, b;
};

struct Oklab {
    double l, a, b;
};

inline Linear to_linear(RgbColor c) {
    return {srgb_decode(c.r / 255.0), srgb_decode(c.g / 255.0), srgb_decode(c.b / 255.0)};
}

inline Linear to_linear(Rgb01 c) {
    return {srgb_decode(c.r), srgb_decode(c.g), srgb_decode(c.b)};
}

// Reference OKLAB model matrices (Ottosson), composed with the sRGB primaries.
inline Oklab linear_to_oklab(Linear c) {
    const double l = 0.4122214708 * c.r + 0.5363325363 * c.g + 0.0514459929 * c.b;
    const double m = 0.2119034982 * c.r + 0.6806995451 * c.g + 0.1073969566 * c.b;
    const double s = 0.0883024619 * c.r + 0.2817188376 * c.g + 0.6299787005 * c.b;
    const double l_ = std::cbrt(l);
    const double m_ = std::cbrt(m);
    const double s_ = std::cbrt(s);
    return {0.2104542553 * l_ + 0.7936177850 * m_ - 0.0040720468 * s_,
            1.9779984951 * l_ - 2.4285922050 * m_ + 0.4505937099 * s_,
            0.0259040371 * l_ + 0.7827717662 * m_ - 0.8086757660 * s_};
}

inline Linear oklab_to_linear(Oklab c) {
    const double l_ = c.l + 0.3963377774 * c.a + 0.2158037573 * c.b;
    const double m_ = c.l - 0.1055613458 * c.a - 0.0638541728 * c.b;
    const double s_ = c.l - 0.0894841775 * c.a - 1.2914855480 * c.b;
    const double l = l_ * l_ * l_;
    const double m = m_ * m_ * m_;
    const double s = s_ * s_ * s_;
    return {+4.0767416621 * l - 3.3077115913 * m + 0.2309699292 * s,
            -1.2684380046 * l + 2.6097574011 * m - 0.3413193965 * s,
            -0.0041960863 * l - 0.7034186147 * m + 1.7076147010 * s};
}

inline Oklab oklch_to_oklab(const OklchColor& c) {
    const double h = c.h * kPi / 180.0;
    return {c.l, c.c * std::cos(h), c.c * std::sin(h)};
}

inline bool linear_in_gamut(Linear c) {
    return c.r >= -kGamutEpsilon && c.r <= 1.0 + kGamutEpsilon && c.g >= -kGamutEpsilon
        && c.g <= 1.0 + kGamutEpsilon && c.b >= -kGamutEpsilon && c.b <= 1.0 + kGamutEpsilon;
}

inline double clamp01(double v) {
    return std::clamp(v, 0.0, 1.0);
}

// Round-to-nearest, ties away from zero.
inline std::uint8_t quantize_channel(double encoded01) {
    return static_cast<std::uint8_t>(std::lround(encoded01 * 255.0));
}

inline int hex_digit(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    return -1;
}

}  // namespace detail

inline OklchColor srgb_to_oklch(RgbColor c) {
    const detail::Oklab lab = detail::linear_to_oklab(detail::to_linear(c));
    const double chroma = std::hypot(lab.a, lab.b);
    double hue = 0.0;
    if (chroma >= kAchromaticChroma) {
        hue = std::atan2(lab.b, lab.a) * 180.0 / detail::kPi;
        if (hue < 0.0) hue += 360.0;
        if (hue >= 360.0) hue = 0.0;
    }
    return {lab.l, chroma, hue};
}

// Continuous inverse: encoded channels without 8-bit quantization.
// Returns nullopt when the point lies outside the sRGB gamut.
inline std::optional<Rgb01> oklch_to_rgb01(const OklchColor& c) {
    const detail::Linear lin = detail::oklab_to_linear(detail::oklch_to_oklab(c));
    if (!detail::linear_in_gamut(lin)) return std::nullopt;
    return Rgb01{detail::srgb_encode(detail::clamp01(lin.r)),
                 detail::srgb_encode(detail::clamp01(lin.g)),
                 detail::srgb_encode(detail::clamp01(lin.b))};
}

inline std::optional<RgbColor> oklch_to_srgb(const OklchColor& c) {
    const auto rgb = oklch_to_rgb01(c);
    if (!rgb) return std::nullopt;
    return RgbColor{detail::quantize_channel(rgb->r), detail::quantize_channel(rgb->g),
                    detail::quantize_channel(rgb->b)};
}

inline bool in_gamut(const OklchColor& c) {
    return detail::linear_in_gamut(detail::oklab_to_linear(detail::oklch_to_oklab(c)));
}

namespace detail {

// Linear sRGB -> XYZ (D65), IEC 61966-2-1 primaries.
inline LabColor linear_to_lab(Linear c) {
    const double x = 0.4124564 * c.r + 0.3575761 * c.g + 0.1804375 * c.b;
    const double y = 0.2126729 * c.r + 0.7151522 * c.g + 0.0721750 * c.b;
    const double z = 0.0193339 * c.r + 0.1191920 * c.g + 0.9503041 * c.b;
    constexpr double xn = 0.95047, yn = 1.0, zn = 1.08883;
    constexpr double delta = 6.0 / 29.0;
    const auto f = [](double t) {
        return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
    };
    const double fx = f(x / xn);
    const double fy = f(y / yn);
    const double fz = f(z / zn);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

}  // namespace detail

inline LabColor srgb_to_lab(RgbColor c) {
    return detail::linear_to_lab(detail::to_linear(c));
}

inline LabColor rgb01_to_lab(Rgb01 c) {
    return detail::linear_to_lab(detail::to_linear(c));
}

// Accepts #RRGGBB or RRGGBB, case-insensitive.
inline RgbColor parse_hex(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && digits.front() == '#') digits.remove_prefix(1);
    if (digits.size() != 6) {
        throw std::invalid_argument("invalid hex color '" + std::string(text)
                                    + "': expected 6 hex digits");
    }
    std::array<int, 6> v{};
    for (std::size_t i = 0; i < 6; ++i) {
        v[i] = detail::hex_digit(digits[i]);
        if (v[i] < 0) {
            throw std::invalid_argument("invalid hex color '" + std::string(text)
                                        + "': non-hex digit");
        }
    }
    return {static_cast<std::uint8_t>(v[0] * 16 + v[1]),
            static_cast<std::uint8_t>(v[2] * 16 + v[3]),
            static_cast<std::uint8_t>(v[4] * 16 + v[5])};
}

inline std::string format_hex(RgbColor c) {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out = "#......";
    out[1] = digits[c.r >> 4];
    out[2] = digits[c.r & 0xF];
    out[3] = digits[c.g >> 4];
    out[4] = digits[c.g & 0xF];
    out[5] = digits[c.b >> 4];
    out[6] = digits[c.b & 0xF];
    return out;
}

}  // namespace colortune
