#pragma once

// WCAG 2.1 contrast ratio and CIEDE2000 color difference.

#include <algorithm>
#include <cmath>

#include "colortune/color.hpp"

namespace colortune {

namespace detail {

// WCAG 2.1 channel linearization. The guidelines use 0.03928 as the
// piecewise threshold, not the 0.04045 of IEC sRGB; the difference is
// below 8-bit quantization but the published constant is kept verbatim.
inline double wcag_channel(double u) {
    return u <= 0.03928 ? u / 12.92 : std::pow((u + 0.055) / 1.055, 2.4);
}

inline double contrast_from_luminance(double la, double lb) {
    const double hi = std::max(la, lb);
    const double lo = std::min(la, lb);
    return (hi + 0.05) / (lo + 0.05);
}

}  // namespace detail

inline double relative_luminance(Rgb01 c) {
    return 0.2126 * detail::wcag_channel(c.r) + 0.7152 * detail::wcag_channel(c.g)
         + 0.0722 * detail::wcag_channel(c.b);
}

inline double relative_luminance(RgbColor c) {
    return relative_luminance(Rgb01{c.r / 255.0, c.g / 255.0, c.b / 255.0});
}

// Symmetric; range [1, 21] over 8-bit colors.
inline double contrast_ratio(RgbColor a, RgbColor b) {
    return detail::contrast_from_luminance(relative_luminance(a), relative_luminance(b));
}

// CIEDE2000 with kL = kC = kH = 1, following the standard formulation
// including the h-bar-prime discontinuity handling.
inline double delta_e_2000(const LabColor& lab1, const LabColor& lab2) {
    constexpr double pow25_7 = 6103515625.0;  // 25^7
    constexpr double deg2rad = detail::kPi / 180.0;

    const double c1 = std::hypot(lab1.a_star, lab1.b_star);
    const double c2 = std::hypot(lab2.a_star, lab2.b_star);
    const double c_bar = 0.5 * (c1 + c2);
    const double c_bar7 = std::pow(c_bar, 7.0);
    const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + pow25_7)));

    const double a1p = (1.0 + g) * lab1.a_star;
    const double a2p = (1.0 + g) * lab2.a_star;
    const double c1p = std::hypot(a1p, lab1.b_star);
    const double c2p = std::hypot(a2p, lab2.b_star);

    const auto hue_prime = [](double ap, double b) {
        if (ap == 0.0 && b == 0.0) return 0.0;
        double h = std::atan2(b, ap) / deg2rad;
        return h < 0.0 ? h + 360.0 : h;
    };
    const double h1p = hue_prime(a1p, lab1.b_star);
    const double h2p = hue_prime(a2p, lab2.b_star);

    const double dlp = lab2.l_star - lab1.l_star;
    const double dcp = c2p - c1p;

    double dhp = 0.0;
    if (c1p * c2p != 0.0) {
        dhp = h2p - h1p;
        if (dhp > 180.0) {
            dhp -= 360.0;
        } else if (dhp < -180.0) {
            dhp += 360.0;
        }
    }
    const double dHp = 2.0 * std::sqrt(c1p * c2p) * std::sin(0.5 * dhp * deg2rad);

    const double l_bar = 0.5 * (lab1.l_star + lab2.l_star);
    const double cp_bar = 0.5 * (c1p + c2p);

    double h_bar = h1p + h2p;
    if (c1p * c2p != 0.0) {
        if (std::fabs(h1p - h2p) <= 180.0) {
            h_bar *= 0.5;
        } else if (h1p + h2p < 360.0) {
            h_bar = 0.5 * (h_bar + 360.0);
        } else {
            h_bar = 0.5 * (h_bar - 360.0);
        }
    }

    const double t = 1.0 - 0.17 * std::cos((h_bar - 30.0) * deg2rad)
                   + 0.24 * std::cos(2.0 * h_bar * deg2rad)
                   + 0.32 * std::cos((3.0 * h_bar + 6.0) * deg2rad)
                   - 0.20 * std::cos((4.0 * h_bar - 63.0) * deg2rad);

    const double dtheta = 30.0 * std::exp(-((h_bar - 275.0) / 25.0) * ((h_bar - 275.0) / 25.0));
    const double cp_bar7 = std::pow(cp_bar, 7.0);
    const double rc = 2.0 * std::sqrt(cp_bar7 / (cp_bar7 + pow25_7));

    const double l50 = (l_bar - 50.0) * (l_bar - 50.0);
    const double sl = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
    const double sc = 1.0 + 0.045 * cp_bar;
    const double sh = 1.0 + 0.015 * cp_bar * t;
    const double rt = -std::sin(2.0 * dtheta * deg2rad) * rc;

    const double vl = dlp / sl;
    const double vc = dcp / sc;
    const double vh = dHp / sh;
    return std::sqrt(vl * vl + vc * vc + vh * vh + rt * vc * vh);
}

inline double delta_e_2000(RgbColor a, RgbColor b) {
    return delta_e_2000(srgb_to_lab(a), srgb_to_lab(b));
}

inline double delta_e_2000(Rgb01 a, Rgb01 b) {
    return delta_e_2000(rgb01_to_lab(a), rgb01_to_lab(b));
}

}  // namespace colortune
