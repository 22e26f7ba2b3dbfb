#pragma once

// Three-phase contrast optimizer working in OKLCH with hue held fixed:
//   phase 1: binary search on lightness
//   phase 2: gradient descent on (lightness, chroma) with a penalty cost
//   phase 3: orchestration over a progressive delta-E budget schedule
//            with best-candidate tracking.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

#include "colortune/color.hpp"
#include "colortune/metrics.hpp"

namespace colortune {

// Contrast thresholds derived from the WCAG text-size class: the optimizer
// aims for the AAA-level target and accepts the AA-level floor.
struct ComplianceTarget {
    bool large_text = false;
    double tau_target = 7.0;
    double tau_min = 4.5;

    static constexpr ComplianceTarget for_text_size(bool large_text) {
        return large_text ? ComplianceTarget{true, 4.5, 3.0} : ComplianceTarget{false, 7.0, 4.5};
    }
};

// Progressive delta-E budget schedule, strictly increasing.
inline constexpr std::array<double, 17> kDeltaESchedule = {
    0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.1, 2.2, 2.3, 2.4, 2.5, 2.7, 3.0, 3.5, 4.0, 5.0};

// The maximum budget in the schedule; no returned change ever exceeds it.
inline constexpr double kMaxDeltaE = 5.0;

struct Candidate {
    RgbColor color;
    double contrast = 0.0;
    double delta_e = 0.0;
};

enum class Compliance : std::uint8_t { TargetMet, MinimumMet, Unchanged, Improved };

enum class Phase : std::uint8_t { None, BinarySearch, GradientDescent };

struct TuneResult {
    RgbColor color;
    double contrast = 0.0;
    double delta_e = 0.0;
    Compliance compliance = Compliance::Unchanged;
    Phase phase = Phase::None;
};

namespace detail {

struct PairContext {
    OklchColor text_oklch;
    LabColor text_lab;
    double bg_luminance = 0.0;
    double initial_contrast = 0.0;

    static PairContext make(RgbColor text, RgbColor bg) {
        PairContext ctx;
        ctx.text_oklch = srgb_to_oklch(text);
        ctx.text_lab = srgb_to_lab(text);
        ctx.bg_luminance = relative_luminance(bg);
        ctx.initial_contrast =
            contrast_from_luminance(relative_luminance(text), ctx.bg_luminance);
        return ctx;
    }
};

inline Candidate evaluate_candidate(RgbColor color, const PairContext& ctx) {
    // Metrics are always recomputed on the quantized color; budgets bind on
    // what users receive, not on the continuous point that produced it.
    return {color, contrast_from_luminance(relative_luminance(color), ctx.bg_luminance),
            delta_e_2000(ctx.text_lab, srgb_to_lab(color))};
}

}  // namespace detail

// Phase 1. Holds chroma and hue of the text color fixed and bisects on
// lightness, moving away from the background's side of mid-lightness.
// Tracks the lowest-delta-E compliant probe, falling back to the
// highest-contrast probe within budget; nullopt when no in-gamut probe
// within budget was seen.
inline std::optional<Candidate> binary_search_lightness(RgbColor text, RgbColor bg,
                                                        double delta_max, double tau_target) {
    const auto ctx = detail::PairContext::make(text, bg);
    const OklchColor bg_oklch = srgb_to_oklch(bg);
    const bool search_up = bg_oklch.l < 0.5;  // lighten on dark bg, darken on light bg

    double lo = search_up ? ctx.text_oklch.l : 0.0;
    double hi = search_up ? 1.0 : ctx.text_oklch.l;

    // Compliant probes are ranked by delta-E; sub-compliant probes are kept
    // separately as a best-effort fallback ranked by contrast, so that a
    // near-boundary fallback can never mask a compliant solution.
    std::optional<Candidate> compliant;
    std::optional<Candidate> fallback;

    for (int i = 0; i < 20; ++i) {
        const double mid = 0.5 * (lo + hi);
        const auto probe = oklch_to_srgb({mid, ctx.text_oklch.c, ctx.text_oklch.h});
        if (!probe) {
            // The gamut closes toward the lightness extremes: the invalid
            // region lies beyond the probe in the search direction.
            (search_up ? hi : lo) = mid;
            continue;
        }
        const Candidate cand = detail::evaluate_candidate(*probe, ctx);
        if (cand.delta_e > delta_max) {
            // Over budget: pull the interval back toward the original L.
            (search_up ? hi : lo) = mid;
            continue;
        }
        if (cand.contrast >= tau_target) {
            if (!compliant || cand.delta_e < compliant->delta_e) compliant = cand;
            // Compliant: keep searching closer to the original for lower dE.
            (search_up ? hi : lo) = mid;
        } else {
            // Needs more contrast: push away from the original.
            (search_up ? lo : hi) = mid;
            if (!fallback || cand.contrast > fallback->contrast) fallback = cand;
        }
    }
    return compliant ? compliant : fallback;
}

namespace detail {

struct CostContext {
    double hue = 0.0;
    LabColor text_lab;
    double bg_luminance = 0.0;
    double tau = 0.0;
    double delta_max = 0.0;
};

inline double gd_cost(double l, double c, const CostContext& ctx) {
    l = std::clamp(l, 0.0, 1.0);
    c = std::clamp(c, 0.0, 0.5);
    const auto rgb = oklch_to_rgb01({l, c, ctx.hue});
    if (!rgb) return 1e6;
    const double de = delta_e_2000(ctx.text_lab, rgb01_to_lab(*rgb));
    const double rho = contrast_from_luminance(relative_luminance(*rgb), ctx.bg_luminance);
    return 1000.0 * std::max(0.0, ctx.tau - rho) + 10000.0 * std::max(0.0, de - ctx.delta_max)
         + 100.0 * de;
}

inline std::array<double, 2> gd_gradient(double l, double c, const CostContext& ctx) {
    constexpr double eps = 1e-4;
    return {(gd_cost(l + eps, c, ctx) - gd_cost(l - eps, c, ctx)) / (2.0 * eps),
            (gd_cost(l, c + eps, ctx) - gd_cost(l, c - eps, ctx)) / (2.0 * eps)};
}

}  // namespace detail

// Penalty cost of a clamped (L, C) point at fixed hue: 10^6 out of gamut,
// otherwise 1000*max(0, tau - rho) + 10000*max(0, dE - delta_max) + 100*dE
// evaluated on the continuous (unquantized) color.
inline double gd_cost(double l, double c, double hue, RgbColor text, RgbColor bg, double tau,
                      double delta_max) {
    return detail::gd_cost(
        l, c, {hue, srgb_to_lab(text), relative_luminance(bg), tau, delta_max});
}

// Central finite differences of gd_cost, step 1e-4 per coordinate.
inline std::array<double, 2> gd_gradient(double l, double c, double hue, RgbColor text,
                                         RgbColor bg, double tau, double delta_max) {
    return detail::gd_gradient(
        l, c, {hue, srgb_to_lab(text), relative_luminance(bg), tau, delta_max});
}

// Phase 2. Descends the penalty cost over (L, C) with hue fixed, at most 50
// iterations with trial step alpha_t = 0.02 * 0.95^floor(t/10). Each raw
// step is backtracked (halved) until the cost strictly decreases; the raw
// penalty gradients are large enough that an unguarded step of that size
// always overshoots the [0,1]x[0,0.5] box. Stops when no decreasing step
// exists or successive costs differ by less than 1e-6.
inline std::optional<Candidate> gradient_descent_oklch(RgbColor text, RgbColor bg,
                                                       double delta_max, double tau_target) {
    const auto pair_ctx = detail::PairContext::make(text, bg);
    const detail::CostContext ctx{pair_ctx.text_oklch.h, pair_ctx.text_lab,
                                  pair_ctx.bg_luminance, tau_target, delta_max};

    const double l0 = pair_ctx.text_oklch.l;
    const double c0 = std::clamp(pair_ctx.text_oklch.c, 0.0, 0.5);
    double l = l0;
    double c = c0;
    double cost_cur = detail::gd_cost(l, c, ctx);
    double step_scale = 0.02;

    for (int t = 1; t <= 50; ++t) {
        const auto g = detail::gd_gradient(l, c, ctx);
        const double alpha_t = 0.02 * std::pow(0.95, t / 10);
        double s = std::min(alpha_t, 4.0 * step_scale);
        const double prev = cost_cur;
        bool accepted = false;
        for (int k = 0; k < 31; ++k) {
            const double nl = std::clamp(l - s * g[0], 0.0, 1.0);
            const double nc = std::clamp(c - s * g[1], 0.0, 0.5);
            const double ncost = detail::gd_cost(nl, nc, ctx);
            if (ncost < cost_cur) {
                l = nl;
                c = nc;
                cost_cur = ncost;
                step_scale = s;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) break;
        if (std::fabs(prev - cost_cur) < 1e-6) break;
    }

    const auto quantized = [&](double ql, double qc) -> std::optional<Candidate> {
        const auto rgb = oklch_to_srgb({ql, qc, ctx.hue});
        if (!rgb) return std::nullopt;
        return detail::evaluate_candidate(*rgb, pair_ctx);
    };

    std::optional<Candidate> result = quantized(l, c);
    if (!result || result->delta_e > delta_max) {
        // The continuous endpoint met the budget but its 8-bit rounding may
        // not; walk back along the segment toward the start point for the
        // farthest quantized color that fits.
        result.reset();
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 20; ++i) {
            const double mid = 0.5 * (lo + hi);
            const auto probe = quantized(l0 + mid * (l - l0), c0 + mid * (c - c0));
            if (probe && probe->delta_e <= delta_max) {
                result = probe;
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (!result) return std::nullopt;
    }
    if (result->color == text && pair_ctx.initial_contrast < tau_target) {
        // The descent produced no usable change on a non-compliant input;
        // report failure rather than echoing it.
        return std::nullopt;
    }
    return result;
}

// Candidate replacement rules, applied in order:
//   (a) a compliant candidate beats a non-compliant best, and beats a
//       compliant best only with strictly lower delta-E;
//   (b) while the best is non-compliant, strictly higher contrast within
//       the maximum budget wins;
//   (c) at equal contrast, strictly lower delta-E wins.
inline bool candidate_improves(const Candidate& best, const Candidate& incoming,
                               double tau_target) {
    const bool best_compliant = best.contrast >= tau_target;
    if (incoming.contrast >= tau_target && (!best_compliant || incoming.delta_e < best.delta_e)) {
        return true;
    }
    if (!best_compliant && incoming.contrast > best.contrast && incoming.delta_e <= kMaxDeltaE) {
        return true;
    }
    if (incoming.contrast == best.contrast && incoming.delta_e < best.delta_e) {
        return true;
    }
    return false;
}

inline Candidate select_better(const Candidate& best, const Candidate& incoming,
                               double tau_target) {
    return candidate_improves(best, incoming, tau_target) ? incoming : best;
}

namespace detail {

// Hue deviation in degrees, mod 360.
inline double hue_distance(double a, double b) {
    double d = std::fabs(a - b);
    d = std::fmod(d, 360.0);
    return d > 180.0 ? 360.0 - d : d;
}

// 8-bit quantization can rotate the hue of a low-chroma winner beyond the
// preservation tolerance even though the continuous point sits exactly on
// the input's hue ray. Search the candidate's channel neighborhood for the
// lowest-delta-E color that restores the hue without giving up the
// compliance class already achieved.
inline constexpr double kHueRepairTolerance = 0.45;

inline std::optional<Candidate> repair_hue(const Candidate& cand, const PairContext& ctx,
                                           double required_contrast) {
    for (int radius = 1; radius <= 2; ++radius) {
        std::optional<Candidate> best;
        for (int dr = -radius; dr <= radius; ++dr) {
            for (int dg = -radius; dg <= radius; ++dg) {
                for (int db = -radius; db <= radius; ++db) {
                    const int r = cand.color.r + dr;
                    const int g = cand.color.g + dg;
                    const int b = cand.color.b + db;
                    if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) continue;
                    const RgbColor neighbor{static_cast<std::uint8_t>(r),
                                            static_cast<std::uint8_t>(g),
                                            static_cast<std::uint8_t>(b)};
                    const OklchColor lch = srgb_to_oklch(neighbor);
                    if (lch.c < kAchromaticChroma
                        || hue_distance(lch.h, ctx.text_oklch.h) > kHueRepairTolerance) {
                        continue;
                    }
                    const Candidate fixed = evaluate_candidate(neighbor, ctx);
                    if (fixed.contrast < required_contrast || fixed.delta_e > kMaxDeltaE) {
                        continue;
                    }
                    if (!best || fixed.delta_e < best->delta_e) best = fixed;
                }
            }
        }
        if (best) return best;
    }
    return std::nullopt;
}

}  // namespace detail

// Phase 3. Returns the input unchanged when it already meets the target;
// otherwise sweeps the budget schedule, folds both phases' candidates
// through the replacement rules, and stops early once the minimum threshold
// is met at the 2.5 budget tier. When nothing within the maximum budget
// reaches the minimum threshold the input is returned unchanged.
inline TuneResult generate_accessible_color(RgbColor text, RgbColor bg, bool large_text) {
    const auto target = ComplianceTarget::for_text_size(large_text);
    const auto ctx = detail::PairContext::make(text, bg);
    const double rho0 = ctx.initial_contrast;

    if (rho0 >= target.tau_target) {
        return {text, rho0, 0.0, Compliance::TargetMet, Phase::None};
    }

    Candidate best{text, rho0, 0.0};
    Phase best_phase = Phase::None;

    for (const double delta_max : kDeltaESchedule) {
        const auto c1 = binary_search_lightness(text, bg, delta_max, target.tau_target);
        if (c1 && candidate_improves(best, *c1, target.tau_target)) {
            best = *c1;
            best_phase = Phase::BinarySearch;
        }
        const auto c2 = gradient_descent_oklch(text, bg, delta_max, target.tau_target);
        if (c2 && candidate_improves(best, *c2, target.tau_target)) {
            best = *c2;
            best_phase = Phase::GradientDescent;
        }
        // Prefer a small minimum-compliant change over chasing the target
        // with large perceptual cost.
        if (delta_max == 2.5 && best.contrast >= target.tau_min) break;
    }

    if (best.color == text || best.contrast < target.tau_min) {
        return {text, rho0, 0.0,
                rho0 >= target.tau_min ? Compliance::MinimumMet : Compliance::Unchanged,
                Phase::None};
    }

    if (ctx.text_oklch.c >= kAchromaticChroma) {
        const OklchColor out = srgb_to_oklch(best.color);
        if (out.c >= kAchromaticChroma
            && detail::hue_distance(out.h, ctx.text_oklch.h) > detail::kHueRepairTolerance) {
            const double required = best.contrast >= target.tau_target
                                        ? target.tau_target
                                        : std::max(target.tau_min, rho0);
            const auto repaired = detail::repair_hue(best, ctx, required);
            if (!repaired) {
                return {text, rho0, 0.0,
                        rho0 >= target.tau_min ? Compliance::MinimumMet : Compliance::Unchanged,
                        Phase::None};
            }
            best = *repaired;
        }
    }

    const Compliance compliance = best.contrast >= target.tau_target ? Compliance::TargetMet
                                                                     : Compliance::MinimumMet;
    return {best.color, best.contrast, best.delta_e, compliance, best_phase};
}

}  // namespace colortune
