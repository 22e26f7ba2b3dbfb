#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "colortune/optimizer.hpp"

#include "gradient_points.hpp"

using namespace colortune;

namespace {

RgbColor random_color(std::mt19937& rng) {
    return {static_cast<std::uint8_t>(rng() % 256), static_cast<std::uint8_t>(rng() % 256),
            static_cast<std::uint8_t>(rng() % 256)};
}

double hue_distance(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 360.0);
    return d > 180.0 ? 360.0 - d : d;
}

// Brute-force lightness sweep at fixed chroma and hue: the lowest-delta-E
// compliant quantized color, if any.
struct SweepResult {
    bool found = false;
    double delta_e = 0.0;
    double contrast = 0.0;
};

SweepResult sweep_lightness(RgbColor text, RgbColor bg, double delta_max, double tau,
                            int steps = 4096) {
    const OklchColor t = srgb_to_oklch(text);
    SweepResult best;
    for (int k = 0; k < steps; ++k) {
        const double l = static_cast<double>(k) / (steps - 1);
        const auto probe = oklch_to_srgb({l, t.c, t.h});
        if (!probe) continue;
        const double de = delta_e_2000(text, *probe);
        if (de > delta_max) continue;
        const double rho = contrast_ratio(*probe, bg);
        if (rho >= tau && (!best.found || de < best.delta_e)) {
            best = {true, de, rho};
        }
    }
    return best;
}

}  // namespace

TEST_CASE("compliance targets per text size") {
    const auto normal = ComplianceTarget::for_text_size(false);
    CHECK(normal.tau_target == 7.0);
    CHECK(normal.tau_min == 4.5);
    const auto large = ComplianceTarget::for_text_size(true);
    CHECK(large.tau_target == 4.5);
    CHECK(large.tau_min == 3.0);
}

TEST_CASE("delta-e schedule") {
    REQUIRE(kDeltaESchedule.size() == 17);
    CHECK(kDeltaESchedule.front() == 0.8);
    CHECK(kDeltaESchedule.back() == 5.0);
    for (std::size_t i = 1; i < kDeltaESchedule.size(); ++i) {
        CHECK(kDeltaESchedule[i] > kDeltaESchedule[i - 1]);
    }
}

TEST_CASE("binary search cannot bridge near-identical luminances") {
    const auto cand = binary_search_lightness(parse_hex("#808080"), parse_hex("#7F7F7F"), 0.8, 7.0);
    if (cand) {
        CHECK(cand->contrast < 7.0);
        CHECK(cand->delta_e <= 0.8);
    }
}

TEST_CASE("binary search converges to zero change on compliant input") {
    const auto cand = binary_search_lightness({0, 0, 0}, {255, 255, 255}, 2.0, 7.0);
    REQUIRE(cand.has_value());
    CHECK(cand->contrast >= 7.0);
    CHECK_THAT(cand->delta_e, Catch::Matchers::WithinAbs(0.0, 0.05));
}

TEST_CASE("binary search matches the lightness sweep oracle") {
    struct Case {
        const char* text;
        const char* bg;
        double delta_max;
    };
    for (const Case& tc : {Case{"#8B1A1A", "#FFFFFF", 2.0}, Case{"#B03030", "#FFFFFF", 2.0},
                           Case{"#406080", "#101418", 5.0}}) {
        CAPTURE(tc.text, tc.bg, tc.delta_max);
        const RgbColor text = parse_hex(tc.text);
        const RgbColor bg = parse_hex(tc.bg);
        const auto oracle = sweep_lightness(text, bg, tc.delta_max, 7.0);
        const auto cand = binary_search_lightness(text, bg, tc.delta_max, 7.0);
        if (oracle.found) {
            REQUIRE(cand.has_value());
            CHECK(cand->contrast >= 7.0);
            CHECK(cand->delta_e <= oracle.delta_e + 0.1);
        }
    }
}

TEST_CASE("gd_cost values") {
    // Already compliant with zero perceptual change: every term vanishes.
    const OklchColor black = srgb_to_oklch({0, 0, 0});
    CHECK(gd_cost(black.l, black.c, black.h, {0, 0, 0}, {255, 255, 255}, 7.0, 2.0) < 1e-3);

    // Out of gamut.
    CHECK(gd_cost(0.5, 0.5, 145.0, {0, 0, 0}, {255, 255, 255}, 7.0, 2.0) == 1e6);

    // Hinge arithmetic against independently computed terms.
    const RgbColor text = parse_hex("#FF5733");
    const RgbColor bg = parse_hex("#FFFFFF");
    const OklchColor t = srgb_to_oklch(text);
    const double l = t.l - 0.05;
    const auto rgb = oklch_to_rgb01({l, t.c, t.h});
    REQUIRE(rgb.has_value());
    const double de = delta_e_2000(rgb01_to_lab(*rgb), srgb_to_lab(text));
    const double rho = colortune::detail::contrast_from_luminance(relative_luminance(*rgb),
                                                                  relative_luminance(bg));
    const double expected = 1000.0 * std::max(0.0, 7.0 - rho)
                          + 10000.0 * std::max(0.0, de - 2.0) + 100.0 * de;
    CHECK_THAT(gd_cost(l, t.c, t.h, text, bg, 7.0, 2.0),
               Catch::Matchers::WithinRel(expected, 1e-12));
}

TEST_CASE("gd_gradient is zero when all probes are out of gamut") {
    const auto g = gd_gradient(0.5, 0.45, 145.0, {0, 0, 0}, {255, 255, 255}, 7.0, 2.0);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.0);
}

TEST_CASE("gd_gradient agrees with a finer finite difference at smooth points") {
    const auto points = testdata::smooth_gradient_points(25, 2024);
    for (const auto& p : points) {
        const OklchColor t = srgb_to_oklch(p.text);
        const auto g = gd_gradient(p.l, p.c, t.h, p.text, p.bg, p.tau, p.delta_max);
        constexpr double eps = 1e-5;
        const double gl = (gd_cost(p.l + eps, p.c, t.h, p.text, p.bg, p.tau, p.delta_max)
                           - gd_cost(p.l - eps, p.c, t.h, p.text, p.bg, p.tau, p.delta_max))
                        / (2 * eps);
        const double gc = (gd_cost(p.l, p.c + eps, t.h, p.text, p.bg, p.tau, p.delta_max)
                           - gd_cost(p.l, p.c - eps, t.h, p.text, p.bg, p.tau, p.delta_max))
                        / (2 * eps);
        const double err = std::hypot(g[0] - gl, g[1] - gc);
        const double scale = std::max(std::hypot(gl, gc), 1e-9);
        CAPTURE(p.l, p.c, g[0], g[1], gl, gc);
        CHECK(err / scale <= 0.01);
    }
}

TEST_CASE("gradient descent echoes an already compliant input") {
    const auto cand = gradient_descent_oklch({0, 0, 0}, {255, 255, 255}, 2.0, 7.0);
    REQUIRE(cand.has_value());
    CHECK(cand->color == RgbColor{0, 0, 0});
    CHECK(cand->delta_e == 0.0);
}

TEST_CASE("gradient descent fails gracefully on mid gray over gray") {
    CHECK_FALSE(gradient_descent_oklch(parse_hex("#808080"), parse_hex("#7F7F7F"), 0.8, 7.0)
                    .has_value());
}

TEST_CASE("gradient descent reaches the grid optimum on a saturated accent") {
    const RgbColor text = parse_hex("#E91E63");
    const RgbColor bg = parse_hex("#FFFFFF");
    const double rho0 = contrast_ratio(text, bg);
    REQUIRE(rho0 < 4.5);  // fails AA for normal text

    const auto cand = gradient_descent_oklch(text, bg, 2.0, 7.0);
    REQUIRE(cand.has_value());
    CHECK(cand->delta_e <= 2.0);
    CHECK(cand->contrast > rho0);

    // Dense grid search over the clamped (L, C) rectangle.
    const OklchColor t = srgb_to_oklch(text);
    double grid_best = 1e18;
    for (int i = 0; i < 200; ++i) {
        for (int j = 0; j < 200; ++j) {
            const double l = static_cast<double>(i) / 199.0;
            const double c = 0.5 * static_cast<double>(j) / 199.0;
            grid_best = std::min(grid_best, gd_cost(l, c, t.h, text, bg, 7.0, 2.0));
        }
    }
    const OklchColor reached = srgb_to_oklch(cand->color);
    const double reached_cost = gd_cost(reached.l, reached.c, t.h, text, bg, 7.0, 2.0);
    CHECK(reached_cost <= 1.05 * grid_best);
}

TEST_CASE("select_better replacement rules") {
    const auto cand = [](double rho, double de) {
        return Candidate{RgbColor{1, 2, 3}, rho, de};
    };
    const auto chosen = [](const Candidate& best, const Candidate& incoming) {
        return select_better(best, incoming, 7.0);
    };

    // A compliant candidate always beats a non-compliant best.
    CHECK(chosen(cand(4.0, 1.0), cand(7.2, 1.8)).contrast == 7.2);
    // A compliant best is never displaced by a higher-delta-E candidate.
    CHECK(chosen(cand(7.2, 0.9), cand(7.5, 3.0)).contrast == 7.2);
    // Equal contrast, strictly lower delta-E wins.
    CHECK(chosen(cand(3.0, 0.5), cand(3.0, 0.3)).delta_e == 0.3);

    // Compliant vs compliant: lower delta-E wins regardless of contrast.
    CHECK(chosen(cand(7.2, 1.8), cand(7.1, 0.9)).delta_e == 0.9);
    // Higher contrast outside the maximum budget never wins.
    CHECK(chosen(cand(3.0, 0.5), cand(4.0, 5.5)).contrast == 3.0);
    // Higher contrast within budget wins while best is non-compliant.
    CHECK(chosen(cand(3.0, 0.5), cand(4.0, 4.9)).contrast == 4.0);
    // Equal contrast, higher delta-E loses.
    CHECK(chosen(cand(3.0, 0.5), cand(3.0, 0.7)).delta_e == 0.5);
}

TEST_CASE("already compliant input is returned untouched") {
    const auto res = generate_accessible_color({0, 0, 0}, {255, 255, 255}, false);
    CHECK(res.color == RgbColor{0, 0, 0});
    CHECK(res.contrast == 21.0);
    CHECK(res.delta_e == 0.0);
    CHECK(res.compliance == Compliance::TargetMet);
    CHECK(res.phase == Phase::None);
}

TEST_CASE("impossible pair returns the input unchanged") {
    const auto res =
        generate_accessible_color(parse_hex("#808080"), parse_hex("#7F7F7F"), false);
    CHECK(res.color == parse_hex("#808080"));
    CHECK(res.delta_e == 0.0);
    CHECK(res.compliance == Compliance::Unchanged);
    CHECK(res.phase == Phase::None);
}

TEST_CASE("tuning a saturated orange on white") {
    const RgbColor text = parse_hex("#FF5733");
    const RgbColor bg = parse_hex("#FFFFFF");
    const auto res = generate_accessible_color(text, bg, false);

    // All fields must agree with an independent recomputation.
    CHECK(res.contrast == contrast_ratio(res.color, bg));
    CHECK(res.delta_e == delta_e_2000(text, res.color));
    CHECK(res.contrast >= contrast_ratio(text, bg));
    CHECK(res.delta_e <= 5.0);

    const OklchColor in = srgb_to_oklch(text);
    const OklchColor out = srgb_to_oklch(res.color);
    if (out.c >= kAchromaticChroma) {
        CHECK(hue_distance(in.h, out.h) <= 0.5);
    }
}

TEST_CASE("optimizer invariants on random pairs") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 250; ++i) {
        const RgbColor text = random_color(rng);
        const RgbColor bg = random_color(rng);
        CAPTURE(format_hex(text), format_hex(bg));
        const auto res = generate_accessible_color(text, bg, false);

        const double rho0 = contrast_ratio(text, bg);
        CHECK(res.contrast >= rho0);
        CHECK(res.delta_e <= 5.0);
        CHECK(res.contrast == contrast_ratio(res.color, bg));
        CHECK(res.delta_e == delta_e_2000(text, res.color));

        if (res.compliance == Compliance::TargetMet) {
            CHECK(res.contrast >= 7.0);
        } else {
            CHECK(res.contrast < 7.0);
        }
        if (res.compliance == Compliance::MinimumMet) {
            CHECK(res.contrast >= 4.5);
        }
        if (res.compliance == Compliance::Unchanged) {
            CHECK(res.color == text);
            CHECK(res.delta_e == 0.0);
        }

        const OklchColor in = srgb_to_oklch(text);
        const OklchColor out = srgb_to_oklch(res.color);
        if (in.c >= kAchromaticChroma && out.c >= kAchromaticChroma) {
            CHECK(hue_distance(in.h, out.h) <= 0.5);
        }

        // Determinism: bit-identical on repetition.
        const auto again = generate_accessible_color(text, bg, false);
        CHECK(again.color == res.color);
        CHECK(again.contrast == res.contrast);
        CHECK(again.delta_e == res.delta_e);
        CHECK(again.compliance == res.compliance);
        CHECK(again.phase == res.phase);

        // Idempotence on compliant results.
        if (res.compliance == Compliance::TargetMet) {
            const auto rerun = generate_accessible_color(res.color, bg, false);
            CHECK(rerun.color == res.color);
            CHECK(rerun.compliance == Compliance::TargetMet);
        }
    }
}

TEST_CASE("large text thresholds are honored") {
    // 4.6:1 passes the large-text target outright.
    const RgbColor text = parse_hex("#757575");
    const RgbColor bg = parse_hex("#FFFFFF");
    const double rho0 = contrast_ratio(text, bg);
    REQUIRE(rho0 >= 4.5);
    REQUIRE(rho0 < 7.0);
    const auto large = generate_accessible_color(text, bg, true);
    CHECK(large.compliance == Compliance::TargetMet);
    CHECK(large.color == text);
    const auto normal = generate_accessible_color(text, bg, false);
    CHECK(normal.contrast >= rho0);
}
