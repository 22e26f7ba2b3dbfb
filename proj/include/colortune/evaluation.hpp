#pragma once

// Seeded procedural benchmark dataset and aggregate statistics.
//
// Reproducibility contract: datasets are generated with mt19937_64 engines
// seeded per category via splitmix64(splitmix64(seed) ^ category_index).
// Doubles are drawn from the top 53 bits, integers by modulo; both mappings
// are fixed here so a (seed, n, generator_version) triple identifies a
// dataset exactly, on any platform.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "colortune/color.hpp"
#include "colortune/metrics.hpp"
#include "colortune/optimizer.hpp"

namespace colortune {

inline constexpr const char* kGeneratorVersion = "1";

struct DatasetEntry {
    std::string category;
    RgbColor text;
    RgbColor bg;
};

struct EvaluationRecord {
    std::string category;
    RgbColor text;
    RgbColor bg;
    double initial_contrast = 0.0;
    TuneResult result;
    double elapsed_seconds = 0.0;
};

struct CategorySummary {
    std::string name;
    std::size_t count = 0;
    double success_rate = 0.0;
    double median_initial_contrast = 0.0;
    double median_delta_e = 0.0;  // over successes; 0 when none
};

struct SummaryReport {
    std::size_t total_pairs = 0;
    double success_rate = 0.0;         // final contrast >= 4.5
    double high_fidelity_rate = 0.0;   // dE < 2.0 among successes
    double median_delta_e = 0.0;       // over successes
    double median_elapsed_seconds = 0.0;
    double throughput_pairs_per_second = 0.0;
    std::vector<CategorySummary> categories;
    // Reproducibility triple, filled by the caller that generated the data.
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::string generator_version = kGeneratorVersion;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Sampler {
public:
    Sampler(std::uint64_t seed, std::uint64_t category_index)
        : engine_(splitmix64(splitmix64(seed) ^ category_index)) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    // Inclusive range.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    std::uint8_t channel(int lo, int hi) { return static_cast<std::uint8_t>(uniform_int(lo, hi)); }

private:
    std::mt19937_64 engine_;
};

inline double max_in_gamut_chroma(double l, double h) {
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 24; ++i) {
        const double mid = 0.5 * (lo + hi);
        (in_gamut({l, mid, h}) ? lo : hi) = mid;
    }
    return lo;
}

// Draws an OKLCH point and maps it into gamut by chroma reduction if needed.
inline RgbColor sample_oklch(Sampler& rng, double l_lo, double l_hi, double c_lo, double c_hi) {
    const double l = rng.uniform(l_lo, l_hi);
    const double c = rng.uniform(c_lo, c_hi);
    const double h = rng.uniform(0.0, 360.0);
    if (auto rgb = oklch_to_srgb({l, c, h})) return *rgb;
    if (auto rgb = oklch_to_srgb({l, std::min(c, max_in_gamut_chroma(l, h) * 0.999), h})) {
        return *rgb;
    }
    return *oklch_to_srgb({l, 0.0, 0.0});
}

}  // namespace detail

inline constexpr std::size_t kBaseCategoryCount = 5;
inline constexpr std::size_t kEdgeFamilyCount = 5;

inline const char* base_category_name(std::size_t i) {
    static constexpr const char* names[] = {"brand_primary", "dark_ui", "light_ui",
                                            "accent_colors", "pastel"};
    return names[i];
}

inline double base_category_weight(std::size_t i) {
    static constexpr double weights[] = {0.30, 0.25, 0.25, 0.10, 0.10};
    return weights[i];
}

inline const char* edge_family_name(std::size_t i) {
    static constexpr const char* names[] = {
        "edge_bright_yellow_on_white", "edge_mid_gray_on_gray", "edge_red_on_green",
        "edge_orange_on_yellow", "edge_pure_blue_on_black"};
    return names[i];
}

namespace detail {

inline DatasetEntry sample_base_pair(Sampler& rng, std::size_t category) {
    DatasetEntry e;
    e.category = base_category_name(category);
    switch (category) {
        case 0:  // brand_primary: mid colors on near-white or near-black
            e.text = sample_oklch(rng, 0.35, 0.65, 0.08, 0.25);
            if (rng.uniform(0.0, 1.0) < 0.5) {
                e.bg = sample_oklch(rng, 0.92, 1.0, 0.0, 0.02);
            } else {
                e.bg = sample_oklch(rng, 0.0, 0.15, 0.0, 0.02);
            }
            break;
        case 1:  // dark_ui: light low-chroma text on dark backgrounds
            e.text = sample_oklch(rng, 0.75, 0.98, 0.0, 0.08);
            e.bg = sample_oklch(rng, 0.05, 0.25, 0.0, 0.05);
            break;
        case 2:  // light_ui: dark_ui mirrored
            e.text = sample_oklch(rng, 0.02, 0.25, 0.0, 0.08);
            e.bg = sample_oklch(rng, 0.75, 0.95, 0.0, 0.05);
            break;
        case 3:  // accent_colors: high chroma, mid lightness, on white
            e.text = sample_oklch(rng, 0.45, 0.75, 0.15, 0.35);
            e.bg = {255, 255, 255};
            break;
        default:  // pastel: light low-chroma text on dark backgrounds
            e.text = sample_oklch(rng, 0.8, 0.95, 0.03, 0.10);
            e.bg = sample_oklch(rng, 0.05, 0.25, 0.0, 0.05);
            break;
    }
    return e;
}

inline DatasetEntry sample_edge_pair(Sampler& rng, std::size_t family) {
    DatasetEntry e;
    e.category = edge_family_name(family);
    switch (family) {
        case 0: {  // bright yellow on white
            e.text = {255, rng.channel(220, 255), rng.channel(0, 59)};
            const std::uint8_t w = rng.channel(248, 255);
            e.bg = {w, w, w};
            break;
        }
        case 1: {  // mid gray on gray
            const int v = rng.uniform_int(112, 159);
            const int d = rng.uniform_int(-18, 18);
            const auto clampc = [](int x) {
                return static_cast<std::uint8_t>(std::clamp(x, 0, 255));
            };
            e.text = {clampc(v), clampc(v), clampc(v)};
            e.bg = {clampc(v + d), clampc(v + d), clampc(v + d)};
            break;
        }
        case 2:  // red on green
            e.text = {rng.channel(180, 255), rng.channel(0, 59), rng.channel(0, 59)};
            e.bg = {rng.channel(0, 79), rng.channel(120, 199), rng.channel(0, 79)};
            break;
        case 3:  // orange on yellow
            e.text = {rng.channel(230, 255), rng.channel(120, 169), rng.channel(0, 39)};
            e.bg = {rng.channel(240, 255), rng.channel(200, 239), rng.channel(0, 79)};
            break;
        default: {  // pure blue on black; a small bright tail keeps the
                    // family solvable for a handful of members
            const bool bright = rng.uniform(0.0, 1.0) < 0.15;
            const std::uint8_t base = bright ? rng.channel(55, 90) : rng.channel(0, 45);
            e.text = {base, base, rng.channel(215, 255)};
            const std::uint8_t k = rng.channel(0, 20);
            e.bg = {k, k, k};
            break;
        }
    }
    return e;
}

}  // namespace detail

// Deterministic under (seed, n): n base pairs split across the weighted
// categories (floor + largest remainder) plus ceil(edge_fraction * n)
// edge-case pairs assigned round-robin across the five families. Each
// category draws from its own substream, so adding categories does not
// perturb existing ones.
inline std::vector<DatasetEntry> generate_dataset(std::uint64_t seed, std::size_t n,
                                                  double edge_fraction = 0.10) {
    if (n == 0) throw std::invalid_argument("generate_dataset: n must be >= 1");

    std::array<std::size_t, kBaseCategoryCount> counts{};
    std::array<double, kBaseCategoryCount> remainders{};
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < kBaseCategoryCount; ++i) {
        const double exact = base_category_weight(i) * static_cast<double>(n);
        counts[i] = static_cast<std::size_t>(std::floor(exact));
        remainders[i] = exact - std::floor(exact);
        assigned += counts[i];
    }
    while (assigned < n) {
        std::size_t pick = 0;
        for (std::size_t i = 1; i < kBaseCategoryCount; ++i) {
            if (remainders[i] > remainders[pick]) pick = i;
        }
        remainders[pick] = -1.0;
        ++counts[pick];
        ++assigned;
    }

    std::vector<DatasetEntry> out;
    const std::size_t edge_count =
        static_cast<std::size_t>(std::ceil(edge_fraction * static_cast<double>(n)));
    out.reserve(n + edge_count);

    for (std::size_t cat = 0; cat < kBaseCategoryCount; ++cat) {
        detail::Sampler rng(seed, cat);
        for (std::size_t k = 0; k < counts[cat]; ++k) {
            out.push_back(detail::sample_base_pair(rng, cat));
        }
    }

    std::array<std::optional<detail::Sampler>, kEdgeFamilyCount> edge_rngs;
    for (std::size_t f = 0; f < kEdgeFamilyCount; ++f) {
        edge_rngs[f].emplace(seed, kBaseCategoryCount + f);
    }
    for (std::size_t i = 0; i < edge_count; ++i) {
        const std::size_t fam = i % kEdgeFamilyCount;
        out.push_back(detail::sample_edge_pair(*edge_rngs[fam], fam));
    }
    return out;
}

// Runs the optimizer on one pair, timing only the optimizer call, and
// cross-checks the reported metrics against an independent recomputation.
inline EvaluationRecord evaluate_pair(RgbColor text, RgbColor bg, bool large_text) {
    EvaluationRecord rec;
    rec.text = text;
    rec.bg = bg;
    rec.initial_contrast = contrast_ratio(text, bg);

    const auto start = std::chrono::steady_clock::now();
    rec.result = generate_accessible_color(text, bg, large_text);
    const auto stop = std::chrono::steady_clock::now();
    rec.elapsed_seconds =
        std::max(std::chrono::duration<double>(stop - start).count(), 1e-9);

    const double check_contrast = contrast_ratio(rec.result.color, bg);
    const double check_delta_e = delta_e_2000(text, rec.result.color);
    if (std::fabs(check_contrast - rec.result.contrast) > 1e-9
        || std::fabs(check_delta_e - rec.result.delta_e) > 1e-9) {
        throw std::logic_error("evaluate_pair: optimizer metrics disagree with recomputation");
    }
    return rec;
}

namespace detail {

// Lower-median convention: element at index (n-1)/2 of the sorted values.
inline double lower_median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

inline bool is_success(const EvaluationRecord& r) {
    return r.result.contrast >= 4.5;
}

}  // namespace detail

inline SummaryReport summarize(const std::vector<EvaluationRecord>& records) {
    if (records.empty()) throw std::invalid_argument("summarize: empty record list");

    SummaryReport rep;
    rep.total_pairs = records.size();

    std::vector<double> success_de;
    std::vector<double> elapsed;
    std::size_t successes = 0;
    std::size_t high_fidelity = 0;
    double total_elapsed = 0.0;
    elapsed.reserve(records.size());

    std::vector<std::string> order;
    for (const auto& r : records) {
        elapsed.push_back(r.elapsed_seconds);
        total_elapsed += r.elapsed_seconds;
        if (detail::is_success(r)) {
            ++successes;
            success_de.push_back(r.result.delta_e);
            if (r.result.delta_e < 2.0) ++high_fidelity;
        }
        if (std::find(order.begin(), order.end(), r.category) == order.end()) {
            order.push_back(r.category);
        }
    }

    rep.success_rate = static_cast<double>(successes) / static_cast<double>(records.size());
    rep.high_fidelity_rate =
        successes == 0 ? 0.0 : static_cast<double>(high_fidelity) / static_cast<double>(successes);
    rep.median_delta_e = detail::lower_median(success_de);
    rep.median_elapsed_seconds = detail::lower_median(std::move(elapsed));
    rep.throughput_pairs_per_second =
        total_elapsed > 0.0 ? static_cast<double>(records.size()) / total_elapsed : 0.0;

    for (const auto& name : order) {
        CategorySummary cs;
        cs.name = name;
        std::vector<double> initial;
        std::vector<double> de_succ;
        std::size_t succ = 0;
        for (const auto& r : records) {
            if (r.category != name) continue;
            ++cs.count;
            initial.push_back(r.initial_contrast);
            if (detail::is_success(r)) {
                ++succ;
                de_succ.push_back(r.result.delta_e);
            }
        }
        cs.success_rate = static_cast<double>(succ) / static_cast<double>(cs.count);
        cs.median_initial_contrast = detail::lower_median(std::move(initial));
        cs.median_delta_e = detail::lower_median(std::move(de_succ));
        rep.categories.push_back(std::move(cs));
    }
    return rep;
}

}  // namespace colortune
