#pragma once

/// Color reduction: k-means over a grid's filled-cell colors and snapping to
/// a brick color palette.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "voxbrick/error.hpp"
#include "voxbrick/grid.hpp"
#include "voxbrick/io.hpp"

namespace voxbrick {

struct PaletteEntry {
    int code = 0;
    Rgb rgb;
    std::string name;
};

struct Palette {
    std::vector<PaletteEntry> entries;
};

/// Subset of the standard LDraw color table, channels scaled to [0,1].
inline const Palette& builtin_palette() {
    static const Palette palette = [] {
        struct Raw { int code; int r, g, b; const char* name; };
        static constexpr Raw raw[] = {
            {0, 0x05, 0x13, 0x1D, "Black"},
            {1, 0x00, 0x55, 0xBF, "Blue"},
            {2, 0x23, 0x78, 0x41, "Green"},
            {3, 0x00, 0x8F, 0x9B, "Dark_Turquoise"},
            {4, 0xC9, 0x1A, 0x09, "Red"},
            {5, 0xC8, 0x70, 0xA0, "Dark_Pink"},
            {6, 0x58, 0x39, 0x27, "Brown"},
            {7, 0x9B, 0xA1, 0x9D, "Light_Grey"},
            {8, 0x6D, 0x6E, 0x5C, "Dark_Grey"},
            {10, 0x4B, 0x9F, 0x4A, "Bright_Green"},
            {13, 0xFC, 0x97, 0xAC, "Pink"},
            {14, 0xF2, 0xCD, 0x37, "Yellow"},
            {15, 0xFF, 0xFF, 0xFF, "White"},
            {19, 0xE4, 0xCD, 0x9E, "Tan"},
            {22, 0x81, 0x00, 0x7B, "Purple"},
            {25, 0xFE, 0x8A, 0x18, "Orange"},
            {26, 0x92, 0x39, 0x78, "Magenta"},
            {27, 0xBB, 0xE9, 0x0B, "Lime"},
            {28, 0x95, 0x8A, 0x73, "Dark_Tan"},
            {70, 0x58, 0x2A, 0x12, "Reddish_Brown"},
            {71, 0xA0, 0xA5, 0xA9, "Light_Bluish_Grey"},
            {72, 0x6C, 0x6E, 0x68, "Dark_Bluish_Grey"},
        };
        Palette p;
        for (const Raw& e : raw)
            p.entries.push_back(PaletteEntry{
                e.code, Rgb{e.r / 255.0, e.g / 255.0, e.b / 255.0}, e.name});
        return p;
    }();
    return palette;
}

/// Palette file format: one entry per line, `code r g b name`, channels in
/// 0..255, name may contain spaces. `#` starts a comment.
inline Palette parse_palette(std::string_view text) {
    Palette palette;
    std::vector<int> seen;
    const auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::string_view line = lines[li];
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        const auto toks = split_tokens(line);
        if (toks.empty()) continue;
        const std::size_t lno = li + 1;
        if (toks.size() < 5)
            throw ParseError(lno, "palette entry needs 'code r g b name'");
        long long code = 0;
        if (!parse_int(toks[0], code) || code < 0)
            throw ParseError(lno, "bad palette code '" + std::string(toks[0]) + "'");
        double ch[3];
        for (int c = 0; c < 3; ++c) {
            if (!parse_double(toks[static_cast<std::size_t>(c) + 1], ch[c]) ||
                ch[c] < 0.0 || ch[c] > 255.0)
                throw ParseError(lno, "palette channel out of range 0..255");
        }
        if (std::find(seen.begin(), seen.end(), static_cast<int>(code)) != seen.end())
            throw ParseError(lno, "duplicate palette code " + std::to_string(code));
        seen.push_back(static_cast<int>(code));
        std::string name(toks[4]);
        for (std::size_t t = 5; t < toks.size(); ++t) {
            name += ' ';
            name += toks[t];
        }
        palette.entries.push_back(PaletteEntry{
            static_cast<int>(code), Rgb{ch[0] / 255.0, ch[1] / 255.0, ch[2] / 255.0},
            std::move(name)});
    }
    return palette;
}

/// Nearest palette entry by Euclidean RGB distance; ties pick the lowest
/// color code.
inline int nearest_palette_code(const Rgb& color, const Palette& palette) {
    if (palette.entries.empty()) throw InputError("palette is empty");
    double best = std::numeric_limits<double>::infinity();
    int best_code = 0;
    for (const PaletteEntry& e : palette.entries) {
        const double d = distance_sq(color, e.rgb);
        if (d < best || (d == best && e.code < best_code)) {
            best = d;
            best_code = e.code;
        }
    }
    return best_code;
}

inline const PaletteEntry& palette_entry(const Palette& palette, int code) {
    for (const PaletteEntry& e : palette.entries)
        if (e.code == code) return e;
    throw InputError("palette has no entry with code " + std::to_string(code));
}

inline std::vector<int> snap_to_palette(const std::vector<Rgb>& centroids,
                                        const Palette& palette) {
    if (centroids.empty()) throw InputError("no centroids to snap");
    std::vector<int> codes;
    codes.reserve(centroids.size());
    for (const Rgb& c : centroids) codes.push_back(nearest_palette_code(c, palette));
    return codes;
}

struct QuantizeConfig {
    int k = 4;
    int max_iters = 100;
    double tol = 1e-4;
};

struct KmeansResult {
    std::vector<Rgb> centroids;
    std::vector<int> assignment;          // one per filled cell, linear order
    std::vector<double> inertia_history;  // recorded after each assignment pass
};

namespace detail {

using ColorKey = std::tuple<double, double, double>;

inline ColorKey color_key(const Rgb& c) { return {c.r, c.g, c.b}; }

inline Rgb key_color(const ColorKey& k) {
    return Rgb{std::get<0>(k), std::get<1>(k), std::get<2>(k)};
}

} // namespace detail

/// Lloyd's algorithm over every filled cell (duplicate colors weigh in by
/// frequency). Initialization is deterministic farthest-point: the first
/// centroid is the most frequent exact color (ties resolved toward the
/// lexicographically smallest RGB), each next one the color farthest from
/// the centroids chosen so far. Iteration stops when the largest centroid
/// movement drops below cfg.tol (discarding that final sub-tolerance
/// update, so exact fixed points stay exact) or after cfg.max_iters rounds;
/// a cluster that loses all members is restarted at the point farthest from
/// its assigned centroid.
inline KmeansResult kmeans_colors(const VoxelGrid& grid, const QuantizeConfig& cfg) {
    if (!grid.colored()) throw InputError("k-means needs a colored grid");
    if (cfg.k < 1) throw InputError("k must be >= 1");
    if (cfg.tol < 0.0) throw InputError("tol must be >= 0");

    std::vector<Rgb> points;
    for (std::size_t i = 0; i < grid.cell_count(); ++i)
        if (grid.filled_linear(i)) points.push_back(grid.color_linear(i));

    KmeansResult result;
    if (points.empty()) return result;

    std::map<detail::ColorKey, std::size_t> frequency;
    for (const Rgb& p : points) ++frequency[detail::color_key(p)];
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(cfg.k),
                                                frequency.size());

    std::vector<Rgb>& centroids = result.centroids;
    {
        std::size_t best_count = 0;
        detail::ColorKey best_key{};
        for (const auto& [key, count] : frequency)
            if (count > best_count) {
                best_count = count;
                best_key = key;
            }
        centroids.push_back(detail::key_color(best_key));
    }
    while (centroids.size() < k) {
        double best_dist = -1.0;
        detail::ColorKey best_key{};
        for (const auto& [key, count] : frequency) {
            const Rgb color = detail::key_color(key);
            double nearest = std::numeric_limits<double>::infinity();
            for (const Rgb& c : centroids) nearest = std::min(nearest, distance_sq(color, c));
            if (nearest > best_dist) {
                best_dist = nearest;
                best_key = key;
            }
        }
        centroids.push_back(detail::key_color(best_key));
    }

    std::vector<int>& assignment = result.assignment;
    assignment.assign(points.size(), 0);
    const auto assign_all = [&] {
        double inertia = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            int best_c = 0;
            for (std::size_t c = 0; c < centroids.size(); ++c) {
                const double d = distance_sq(points[i], centroids[c]);
                if (d < best) {
                    best = d;
                    best_c = static_cast<int>(c);
                }
            }
            assignment[i] = best_c;
            inertia += best;
        }
        result.inertia_history.push_back(inertia);
    };

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        assign_all();

        std::vector<Rgb> sums(centroids.size(), Rgb{});
        std::vector<std::size_t> counts(centroids.size(), 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto c = static_cast<std::size_t>(assignment[i]);
            sums[c].r += points[i].r;
            sums[c].g += points[i].g;
            sums[c].b += points[i].b;
            ++counts[c];
        }
        std::vector<Rgb> updated(centroids.size());
        std::vector<std::size_t> claimed;
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            if (counts[c] > 0) {
                const double n = static_cast<double>(counts[c]);
                updated[c] = Rgb{sums[c].r / n, sums[c].g / n, sums[c].b / n};
                continue;
            }
            double far_dist = -1.0;
            std::size_t far_i = 0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                if (std::find(claimed.begin(), claimed.end(), i) != claimed.end())
                    continue;
                const double d =
                    distance_sq(points[i], centroids[static_cast<std::size_t>(assignment[i])]);
                if (d > far_dist) {
                    far_dist = d;
                    far_i = i;
                }
            }
            claimed.push_back(far_i);
            updated[c] = points[far_i];
        }

        double movement = 0.0;
        for (std::size_t c = 0; c < centroids.size(); ++c)
            movement = std::max(movement, std::sqrt(distance_sq(centroids[c], updated[c])));
        if (movement < cfg.tol) break; // converged: a sub-tol update is noise
        centroids = std::move(updated);
    }
    assign_all();
    return result;
}

/// Replaces every filled cell's color with the palette color its k-means
/// centroid snaps to. Occupancy is untouched; the result carries at most
/// cfg.k distinct colors, all drawn from the palette.
inline VoxelGrid quantize_grid(const VoxelGrid& grid, const QuantizeConfig& cfg,
                               const Palette& palette) {
    const KmeansResult km = kmeans_colors(grid, cfg);
    VoxelGrid out(grid.nx(), grid.ny(), grid.nz(), true);
    if (km.centroids.empty()) return out;

    const std::vector<int> codes = snap_to_palette(km.centroids, palette);
    std::vector<Rgb> snapped;
    snapped.reserve(codes.size());
    for (int code : codes) snapped.push_back(palette_entry(palette, code).rgb);

    std::size_t cell = 0;
    for (int z = 0; z < grid.nz(); ++z)
        for (int y = 0; y < grid.ny(); ++y)
            for (int x = 0; x < grid.nx(); ++x) {
                if (!grid.filled(x, y, z)) continue;
                out.fill(x, y, z, snapped[static_cast<std::size_t>(km.assignment[cell])]);
                ++cell;
            }
    if (cell != km.assignment.size())
        throw InternalError("assignment count does not match filled cells");
    return out;
}

} // namespace voxbrick
