#pragma once

/// Voxel occupancy/color grids, octree-style resolution pyramids and the
/// occupancy metrics computed over them (IoU, multi-resolution cross-entropy).
///
/// Conventions used throughout the library:
///   - cell addressing is (x, y, z) with y the vertical (layer) axis
///   - linear index = x + nx * (y + ny * z)
///   - colors are RGB triples with channels in [0, 1], stored only for
///     filled cells

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "voxbrick/error.hpp"

namespace voxbrick {

struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline double distance_sq(const Rgb& a, const Rgb& b) {
    const double dr = a.r - b.r;
    const double dg = a.g - b.g;
    const double db = a.b - b.b;
    return dr * dr + dg * dg + db * db;
}

/// Lexicographic order on (r, g, b); used for deterministic tie-breaking.
inline bool rgb_less(const Rgb& a, const Rgb& b) {
    if (a.r != b.r) return a.r < b.r;
    if (a.g != b.g) return a.g < b.g;
    return a.b < b.b;
}

/// Dense boolean occupancy grid with optional per-filled-cell colors.
/// Values are immutable in spirit: all library operations take grids by
/// const reference and return new ones, so sharing across threads is safe.
class VoxelGrid {
public:
    VoxelGrid() = default;

    VoxelGrid(int nx, int ny, int nz, bool colored = false)
        : nx_(nx), ny_(ny), nz_(nz), colored_(colored) {
        if (nx < 1 || ny < 1 || nz < 1)
            throw DimensionError("voxel grid dimensions must be >= 1");
        filled_.assign(cell_count(), 0);
        if (colored_) colors_.assign(cell_count(), Rgb{});
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }
    bool colored() const { return colored_; }
    bool cubic() const { return nx_ == ny_ && ny_ == nz_; }

    std::size_t cell_count() const {
        return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_) *
               static_cast<std::size_t>(nz_);
    }

    std::size_t index(int x, int y, int z) const {
        if (x < 0 || x >= nx_ || y < 0 || y >= ny_ || z < 0 || z >= nz_)
            throw InputError("voxel coordinate (" + std::to_string(x) + ", " +
                             std::to_string(y) + ", " + std::to_string(z) +
                             ") out of range");
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(nx_) *
                   (static_cast<std::size_t>(y) +
                    static_cast<std::size_t>(ny_) * static_cast<std::size_t>(z));
    }

    bool filled(int x, int y, int z) const { return filled_[index(x, y, z)] != 0; }
    bool filled_linear(std::size_t i) const { return filled_[i] != 0; }

    void fill(int x, int y, int z) {
        if (colored_)
            throw InputError("colored grid requires a color when filling");
        filled_[index(x, y, z)] = 1;
    }

    void fill(int x, int y, int z, const Rgb& c) {
        if (!colored_)
            throw InputError("uncolored grid cannot store a color");
        if (c.r < 0.0 || c.r > 1.0 || c.g < 0.0 || c.g > 1.0 || c.b < 0.0 || c.b > 1.0)
            throw InputError("color channels must lie in [0, 1]");
        const std::size_t i = index(x, y, z);
        filled_[i] = 1;
        colors_[i] = c;
    }

    void unfill(int x, int y, int z) {
        const std::size_t i = index(x, y, z);
        filled_[i] = 0;
        if (colored_) colors_[i] = Rgb{};
    }

    /// Color of a filled cell. Colors exist only on filled cells.
    const Rgb& color_at(int x, int y, int z) const {
        return color_linear(index(x, y, z));
    }

    const Rgb& color_linear(std::size_t i) const {
        if (!colored_) throw InputError("grid carries no colors");
        if (!filled_[i]) throw InputError("color requested for an empty cell");
        return colors_[i];
    }

    std::size_t filled_count() const {
        return static_cast<std::size_t>(
            std::count(filled_.begin(), filled_.end(), std::uint8_t{1}));
    }

    friend bool operator==(const VoxelGrid&, const VoxelGrid&) = default;

private:
    int nx_ = 0, ny_ = 0, nz_ = 0;
    bool colored_ = false;
    std::vector<std::uint8_t> filled_;
    std::vector<Rgb> colors_;
};

inline bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

/// Halves every axis. A coarse cell is filled iff any of its 8 children is
/// filled (occupancy OR); its color is the channel-wise mean over the filled
/// children, in fixed child order so results are bit-reproducible.
inline VoxelGrid downsample(const VoxelGrid& g) {
    if (g.nx() % 2 != 0 || g.ny() % 2 != 0 || g.nz() % 2 != 0)
        throw DimensionError("downsample requires even dimensions, got " +
                             std::to_string(g.nx()) + "x" + std::to_string(g.ny()) +
                             "x" + std::to_string(g.nz()));
    VoxelGrid out(g.nx() / 2, g.ny() / 2, g.nz() / 2, g.colored());
    for (int z = 0; z < out.nz(); ++z)
        for (int y = 0; y < out.ny(); ++y)
            for (int x = 0; x < out.nx(); ++x) {
                bool any = false;
                Rgb sum;
                int n = 0;
                for (int dz = 0; dz < 2; ++dz)
                    for (int dy = 0; dy < 2; ++dy)
                        for (int dx = 0; dx < 2; ++dx) {
                            const int cx = 2 * x + dx, cy = 2 * y + dy, cz = 2 * z + dz;
                            if (!g.filled(cx, cy, cz)) continue;
                            any = true;
                            if (g.colored()) {
                                const Rgb& c = g.color_at(cx, cy, cz);
                                sum.r += c.r;
                                sum.g += c.g;
                                sum.b += c.b;
                                ++n;
                            }
                        }
                if (!any) continue;
                if (g.colored())
                    out.fill(x, y, z, Rgb{sum.r / n, sum.g / n, sum.b / n});
                else
                    out.fill(x, y, z);
            }
    return out;
}

/// Doubles every axis, copying each parent cell into its 8 children.
/// upsample followed by downsample is the identity on any grid.
inline VoxelGrid upsample(const VoxelGrid& g) {
    VoxelGrid out(g.nx() * 2, g.ny() * 2, g.nz() * 2, g.colored());
    for (int z = 0; z < g.nz(); ++z)
        for (int y = 0; y < g.ny(); ++y)
            for (int x = 0; x < g.nx(); ++x) {
                if (!g.filled(x, y, z)) continue;
                for (int dz = 0; dz < 2; ++dz)
                    for (int dy = 0; dy < 2; ++dy)
                        for (int dx = 0; dx < 2; ++dx) {
                            if (g.colored())
                                out.fill(2 * x + dx, 2 * y + dy, 2 * z + dz,
                                         g.color_at(x, y, z));
                            else
                                out.fill(2 * x + dx, 2 * y + dy, 2 * z + dz);
                        }
            }
    return out;
}

/// Resolution ladder of the same object: levels[0] is the coarsest grid and
/// levels.back() the input. Each level's sides are exactly half the next's.
struct ResolutionPyramid {
    std::vector<VoxelGrid> levels;
};

inline ResolutionPyramid build_pyramid(const VoxelGrid& grid, int num_levels) {
    if (num_levels < 1)
        throw DimensionError("pyramid needs at least one level");
    if (!grid.cubic() || !is_power_of_two(grid.nx()))
        throw DimensionError("pyramid requires a cubic grid with power-of-two side, got " +
                             std::to_string(grid.nx()) + "x" + std::to_string(grid.ny()) +
                             "x" + std::to_string(grid.nz()));
    if (grid.nx() < (1 << (num_levels - 1)))
        throw DimensionError("side " + std::to_string(grid.nx()) +
                             " too small for " + std::to_string(num_levels) + " levels");
    ResolutionPyramid pyr;
    pyr.levels.resize(static_cast<std::size_t>(num_levels));
    pyr.levels[static_cast<std::size_t>(num_levels) - 1] = grid;
    for (int r = num_levels - 2; r >= 0; --r)
        pyr.levels[static_cast<std::size_t>(r)] =
            downsample(pyr.levels[static_cast<std::size_t>(r) + 1]);
    return pyr;
}

/// Intersection over union of the filled-cell sets. Two entirely empty grids
/// have equal (empty) filled sets, so the result is defined as 1.
inline double iou(const VoxelGrid& pred, const VoxelGrid& target) {
    if (pred.nx() != target.nx() || pred.ny() != target.ny() || pred.nz() != target.nz())
        throw DimensionError("iou requires equal grid dimensions");
    std::size_t inter = 0, uni = 0;
    const std::size_t n = pred.cell_count();
    for (std::size_t i = 0; i < n; ++i) {
        const bool a = pred.filled_linear(i);
        const bool b = target.filled_linear(i);
        if (a && b) ++inter;
        if (a || b) ++uni;
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

/// One level of pre-activation occupancy scores over a cubic grid,
/// in linear-index order.
struct LogitLevel {
    int side = 0;
    std::vector<double> values;
};

/// Score ladder matching a ResolutionPyramid: levels ordered coarse to fine,
/// sides doubling, all values finite.
struct LogitPyramid {
    std::vector<LogitLevel> levels;
};

inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

namespace detail {

inline void validate_logits(const LogitPyramid& logits, const VoxelGrid& target) {
    if (logits.levels.empty())
        throw InputError("logit pyramid must have at least one level");
    for (std::size_t r = 0; r < logits.levels.size(); ++r) {
        const LogitLevel& lv = logits.levels[r];
        if (lv.side < 1)
            throw InputError("logit level side must be >= 1");
        const std::size_t want = static_cast<std::size_t>(lv.side) *
                                 static_cast<std::size_t>(lv.side) *
                                 static_cast<std::size_t>(lv.side);
        if (lv.values.size() != want)
            throw InputError("logit level " + std::to_string(r) + " has " +
                             std::to_string(lv.values.size()) + " values, expected " +
                             std::to_string(want));
        if (r > 0 && logits.levels[r - 1].side * 2 != lv.side)
            throw InputError("logit level sides must double between levels");
        for (double v : lv.values)
            if (!std::isfinite(v)) throw InputError("logit values must be finite");
    }
    const int top = logits.levels.back().side;
    if (!target.cubic() || target.nx() != top)
        throw InputError("target dimensions must equal the top logit level (" +
                         std::to_string(top) + "^3)");
    if (!is_power_of_two(target.nx()))
        throw InputError("target side must be a power of two");
}

} // namespace detail

/// Per-level sums of the binary cross-entropy between sigmoid(logit) and the
/// target pyramid built by OR-pooling downsampling. Each log argument is
/// clamped from below at 1e-12 so saturated logits stay finite. Summation is
/// sequential in linear-index order, level by level, and therefore
/// bit-reproducible.
inline std::vector<double> cross_entropy_per_level(const LogitPyramid& logits,
                                                   const VoxelGrid& target) {
    detail::validate_logits(logits, target);
    const int num_levels = static_cast<int>(logits.levels.size());
    if (target.nx() < (1 << (num_levels - 1)))
        throw InputError("target side too small for " + std::to_string(num_levels) +
                         " logit levels");
    const ResolutionPyramid pyr = build_pyramid(target, num_levels);

    constexpr double kEps = 1e-12;
    std::vector<double> per_level;
    per_level.reserve(logits.levels.size());
    for (std::size_t r = 0; r < logits.levels.size(); ++r) {
        const LogitLevel& lv = logits.levels[r];
        const VoxelGrid& tg = pyr.levels[r];
        double sum = 0.0;
        for (std::size_t n = 0; n < lv.values.size(); ++n) {
            const double x = lv.values[n];
            if (tg.filled_linear(n))
                sum -= std::log(std::max(sigmoid(x), kEps));
            else
                sum -= std::log(std::max(sigmoid(-x), kEps));
        }
        per_level.push_back(sum);
    }
    return per_level;
}

/// Total cross-entropy over all pyramid levels.
inline double multires_cross_entropy(const LogitPyramid& logits, const VoxelGrid& target) {
    double total = 0.0;
    for (double v : cross_entropy_per_level(logits, target)) total += v;
    return total;
}

} // namespace voxbrick
