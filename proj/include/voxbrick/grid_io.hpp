#pragma once

/// Text interchange formats for occupancy grids and logit pyramids.
///
/// VOXGRID v1 (line oriented):
///     VOXGRID 1
///     dims nx ny nz
///     color 0|1
///     x y z            one line per filled voxel, or
///     x y z r g b      with 8-bit color channels when the color flag is 1
///
/// VOXLOGIT v1:
///     VOXLOGIT 1 N
///     level s          followed by s^3 whitespace-separated reals in
///     ...              linear-index order, one block per level, coarse first

#include <cmath>
#include <string>
#include <string_view>

#include "voxbrick/error.hpp"
#include "voxbrick/grid.hpp"
#include "voxbrick/io.hpp"

namespace voxbrick {

namespace detail {

// Guards against absurd allocations from corrupt headers.
constexpr int kMaxGridSide = 1024;
constexpr int kMaxLogitLevels = 16;

inline int require_range_int(std::string_view token, long long lo, long long hi,
                             std::size_t line, const char* what) {
    long long v = 0;
    if (!parse_int(token, v))
        throw ParseError(line, std::string(what) + " is not an integer: '" +
                                   std::string(token) + "'");
    if (v < lo || v > hi)
        throw ParseError(line, std::string(what) + " out of range: " + std::to_string(v));
    return static_cast<int>(v);
}

} // namespace detail

inline std::string write_voxgrid(const VoxelGrid& grid) {
    std::string out;
    out += "VOXGRID 1\n";
    out += "dims " + std::to_string(grid.nx()) + " " + std::to_string(grid.ny()) +
           " " + std::to_string(grid.nz()) + "\n";
    out += std::string("color ") + (grid.colored() ? "1" : "0") + "\n";
    for (int z = 0; z < grid.nz(); ++z)
        for (int y = 0; y < grid.ny(); ++y)
            for (int x = 0; x < grid.nx(); ++x) {
                if (!grid.filled(x, y, z)) continue;
                out += std::to_string(x) + " " + std::to_string(y) + " " +
                       std::to_string(z);
                if (grid.colored()) {
                    const Rgb& c = grid.color_at(x, y, z);
                    out += " " + std::to_string(static_cast<int>(std::lround(c.r * 255.0)));
                    out += " " + std::to_string(static_cast<int>(std::lround(c.g * 255.0)));
                    out += " " + std::to_string(static_cast<int>(std::lround(c.b * 255.0)));
                }
                out += "\n";
            }
    return out;
}

inline VoxelGrid parse_voxgrid(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t li = 0;
    const auto next_line = [&](const char* what) -> std::string_view {
        while (li < lines.size() && split_tokens(lines[li]).empty()) ++li;
        if (li >= lines.size())
            throw ParseError(lines.size() + 1, std::string("missing ") + what);
        return lines[li++];
    };

    {
        const auto toks = split_tokens(next_line("VOXGRID header"));
        if (toks.size() != 2 || toks[0] != "VOXGRID" || toks[1] != "1")
            throw ParseError(li, "expected 'VOXGRID 1' header");
    }
    int nx, ny, nz;
    {
        const auto toks = split_tokens(next_line("dims line"));
        if (toks.size() != 4 || toks[0] != "dims")
            throw ParseError(li, "expected 'dims nx ny nz'");
        nx = detail::require_range_int(toks[1], 1, detail::kMaxGridSide, li, "nx");
        ny = detail::require_range_int(toks[2], 1, detail::kMaxGridSide, li, "ny");
        nz = detail::require_range_int(toks[3], 1, detail::kMaxGridSide, li, "nz");
    }
    bool colored;
    {
        const auto toks = split_tokens(next_line("color line"));
        if (toks.size() != 2 || toks[0] != "color" || (toks[1] != "0" && toks[1] != "1"))
            throw ParseError(li, "expected 'color 0' or 'color 1'");
        colored = toks[1] == "1";
    }

    VoxelGrid grid(nx, ny, nz, colored);
    for (; li < lines.size(); ++li) {
        const auto toks = split_tokens(lines[li]);
        if (toks.empty()) continue;
        const std::size_t want = colored ? 6 : 3;
        if (toks.size() != want)
            throw ParseError(li + 1, "voxel line must have " + std::to_string(want) +
                                         " fields, got " + std::to_string(toks.size()));
        const int x = detail::require_range_int(toks[0], 0, nx - 1, li + 1, "x");
        const int y = detail::require_range_int(toks[1], 0, ny - 1, li + 1, "y");
        const int z = detail::require_range_int(toks[2], 0, nz - 1, li + 1, "z");
        if (colored) {
            const int r = detail::require_range_int(toks[3], 0, 255, li + 1, "r");
            const int g = detail::require_range_int(toks[4], 0, 255, li + 1, "g");
            const int b = detail::require_range_int(toks[5], 0, 255, li + 1, "b");
            grid.fill(x, y, z, Rgb{r / 255.0, g / 255.0, b / 255.0});
        } else {
            grid.fill(x, y, z);
        }
    }
    return grid;
}

inline std::string write_voxlogit(const LogitPyramid& pyramid) {
    std::string out;
    out += "VOXLOGIT 1 " + std::to_string(pyramid.levels.size()) + "\n";
    for (const LogitLevel& lv : pyramid.levels) {
        out += "level " + std::to_string(lv.side) + "\n";
        const std::size_t per_line = static_cast<std::size_t>(lv.side) *
                                     static_cast<std::size_t>(lv.side);
        for (std::size_t i = 0; i < lv.values.size(); ++i) {
            out += format_number(lv.values[i]);
            out += (i + 1) % per_line == 0 ? '\n' : ' ';
        }
    }
    return out;
}

inline LogitPyramid parse_voxlogit(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t li = 0;
    const auto next_tokens = [&](const char* what) {
        while (li < lines.size() && split_tokens(lines[li]).empty()) ++li;
        if (li >= lines.size())
            throw ParseError(lines.size() + 1, std::string("missing ") + what);
        return split_tokens(lines[li++]);
    };

    int num_levels;
    {
        const auto toks = next_tokens("VOXLOGIT header");
        if (toks.size() != 3 || toks[0] != "VOXLOGIT" || toks[1] != "1")
            throw ParseError(li, "expected 'VOXLOGIT 1 N' header");
        num_levels =
            detail::require_range_int(toks[2], 1, detail::kMaxLogitLevels, li, "level count");
    }

    LogitPyramid pyramid;
    for (int r = 0; r < num_levels; ++r) {
        const auto toks = next_tokens("level line");
        if (toks.size() != 2 || toks[0] != "level")
            throw ParseError(li, "expected 'level s'");
        LogitLevel lv;
        lv.side = detail::require_range_int(toks[1], 1, detail::kMaxGridSide, li, "level side");
        if (!pyramid.levels.empty() && pyramid.levels.back().side * 2 != lv.side)
            throw ParseError(li, "level sides must double, got " +
                                     std::to_string(pyramid.levels.back().side) + " then " +
                                     std::to_string(lv.side));
        const std::size_t want = static_cast<std::size_t>(lv.side) *
                                 static_cast<std::size_t>(lv.side) *
                                 static_cast<std::size_t>(lv.side);
        while (lv.values.size() < want) {
            const auto vals = next_tokens("logit values");
            for (const auto& tok : vals) {
                if (lv.values.size() == want)
                    throw ParseError(li, "more values than the level side implies");
                double v = 0.0;
                if (!parse_double(tok, v))
                    throw ParseError(li, "bad logit value: '" + std::string(tok) + "'");
                if (!std::isfinite(v))
                    throw ParseError(li, "logit values must be finite");
                lv.values.push_back(v);
            }
        }
        pyramid.levels.push_back(std::move(lv));
    }
    return pyramid;
}

} // namespace voxbrick
