#pragma once

/// Brick layout: interior cavity filling, per-layer greedy merging of voxels
/// into catalog bricks, connectivity analysis, and the BRICKS text dump.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "voxbrick/color.hpp"
#include "voxbrick/error.hpp"
#include "voxbrick/grid.hpp"
#include "voxbrick/io.hpp"

namespace voxbrick {

/// Stud footprint of a height-1 brick, stored with width <= depth.
struct BrickFootprint {
    int width = 1;
    int depth = 1;
    std::string part_id;
};

struct BrickCatalog {
    std::vector<BrickFootprint> footprints;

    const BrickFootprint* find_part(std::string_view part_id) const {
        for (const BrickFootprint& f : footprints)
            if (f.part_id == part_id) return &f;
        return nullptr;
    }
};

namespace detail {

inline void validate_catalog(const BrickCatalog& catalog) {
    bool has_unit = false;
    for (std::size_t i = 0; i < catalog.footprints.size(); ++i) {
        const BrickFootprint& f = catalog.footprints[i];
        if (f.width < 1 || f.depth < 1) throw InputError("catalog footprint sides must be >= 1");
        if (f.width > f.depth) throw InputError("catalog footprint must store width <= depth");
        if (f.part_id.empty()) throw InputError("catalog part id must be nonempty");
        if (f.width == 1 && f.depth == 1) has_unit = true;
        for (std::size_t j = i + 1; j < catalog.footprints.size(); ++j) {
            if (catalog.footprints[j].width == f.width &&
                catalog.footprints[j].depth == f.depth)
                throw InputError("duplicate catalog footprint " + std::to_string(f.width) +
                                 "x" + std::to_string(f.depth));
            if (catalog.footprints[j].part_id == f.part_id)
                throw InputError("duplicate catalog part id " + f.part_id);
        }
    }
    if (!has_unit) throw InputError("catalog must contain a 1x1 footprint");
}

} // namespace detail

/// Rectangular height-1 bricks from the LDraw parts library.
inline const BrickCatalog& standard_catalog() {
    static const BrickCatalog catalog = {{
        {1, 1, "3005"},
        {1, 2, "3004"},
        {1, 3, "3622"},
        {1, 4, "3010"},
        {1, 6, "3009"},
        {1, 8, "3008"},
        {2, 2, "3003"},
        {2, 3, "3002"},
        {2, 4, "3001"},
        {2, 6, "2456"},
        {2, 8, "3007"},
    }};
    return catalog;
}

/// Catalog file format: one footprint per line, `width depth part_id`.
/// `#` starts a comment. Sides are normalized so width <= depth.
inline BrickCatalog parse_catalog(std::string_view text) {
    BrickCatalog catalog;
    const auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::string_view line = lines[li];
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        const auto toks = split_tokens(line);
        if (toks.empty()) continue;
        const std::size_t lno = li + 1;
        if (toks.size() != 3)
            throw ParseError(lno, "catalog entry needs 'width depth part_id'");
        long long w = 0, d = 0;
        if (!parse_int(toks[0], w) || w < 1 || !parse_int(toks[1], d) || d < 1)
            throw ParseError(lno, "bad catalog footprint dimensions");
        if (w > d) std::swap(w, d);
        catalog.footprints.push_back(BrickFootprint{static_cast<int>(w),
                                                    static_cast<int>(d),
                                                    std::string(toks[2])});
    }
    try {
        detail::validate_catalog(catalog);
    } catch (const InputError& e) {
        throw ParseError(lines.size(), e.what());
    }
    return catalog;
}

/// One placed brick. The footprint (w, d) is the x and z extent after
/// orientation: 0 puts the part's long axis along x, 90 along z.
struct BrickPlacement {
    int x = 0, y = 0, z = 0;
    int w = 1, d = 1;
    int orientation = 0; // degrees, 0 or 90
    std::string part_id;
    int color_code = 0;

    friend bool operator==(const BrickPlacement&, const BrickPlacement&) = default;
};

struct BrickModel {
    std::vector<BrickPlacement> placements; // bottom layer first
    int nx = 0, ny = 0, nz = 0;
};

/// Fills enclosed cavities: empty cells that a 6-connected walk from the
/// grid's boundary faces cannot reach. On colored grids a filled cavity cell
/// takes the color of the nearest originally-filled cell (BFS distance,
/// ties resolved toward the lower linear index). Exterior empties and
/// existing cells are untouched.
inline VoxelGrid fill_interior(const VoxelGrid& grid) {
    const int nx = grid.nx(), ny = grid.ny(), nz = grid.nz();
    const std::size_t total = grid.cell_count();
    const auto lin = [&](int x, int y, int z) {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(nx) *
                   (static_cast<std::size_t>(y) +
                    static_cast<std::size_t>(ny) * static_cast<std::size_t>(z));
    };

    std::vector<std::uint8_t> exterior(total, 0);
    std::vector<std::size_t> stack;
    const auto try_seed = [&](int x, int y, int z) {
        const std::size_t i = lin(x, y, z);
        if (!grid.filled_linear(i) && !exterior[i]) {
            exterior[i] = 1;
            stack.push_back(i);
        }
    };
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x)
                if (x == 0 || x == nx - 1 || y == 0 || y == ny - 1 || z == 0 ||
                    z == nz - 1)
                    try_seed(x, y, z);

    const auto coords = [&](std::size_t i) {
        const int x = static_cast<int>(i % static_cast<std::size_t>(nx));
        const std::size_t rest = i / static_cast<std::size_t>(nx);
        const int y = static_cast<int>(rest % static_cast<std::size_t>(ny));
        const int z = static_cast<int>(rest / static_cast<std::size_t>(ny));
        return std::array<int, 3>{x, y, z};
    };
    static constexpr int kSteps[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                         {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const auto [x, y, z] = coords(i);
        for (const auto& s : kSteps) {
            const int px = x + s[0], py = y + s[1], pz = z + s[2];
            if (px < 0 || px >= nx || py < 0 || py >= ny || pz < 0 || pz >= nz)
                continue;
            const std::size_t j = lin(px, py, pz);
            if (!grid.filled_linear(j) && !exterior[j]) {
                exterior[j] = 1;
                stack.push_back(j);
            }
        }
    }

    std::vector<std::size_t> cavity;
    for (std::size_t i = 0; i < total; ++i)
        if (!grid.filled_linear(i) && !exterior[i]) cavity.push_back(i);
    if (cavity.empty()) return grid;

    VoxelGrid out = grid;
    if (!grid.colored()) {
        for (std::size_t i : cavity) {
            const auto [x, y, z] = coords(i);
            out.fill(x, y, z);
        }
        return out;
    }

    // Multi-source BFS from every originally filled cell. source[i] tracks,
    // among all sources at minimum BFS distance from cell i, the one with the
    // lowest linear index; taking the minimum over the previous distance
    // level's neighbors preserves that through each expansion.
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> source(total, kUnset);
    std::vector<int> dist(total, -1);
    std::vector<std::uint8_t> is_cavity(total, 0);
    for (std::size_t i : cavity) is_cavity[i] = 1;

    std::vector<std::size_t> level;
    for (std::size_t i = 0; i < total; ++i)
        if (grid.filled_linear(i)) {
            source[i] = i;
            dist[i] = 0;
            level.push_back(i);
        }
    for (int d = 1; !level.empty(); ++d) {
        std::vector<std::size_t> next;
        for (std::size_t i : level) {
            const auto [x, y, z] = coords(i);
            for (const auto& s : kSteps) {
                const int px = x + s[0], py = y + s[1], pz = z + s[2];
                if (px < 0 || px >= nx || py < 0 || py >= ny || pz < 0 || pz >= nz)
                    continue;
                const std::size_t j = lin(px, py, pz);
                if (is_cavity[j] && dist[j] < 0) {
                    dist[j] = d;
                    next.push_back(j);
                }
            }
        }
        for (std::size_t j : next) {
            const auto [x, y, z] = coords(j);
            for (const auto& s : kSteps) {
                const int px = x + s[0], py = y + s[1], pz = z + s[2];
                if (px < 0 || px >= nx || py < 0 || py >= ny || pz < 0 || pz >= nz)
                    continue;
                const std::size_t n = lin(px, py, pz);
                if (dist[n] == d - 1 && source[n] < source[j]) source[j] = source[n];
            }
        }
        level = std::move(next);
    }

    for (std::size_t i : cavity) {
        const auto [x, y, z] = coords(i);
        if (source[i] == kUnset)
            throw InternalError("cavity cell unreached by color fill");
        out.fill(x, y, z, grid.color_linear(source[i]));
    }
    return out;
}

struct MergeOptions {
    bool interlock = true;
    int default_color_code = 7; // uncolored grids build in light gray
};

namespace detail {

struct Candidate {
    int w = 1, d = 1;
    int orientation = 0;
    const BrickFootprint* part = nullptr;
};

/// Candidates sorted by footprint area descending; area ties prefer the long
/// axis along x on even layers and along z on odd ones (squares sort with the
/// preferred group), then lower part_id, then orientation.
inline std::vector<Candidate> layer_candidates(const BrickCatalog& catalog,
                                               int layer, bool interlock) {
    std::vector<Candidate> out;
    for (const BrickFootprint& f : catalog.footprints) {
        if (f.width == f.depth) {
            out.push_back(Candidate{f.width, f.depth, 0, &f});
        } else {
            out.push_back(Candidate{f.depth, f.width, 0, &f});
            out.push_back(Candidate{f.width, f.depth, 90, &f});
        }
    }
    const bool prefer_x = layer % 2 == 0;
    const auto rank = [&](const Candidate& c) {
        if (!interlock || c.w == c.d) return 0;
        const bool long_x = c.w > c.d;
        return long_x == prefer_x ? 0 : 1;
    };
    std::sort(out.begin(), out.end(), [&](const Candidate& a, const Candidate& b) {
        const int area_a = a.w * a.d, area_b = b.w * b.d;
        if (area_a != area_b) return area_a > area_b;
        const int ra = rank(a), rb = rank(b);
        if (ra != rb) return ra < rb;
        if (a.part->part_id != b.part->part_id) return a.part->part_id < b.part->part_id;
        return a.orientation < b.orientation;
    });
    return out;
}

} // namespace detail

/// Greedy per-layer merge. Layers run bottom-up; within a layer, cells are
/// scanned z-major then x, and the first uncovered filled cell takes the
/// largest candidate whose cells are all filled, uncovered, and one color.
/// The 1x1 footprint always fits, so the placements exactly cover the
/// filled set.
inline BrickModel merge_bricks(const VoxelGrid& grid,
                               const BrickCatalog& catalog = standard_catalog(),
                               const Palette& palette = builtin_palette(),
                               const MergeOptions& opts = {}) {
    detail::validate_catalog(catalog);
    const int nx = grid.nx(), ny = grid.ny(), nz = grid.nz();

    std::vector<int> codes(grid.cell_count(), -1);
    if (grid.colored()) {
        std::map<detail::ColorKey, int> memo;
        for (std::size_t i = 0; i < grid.cell_count(); ++i) {
            if (!grid.filled_linear(i)) continue;
            const Rgb& c = grid.color_linear(i);
            const auto key = detail::color_key(c);
            auto it = memo.find(key);
            if (it == memo.end())
                it = memo.emplace(key, nearest_palette_code(c, palette)).first;
            codes[i] = it->second;
        }
    } else {
        for (std::size_t i = 0; i < grid.cell_count(); ++i)
            if (grid.filled_linear(i)) codes[i] = opts.default_color_code;
    }

    BrickModel model;
    model.nx = nx;
    model.ny = ny;
    model.nz = nz;
    std::vector<std::uint8_t> covered(grid.cell_count(), 0);
    const auto lin = [&](int x, int y, int z) {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(nx) *
                   (static_cast<std::size_t>(y) +
                    static_cast<std::size_t>(ny) * static_cast<std::size_t>(z));
    };

    for (int y = 0; y < ny; ++y) {
        const auto candidates = detail::layer_candidates(catalog, y, opts.interlock);
        for (int z = 0; z < nz; ++z) {
            for (int x = 0; x < nx; ++x) {
                const std::size_t seed = lin(x, y, z);
                if (!grid.filled_linear(seed) || covered[seed]) continue;
                const int code = codes[seed];
                for (const detail::Candidate& c : candidates) {
                    if (x + c.w > nx || z + c.d > nz) continue;
                    bool fits = true;
                    for (int dz = 0; fits && dz < c.d; ++dz)
                        for (int dx = 0; fits && dx < c.w; ++dx) {
                            const std::size_t i = lin(x + dx, y, z + dz);
                            fits = grid.filled_linear(i) && !covered[i] &&
                                   codes[i] == code;
                        }
                    if (!fits) continue;
                    for (int dz = 0; dz < c.d; ++dz)
                        for (int dx = 0; dx < c.w; ++dx)
                            covered[lin(x + dx, y, z + dz)] = 1;
                    model.placements.push_back(BrickPlacement{
                        x, y, z, c.w, c.d, c.orientation, c.part->part_id, code});
                    break;
                }
                if (!covered[seed])
                    throw InternalError("no catalog footprint fit a filled cell");
            }
        }
    }
    return model;
}

/// Occupancy of a model's covered cells (colors are not reconstructed).
inline VoxelGrid rasterize(const BrickModel& model) {
    VoxelGrid grid(model.nx, model.ny, model.nz);
    for (const BrickPlacement& p : model.placements)
        for (int dz = 0; dz < p.d; ++dz)
            for (int dx = 0; dx < p.w; ++dx)
                grid.fill(p.x + dx, p.y, p.z + dz);
    return grid;
}

struct ConnectivityReport {
    int component_count = 0;
    std::vector<std::vector<std::size_t>> components; // placement indices
    std::vector<std::size_t> floating_components;     // indices into components
    std::vector<std::size_t> layer_brick_counts;      // one per grid layer
};

/// Stud-contact graph: bricks in vertically adjacent layers whose footprints
/// overlap are connected. A component is floating when none of its bricks
/// sit on the ground layer.
inline ConnectivityReport analyze_connectivity(const BrickModel& model) {
    const std::size_t n = model.placements.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    const auto find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    const auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    std::vector<std::vector<std::size_t>> by_layer(
        static_cast<std::size_t>(std::max(model.ny, 0)));
    for (std::size_t i = 0; i < n; ++i)
        by_layer[static_cast<std::size_t>(model.placements[i].y)].push_back(i);

    const auto overlaps = [&](const BrickPlacement& a, const BrickPlacement& b) {
        return a.x < b.x + b.w && b.x < a.x + a.w && a.z < b.z + b.d &&
               b.z < a.z + a.d;
    };
    for (std::size_t y = 0; y + 1 < by_layer.size(); ++y)
        for (std::size_t i : by_layer[y])
            for (std::size_t j : by_layer[y + 1])
                if (overlaps(model.placements[i], model.placements[j])) unite(i, j);

    ConnectivityReport report;
    report.layer_brick_counts.resize(by_layer.size());
    for (std::size_t y = 0; y < by_layer.size(); ++y)
        report.layer_brick_counts[y] = by_layer[y].size();

    std::map<std::size_t, std::size_t> root_to_component;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        auto it = root_to_component.find(root);
        if (it == root_to_component.end()) {
            it = root_to_component.emplace(root, report.components.size()).first;
            report.components.emplace_back();
        }
        report.components[it->second].push_back(i);
    }
    report.component_count = static_cast<int>(report.components.size());
    for (std::size_t c = 0; c < report.components.size(); ++c) {
        bool grounded = false;
        for (std::size_t i : report.components[c])
            if (model.placements[i].y == 0) grounded = true;
        if (!grounded) report.floating_components.push_back(c);
    }
    return report;
}

struct BomLine {
    std::string part_id;
    int color_code = 0;
    std::size_t count = 0;
};

/// Placement counts grouped by (part_id, color_code), sorted by part then
/// color.
inline std::vector<BomLine> bill_of_materials(const BrickModel& model) {
    std::map<std::pair<std::string, int>, std::size_t> counts;
    for (const BrickPlacement& p : model.placements)
        ++counts[{p.part_id, p.color_code}];
    std::vector<BomLine> lines;
    lines.reserve(counts.size());
    for (const auto& [key, count] : counts)
        lines.push_back(BomLine{key.first, key.second, count});
    return lines;
}

/// BRICKS text dump: header, grid dims, then one `x y z w d orient part_id
/// color_code` line per placement in build order.
inline std::string dump_bricks(const BrickModel& model) {
    std::string out = "BRICKS 1\n";
    out += "dims " + std::to_string(model.nx) + " " + std::to_string(model.ny) +
           " " + std::to_string(model.nz) + "\n";
    for (const BrickPlacement& p : model.placements) {
        out += std::to_string(p.x) + " " + std::to_string(p.y) + " " +
               std::to_string(p.z) + " " + std::to_string(p.w) + " " +
               std::to_string(p.d) + " " + std::to_string(p.orientation) + " " +
               p.part_id + " " + std::to_string(p.color_code) + "\n";
    }
    return out;
}

inline BrickModel parse_bricks(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t li = 0;
    const auto next_tokens = [&]() {
        while (li < lines.size()) {
            const auto toks = split_tokens(lines[li]);
            ++li;
            if (!toks.empty()) return toks;
        }
        return std::vector<std::string_view>{};
    };

    auto toks = next_tokens();
    if (toks.size() != 2 || toks[0] != "BRICKS" || toks[1] != "1")
        throw ParseError(li == 0 ? 1 : li, "expected 'BRICKS 1' header");
    toks = next_tokens();
    if (toks.size() != 4 || toks[0] != "dims")
        throw ParseError(li == 0 ? 1 : li, "expected 'dims nx ny nz'");
    BrickModel model;
    long long dims[3];
    for (int i = 0; i < 3; ++i)
        if (!parse_int(toks[static_cast<std::size_t>(i) + 1], dims[i]) || dims[i] < 1 ||
            dims[i] > 1024)
            throw ParseError(li, "bad grid dimension '" +
                                     std::string(toks[static_cast<std::size_t>(i) + 1]) + "'");
    model.nx = static_cast<int>(dims[0]);
    model.ny = static_cast<int>(dims[1]);
    model.nz = static_cast<int>(dims[2]);

    while (true) {
        toks = next_tokens();
        if (toks.empty()) break;
        if (toks.size() != 8)
            throw ParseError(li, "placement needs 'x y z w d orient part_id color_code'");
        long long v[6];
        for (int i = 0; i < 6; ++i)
            if (!parse_int(toks[static_cast<std::size_t>(i)], v[i]))
                throw ParseError(li, "bad placement field '" +
                                         std::string(toks[static_cast<std::size_t>(i)]) + "'");
        long long code = 0;
        if (!parse_int(toks[7], code) || code < 0)
            throw ParseError(li, "bad color code '" + std::string(toks[7]) + "'");
        if (v[5] != 0 && v[5] != 90)
            throw ParseError(li, "orientation must be 0 or 90");
        BrickPlacement p{static_cast<int>(v[0]), static_cast<int>(v[1]),
                         static_cast<int>(v[2]), static_cast<int>(v[3]),
                         static_cast<int>(v[4]), static_cast<int>(v[5]),
                         std::string(toks[6]),   static_cast<int>(code)};
        if (p.w < 1 || p.d < 1 || p.x < 0 || p.y < 0 || p.z < 0 ||
            p.x + p.w > model.nx || p.y >= model.ny || p.z + p.d > model.nz)
            throw ParseError(li, "placement outside grid bounds");
        model.placements.push_back(std::move(p));
    }
    return model;
}

} // namespace voxbrick
