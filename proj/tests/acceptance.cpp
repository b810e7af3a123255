// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failures. Expected values come from oracles implemented here with plain
// scalar loops, independent of the library's vectorized or incremental paths.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <sys/wait.h>

#include "voxbrick/voxbrick.hpp"

#include "test_util.hpp"

using namespace voxbrick;
using test_util::random_colored_grid;
using test_util::random_grid;
using test_util::uniform01;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    void expect(bool condition, const std::string& detail) {
        if (condition) return;
        ok = false;
        std::cerr << "       " << detail << "\n";
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir =
        std::filesystem::temp_directory_path() / "voxbrick_acceptance" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(VOXBRICK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

// ---------------------------------------------------------------------------
// 1. iou and multires_cross_entropy against scalar-loop oracles.

double oracle_iou(const VoxelGrid& a, const VoxelGrid& b) {
    std::size_t inter = 0, uni = 0;
    for (int z = 0; z < a.nz(); ++z)
        for (int y = 0; y < a.ny(); ++y)
            for (int x = 0; x < a.nx(); ++x) {
                const bool fa = a.filled(x, y, z), fb = b.filled(x, y, z);
                inter += fa && fb;
                uni += fa || fb;
            }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double oracle_bce(const LogitPyramid& logits, const VoxelGrid& target) {
    double total = 0.0;
    for (const LogitLevel& lv : logits.levels) {
        const int factor = target.nx() / lv.side;
        std::size_t n = 0;
        for (int z = 0; z < lv.side; ++z)
            for (int y = 0; y < lv.side; ++y)
                for (int x = 0; x < lv.side; ++x, ++n) {
                    bool occupied = false;
                    for (int dz = 0; dz < factor; ++dz)
                        for (int dy = 0; dy < factor; ++dy)
                            for (int dx = 0; dx < factor; ++dx)
                                if (target.filled(x * factor + dx, y * factor + dy,
                                                  z * factor + dz))
                                    occupied = true;
                    const double v = lv.values[n];
                    const double p = occupied ? 1.0 / (1.0 + std::exp(-v))
                                              : 1.0 / (1.0 + std::exp(v));
                    total += -std::log(std::max(p, 1e-12));
                }
    }
    return total;
}

bool within_relative(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(std::abs(want), 1.0);
}

bool criterion_metric_oracles() {
    Check c;
    const auto start = Clock::now();
    std::mt19937 rng(2026);
    std::normal_distribution<double> logit_dist(0.0, 4.0);
    for (int round = 0; round < 200; ++round) {
        const int side = 1 << (1 + round % 3);
        const double p = 0.1 + 0.8 * uniform01(rng);
        const VoxelGrid a = random_grid(rng, side, side, side, p);
        const VoxelGrid b = random_grid(rng, side, side, side, p);
        c.expect(iou(a, b) == oracle_iou(a, b),
                 "iou mismatch at side " + std::to_string(side));

        const int max_levels = side == 2 ? 2 : (side == 4 ? 3 : 4);
        const int levels = 1 + static_cast<int>(rng() % max_levels);
        LogitPyramid logits;
        for (int li = 0; li < levels; ++li) {
            const int s = side >> (levels - 1 - li);
            LogitLevel lv{s, {}};
            lv.values.resize(static_cast<std::size_t>(s) * s * s);
            for (double& v : lv.values) v = logit_dist(rng);
            logits.levels.push_back(std::move(lv));
        }
        const double got = multires_cross_entropy(logits, a);
        const double want = oracle_bce(logits, a);
        c.expect(within_relative(got, want, 1e-9),
                 "cross entropy mismatch: got " + std::to_string(got) + " want " +
                     std::to_string(want));
    }
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 10.0,
             "metric rounds took " + std::to_string(elapsed) + " s, budget 10 s");
    return c.ok;
}

// ---------------------------------------------------------------------------
// 2. All-zero logits score ln(2) per cell regardless of the target.

bool criterion_zero_logit_closed_form() {
    Check c;
    std::mt19937 rng(2027);
    const VoxelGrid target = random_grid(rng, 32, 32, 32, 0.5);
    LogitPyramid logits;
    for (int s : {4, 8, 16, 32})
        logits.levels.push_back(
            LogitLevel{s, std::vector<double>(static_cast<std::size_t>(s) * s * s)});
    const double got = multires_cross_entropy(logits, target);
    const double want = std::log(2.0) * 37440.0;
    c.expect(within_relative(got, want, 1e-9),
             "got " + std::to_string(got) + " want " + std::to_string(want));
    return c.ok;
}

// ---------------------------------------------------------------------------
// 3. Merged layouts cover quantized grids exactly: no gap, no overlap, no
// brick spanning two colors.

bool criterion_exact_cover() {
    Check c;
    const auto start = Clock::now();
    std::mt19937 rng(2028);
    const Palette& palette = builtin_palette();
    for (int round = 0; round < 100; ++round) {
        const double p = 0.2 + 0.5 * uniform01(rng);
        const VoxelGrid g = random_colored_grid(rng, 16, 16, 16, p, 6);
        const VoxelGrid q = quantize_grid(g, QuantizeConfig{}, palette);
        const BrickModel m = merge_bricks(q);

        c.expect(iou(rasterize(m), q) == 1.0, "rasterized model != grid");

        std::vector<int> cover(q.cell_count(), 0);
        std::size_t covered_cells = 0;
        bool clean = true;
        for (const BrickPlacement& b : m.placements) {
            for (int dz = 0; dz < b.d; ++dz)
                for (int dx = 0; dx < b.w; ++dx) {
                    const int x = b.x + dx, z = b.z + dz;
                    if (x >= q.nx() || z >= q.nz() || b.y >= q.ny()) {
                        clean = false;
                        continue;
                    }
                    const std::size_t i =
                        static_cast<std::size_t>(x) +
                        static_cast<std::size_t>(q.nx()) *
                            (static_cast<std::size_t>(b.y) +
                             static_cast<std::size_t>(q.ny()) *
                                 static_cast<std::size_t>(z));
                    if (++cover[i] > 1) clean = false;
                    if (!q.filled(x, b.y, z)) clean = false;
                    else if (nearest_palette_code(q.color_at(x, b.y, z), palette) !=
                             b.color_code)
                        clean = false;
                    ++covered_cells;
                }
        }
        c.expect(clean, "overlap, gap, or color mismatch under a brick");
        c.expect(covered_cells == q.filled_count(), "covered cell count is off");
    }
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 5.0,
             "cover rounds took " + std::to_string(elapsed) + " s, budget 5 s");
    return c.ok;
}

// ---------------------------------------------------------------------------
// 4. Merge quality against an exhaustive minimal-cover enumeration, plus the
// guarantee that any mergeable pair actually merges.

using CellSet = std::set<std::pair<int, int>>;

int minimal_cover(CellSet& cells, const std::vector<std::pair<int, int>>& shapes,
                  int best_so_far) {
    if (cells.empty()) return 0;
    if (best_so_far <= 0) return 1 << 20;
    const auto [fx, fz] = *cells.begin();
    int best = 1 << 20;
    for (const auto& [w, d] : shapes) {
        for (int ox = fx - w + 1; ox <= fx; ++ox)
            for (int oz = fz - d + 1; oz <= fz; ++oz) {
                bool fits = true;
                for (int dz = 0; dz < d && fits; ++dz)
                    for (int dx = 0; dx < w && fits; ++dx)
                        if (!cells.count({ox + dx, oz + dz})) fits = false;
                if (!fits) continue;
                for (int dz = 0; dz < d; ++dz)
                    for (int dx = 0; dx < w; ++dx) cells.erase({ox + dx, oz + dz});
                const int sub =
                    minimal_cover(cells, shapes, std::min(best, best_so_far) - 1);
                for (int dz = 0; dz < d; ++dz)
                    for (int dx = 0; dx < w; ++dx) cells.insert({ox + dx, oz + dz});
                best = std::min(best, 1 + sub);
            }
    }
    return best;
}

int minimal_cover(const VoxelGrid& layer) {
    CellSet cells;
    for (int z = 0; z < layer.nz(); ++z)
        for (int x = 0; x < layer.nx(); ++x)
            if (layer.filled(x, 0, z)) cells.insert({x, z});
    std::vector<std::pair<int, int>> shapes;
    for (const BrickFootprint& f : standard_catalog().footprints) {
        shapes.push_back({f.width, f.depth});
        if (f.width != f.depth) shapes.push_back({f.depth, f.width});
    }
    return minimal_cover(cells, shapes, 1 << 20);
}

bool criterion_merge_quality() {
    Check c;

    VoxelGrid slab(2, 1, 4);
    for (int z = 0; z < 4; ++z)
        for (int x = 0; x < 2; ++x) slab.fill(x, 0, z);
    const BrickModel slab_model = merge_bricks(slab);
    c.expect(slab_model.placements.size() == 1, "2x4 slab should be one brick");
    c.expect(!slab_model.placements.empty() &&
                 slab_model.placements[0].part_id == "3001",
             "2x4 slab should use part 3001");
    c.expect(minimal_cover(slab) == 1, "enumeration: slab minimum is not 1");

    VoxelGrid tromino(2, 1, 2);
    tromino.fill(0, 0, 0);
    tromino.fill(1, 0, 0);
    tromino.fill(0, 0, 1);
    c.expect(merge_bricks(tromino).placements.size() == 2,
             "L tromino should be two bricks");
    c.expect(minimal_cover(tromino) == 2, "enumeration: tromino minimum is not 2");

    std::mt19937 rng(2029);
    for (int round = 0; round < 50; ++round) {
        const VoxelGrid g = random_grid(rng, 8, 4, 8, 0.5);
        const std::size_t bricks = merge_bricks(g).placements.size();
        c.expect(bricks <= g.filled_count(), "more bricks than filled cells");

        bool has_pair = false;
        for (int z = 0; z < 8 && !has_pair; ++z)
            for (int y = 0; y < 4 && !has_pair; ++y)
                for (int x = 0; x < 8 && !has_pair; ++x) {
                    if (!g.filled(x, y, z)) continue;
                    if (x + 1 < 8 && g.filled(x + 1, y, z)) has_pair = true;
                    if (z + 1 < 8 && g.filled(x, y, z + 1)) has_pair = true;
                }
        if (has_pair)
            c.expect(bricks < g.filled_count(),
                     "an adjacent same-color pair was left unmerged");
    }
    return c.ok;
}

// ---------------------------------------------------------------------------
// 5. Cavity filling: hand shapes, idempotence, and a flood-fill audit that no
// enclosed empty cell survives.

bool has_cavity(const VoxelGrid& g) {
    const int nx = g.nx(), ny = g.ny(), nz = g.nz();
    std::vector<std::uint8_t> seen(g.cell_count(), 0);
    std::vector<std::tuple<int, int, int>> queue;
    const auto push = [&](int x, int y, int z) {
        const std::size_t i = static_cast<std::size_t>(x) +
                              static_cast<std::size_t>(nx) *
                                  (static_cast<std::size_t>(y) +
                                   static_cast<std::size_t>(ny) *
                                       static_cast<std::size_t>(z));
        if (seen[i] || g.filled(x, y, z)) return;
        seen[i] = 1;
        queue.push_back({x, y, z});
    };
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x)
                if (x == 0 || y == 0 || z == 0 || x == nx - 1 || y == ny - 1 ||
                    z == nz - 1)
                    push(x, y, z);
    while (!queue.empty()) {
        const auto [x, y, z] = queue.back();
        queue.pop_back();
        if (x > 0) push(x - 1, y, z);
        if (x + 1 < nx) push(x + 1, y, z);
        if (y > 0) push(x, y - 1, z);
        if (y + 1 < ny) push(x, y + 1, z);
        if (z > 0) push(x, y, z - 1);
        if (z + 1 < nz) push(x, y, z + 1);
    }
    std::size_t n = 0;
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x, ++n)
                if (!g.filled(x, y, z) && !seen[n]) return true;
    return false;
}

bool criterion_hollow_fill() {
    Check c;

    VoxelGrid shell(3, 3, 3);
    for (int z = 0; z < 3; ++z)
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x)
                if (x != 1 || y != 1 || z != 1) shell.fill(x, y, z);
    c.expect(fill_interior(shell).filled_count() == 27,
             "3x3x3 shell should fill to a solid cube");

    VoxelGrid tunneled = shell;
    tunneled.unfill(1, 1, 0);
    c.expect(fill_interior(tunneled) == tunneled,
             "a tunneled shell has no cavity to fill");

    std::mt19937 rng(2030);
    for (int round = 0; round < 50; ++round) {
        const VoxelGrid g = random_grid(rng, 8, 8, 8, 0.5);
        const VoxelGrid f = fill_interior(g);
        c.expect(fill_interior(f) == f, "fill_interior is not idempotent");
        c.expect(!has_cavity(f), "a cavity survived fill_interior");
    }
    return c.ok;
}

// ---------------------------------------------------------------------------
// 6. Quantization: distinct-color bound, monotone inertia, and palette
// snapping equal to an exhaustive scan.

bool criterion_quantization() {
    Check c;
    std::mt19937 rng(2031);
    const Palette& palette = builtin_palette();
    for (int round = 0; round < 50; ++round) {
        const VoxelGrid g = random_colored_grid(rng, 16, 16, 16, 0.5, 8);

        const VoxelGrid q = quantize_grid(g, QuantizeConfig{}, palette);
        std::set<std::tuple<double, double, double>> distinct;
        for (std::size_t i = 0; i < q.cell_count(); ++i)
            if (q.filled_linear(i)) {
                const Rgb& col = q.color_linear(i);
                distinct.insert({col.r, col.g, col.b});
            }
        c.expect(distinct.size() <= 4, "more than k=4 distinct colors");

        const KmeansResult r = kmeans_colors(g, QuantizeConfig{});
        for (std::size_t i = 1; i < r.inertia_history.size(); ++i)
            c.expect(r.inertia_history[i] <= r.inertia_history[i - 1],
                     "inertia increased between iterations");
    }

    for (int round = 0; round < 1000; ++round) {
        const Rgb centroid{uniform01(rng), uniform01(rng), uniform01(rng)};
        std::pair<double, int> best{std::numeric_limits<double>::infinity(), 0};
        for (const PaletteEntry& e : palette.entries) {
            const double dr = centroid.r - e.rgb.r, dg = centroid.g - e.rgb.g,
                         db = centroid.b - e.rgb.b;
            best = std::min(best, {dr * dr + dg * dg + db * db, e.code});
        }
        c.expect(snap_to_palette({centroid}, palette) == std::vector<int>{best.second},
                 "snap differs from exhaustive scan");
    }
    return c.ok;
}

// ---------------------------------------------------------------------------
// 7. LDraw round trip plus byte-exact goldens.

bool criterion_ldraw_round_trip() {
    Check c;
    std::mt19937 rng(2032);
    for (int round = 0; round < 100; ++round) {
        const int nx = 2 + static_cast<int>(rng() % 7);
        const int ny = 1 + static_cast<int>(rng() % 4);
        const int nz = 2 + static_cast<int>(rng() % 7);
        const double p = 0.2 + 0.6 * uniform01(rng);
        const VoxelGrid g = round % 2 == 0
                                ? random_grid(rng, nx, ny, nz, p)
                                : random_colored_grid(rng, nx, ny, nz, p, 4);
        const BrickModel m = merge_bricks(g);
        const LDrawDocument doc = parse_ldr(emit_ldr(m));
        c.expect(doc.warnings.empty(), "round trip produced warnings");
        c.expect(doc.nx == m.nx && doc.ny == m.ny && doc.nz == m.nz,
                 "round trip lost the grid dimensions");
        c.expect(to_model(doc).placements == m.placements,
                 "round trip changed the placements");
    }

    VoxelGrid single(1, 1, 1);
    single.fill(0, 0, 0);
    c.expect(emit_ldr(merge_bricks(single)) ==
                 read_file(std::filesystem::path(VOXBRICK_GOLDEN_DIR) /
                           "single_1x1.ldr"),
             "single-brick output differs from the golden file");

    VoxelGrid slab(2, 1, 4);
    for (int z = 0; z < 4; ++z)
        for (int x = 0; x < 2; ++x) slab.fill(x, 0, z);
    c.expect(emit_ldr(merge_bricks(slab)) ==
                 read_file(std::filesystem::path(VOXBRICK_GOLDEN_DIR) /
                           "slab_2x4.ldr"),
             "slab output differs from the golden file");
    return c.ok;
}

// ---------------------------------------------------------------------------
// 8. A 32-cube built with four levels yields four LDraw files, one per side.

bool criterion_multiresolution_build() {
    Check c;
    const auto dir = fresh_dir("build");
    std::mt19937 rng(2033);
    const VoxelGrid g = random_grid(rng, 32, 32, 32, 0.45);
    for (const VoxelGrid& level : build_pyramid(g, 4).levels)
        c.expect(level.filled_count() > 0, "pyramid level unexpectedly empty");

    const auto input = dir / "model.voxgrid";
    write_file_atomic(input, write_voxgrid(g));
    c.expect(run_cli("build '" + input.string() + "' --levels 4 --out-dir '" +
                     dir.string() + "'") == 0,
             "build command failed");
    for (int side : {4, 8, 16, 32}) {
        const auto path = dir / ("model_" + std::to_string(side) + ".ldr");
        if (!std::filesystem::exists(path)) {
            c.expect(false, "missing " + path.string());
            continue;
        }
        const BrickModel m = to_model(parse_ldr(read_file(path)));
        c.expect(!m.placements.empty(),
                 "side " + std::to_string(side) + " model has no bricks");
        c.expect(m.nx == side, "side " + std::to_string(side) + " dims are wrong");
    }
    return c.ok;
}

// ---------------------------------------------------------------------------
// 9. Malformed fixtures all raise line-numbered parse errors, and 60 seconds
// of fuzzing the three text parsers raises nothing but library errors.

void parse_by_extension(const std::string& ext, const std::string& text) {
    if (ext == ".off")
        parse_off(text);
    else if (ext == ".obj")
        parse_obj(text);
    else
        parse_ldr(text);
}

bool criterion_parser_robustness() {
    Check c;
    const std::filesystem::path fixture_dir =
        std::filesystem::path(VOXBRICK_FIXTURE_DIR) / "malformed";
    std::vector<std::filesystem::path> fixtures;
    for (const auto& entry : std::filesystem::directory_iterator(fixture_dir))
        fixtures.push_back(entry.path());
    std::sort(fixtures.begin(), fixtures.end());
    c.expect(fixtures.size() >= 15, "fixture corpus is too small");

    for (const auto& path : fixtures) {
        try {
            parse_by_extension(path.extension().string(), read_file(path));
            c.expect(false, path.filename().string() + " parsed without error");
        } catch (const ParseError& e) {
            c.expect(e.line() >= 1, path.filename().string() + " lost its line number");
        } catch (const std::exception& e) {
            c.expect(false, path.filename().string() + " raised a non-parse error: " +
                                e.what());
        }
    }

    const std::vector<std::string> seeds = {
        "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n",
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nf 1 2 3\nf 1 2 4\nf 1 3 4\nf 2 3 4\n",
        "0 Brick model 2x1x4\r\n1 7 0 -24 0 0 0 1 0 1 0 -1 0 0 3001.dat\r\n0 STEP\r\n0\r\n",
    };
    const std::string charset =
        " \t\r\n0123456789.-+eEOFfvn#/xX() abcdefgz\xff\x01";
    std::mt19937_64 rng(0xF0221u);
    const auto deadline = Clock::now() + std::chrono::seconds(60);
    std::size_t docs = 0;
    bool clean = true;
    std::string first_failure;
    while (Clock::now() < deadline) {
        for (int batch = 0; batch < 50; ++batch, ++docs) {
            std::string doc;
            if (docs % 3 == 0) {
                const std::size_t len = rng() % 1500;
                doc.reserve(len);
                for (std::size_t i = 0; i < len; ++i)
                    doc += charset[rng() % charset.size()];
            } else {
                doc = seeds[rng() % seeds.size()];
                const int edits = 1 + static_cast<int>(rng() % 8);
                for (int e = 0; e < edits && !doc.empty(); ++e) {
                    switch (rng() % 4) {
                    case 0:
                        doc[rng() % doc.size()] =
                            charset[rng() % charset.size()];
                        break;
                    case 1:
                        doc.erase(rng() % doc.size(),
                                  1 + rng() % 7);
                        break;
                    case 2:
                        doc.insert(rng() % doc.size(), 1,
                                   charset[rng() % charset.size()]);
                        break;
                    default:
                        doc.resize(rng() % (doc.size() + 1));
                        break;
                    }
                }
            }
            for (const char* ext : {".off", ".obj", ".ldr"}) {
                try {
                    parse_by_extension(ext, doc);
                } catch (const Error&) {
                } catch (const std::exception& e) {
                    if (clean)
                        first_failure = std::string(ext) + " raised " + e.what();
                    clean = false;
                }
            }
        }
    }
    c.expect(clean, "fuzzing escaped the library error type: " + first_failure);
    c.expect(docs > 0, "fuzz loop never ran");
    std::cerr << "       fuzzed " << docs << " documents\n";
    return c.ok;
}

// ---------------------------------------------------------------------------
// 10. Two identical build runs produce byte-identical artifact sets.

bool criterion_determinism() {
    Check c;
    std::mt19937 rng(2034);
    const VoxelGrid g = random_colored_grid(rng, 16, 16, 16, 0.4, 5);
    const auto dir_a = fresh_dir("determinism_a");
    const auto dir_b = fresh_dir("determinism_b");
    const auto input = fresh_dir("determinism_in") / "model.voxgrid";
    write_file_atomic(input, write_voxgrid(g));

    const std::string flags = " --levels 3 --colors 3 --seed 9 --out-dir '";
    c.expect(run_cli("build '" + input.string() + "'" + flags + dir_a.string() +
                     "'") == 0,
             "first build failed");
    c.expect(run_cli("build '" + input.string() + "'" + flags + dir_b.string() +
                     "'") == 0,
             "second build failed");

    std::map<std::string, std::string> a, b;
    for (const auto& entry : std::filesystem::directory_iterator(dir_a))
        a[entry.path().filename().string()] = read_file(entry.path());
    for (const auto& entry : std::filesystem::directory_iterator(dir_b))
        b[entry.path().filename().string()] = read_file(entry.path());
    c.expect(!a.empty(), "first build wrote nothing");
    c.expect(a == b, "artifact sets differ between identical runs");
    return c.ok;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, bool (*)()>> criteria = {
        {"metrics match scalar-loop oracles", criterion_metric_oracles},
        {"all-zero logits cost ln(2) per cell", criterion_zero_logit_closed_form},
        {"merged layouts cover quantized grids exactly", criterion_exact_cover},
        {"merge matches enumerated minimal covers", criterion_merge_quality},
        {"cavity fill is complete and idempotent", criterion_hollow_fill},
        {"quantization bounds colors and snaps exactly", criterion_quantization},
        {"ldraw output round-trips and matches goldens", criterion_ldraw_round_trip},
        {"multi-level build emits one ldr per side", criterion_multiresolution_build},
        {"parsers reject malformed input and survive fuzzing",
         criterion_parser_robustness},
        {"repeated builds are byte-identical", criterion_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        bool ok = false;
        try {
            ok = criteria[i].second();
        } catch (const std::exception& e) {
            std::cerr << "       unhandled " << e.what() << "\n";
        }
        if (!ok) ++failures;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << i + 1 << ". "
                  << criteria[i].first << "\n";
    }
    return failures;
}
