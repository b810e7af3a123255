#pragma once

/// End-to-end wiring: input loading, the per-level build pipeline
/// (quantize, fill, merge, emit), and metric report generation.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "voxbrick/brick.hpp"
#include "voxbrick/color.hpp"
#include "voxbrick/error.hpp"
#include "voxbrick/grid.hpp"
#include "voxbrick/grid_io.hpp"
#include "voxbrick/io.hpp"
#include "voxbrick/ldraw.hpp"
#include "voxbrick/mesh.hpp"

namespace voxbrick {

struct PipelineConfig {
    int resolution = 32;
    int levels = 4;
    int k_colors = 4;
    bool fill = true;
    bool interlock = true;
    std::uint64_t seed = 0;
    std::size_t samples = 100000;
    std::string catalog_path;
    std::string palette_path;
    std::string out_dir = ".";
};

inline void validate_config(const PipelineConfig& cfg) {
    if (cfg.levels < 1) throw InputError("levels must be >= 1");
    if (!is_power_of_two(cfg.resolution))
        throw InputError("resolution must be a power of two");
    if (cfg.resolution < (1 << (cfg.levels - 1)))
        throw InputError("resolution " + std::to_string(cfg.resolution) +
                         " is too small for " + std::to_string(cfg.levels) +
                         " pyramid levels");
    if (cfg.k_colors < 1) throw InputError("colors must be >= 1");
    if (cfg.samples < 1) throw InputError("samples must be >= 1");
}

inline BrickCatalog effective_catalog(const PipelineConfig& cfg) {
    if (cfg.catalog_path.empty()) return standard_catalog();
    return parse_catalog(read_file(cfg.catalog_path));
}

inline Palette effective_palette(const PipelineConfig& cfg) {
    if (cfg.palette_path.empty()) return builtin_palette();
    return parse_palette(read_file(cfg.palette_path));
}

namespace detail {

inline bool has_extension(std::string_view path, std::string_view ext) {
    if (path.size() < ext.size()) return false;
    const std::string_view tail = path.substr(path.size() - ext.size());
    return std::equal(tail.begin(), tail.end(), ext.begin(), ext.end(),
                      [](char a, char b) {
                          return std::tolower(static_cast<unsigned char>(a)) == b;
                      });
}

} // namespace detail

/// Meshes (.off/.obj) are sampled and voxelized at cfg.resolution; anything
/// else is read as a VOXGRID file.
inline VoxelGrid load_input_grid(const std::string& path, const PipelineConfig& cfg) {
    if (detail::has_extension(path, ".off") || detail::has_extension(path, ".obj")) {
        const std::string text = read_file(path);
        const TriangleMesh mesh = detail::has_extension(path, ".off")
                                      ? parse_off(text)
                                      : parse_obj(text);
        const PointCloud cloud = sample_surface(mesh, cfg.samples, cfg.seed);
        return voxelize(cloud, cfg.resolution);
    }
    return parse_voxgrid(read_file(path));
}

inline void ensure_directory(const std::filesystem::path& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create directory " + dir.string() + ": " +
                      ec.message());
}

struct LevelReport {
    int side = 0;
    std::size_t bricks = 0;
    int components = 0;
    std::size_t floating = 0;
};

struct BuildReport {
    std::vector<LevelReport> levels; // coarsest first
    std::vector<std::string> artifacts;
};

inline std::string report_csv(const BuildReport& report) {
    std::string out = "side,bricks,components,floating\n";
    for (const LevelReport& lv : report.levels)
        out += std::to_string(lv.side) + "," + std::to_string(lv.bricks) + "," +
               std::to_string(lv.components) + "," + std::to_string(lv.floating) +
               "\n";
    return out;
}

/// Runs the full build over every pyramid level of `grid`: palette
/// quantization (colored grids), optional cavity filling, greedy merging,
/// and LDraw/instruction/BOM emission per level, plus a summary report.
/// Every merge result is checked to cover its grid exactly before anything
/// is written.
inline BuildReport run_build(const VoxelGrid& grid, const PipelineConfig& cfg,
                             const std::string& stem) {
    validate_config(cfg);
    const BrickCatalog catalog = effective_catalog(cfg);
    const Palette palette = effective_palette(cfg);
    const ResolutionPyramid pyramid = build_pyramid(grid, cfg.levels);

    BuildReport report;
    const std::filesystem::path out_dir(cfg.out_dir);
    ensure_directory(out_dir);
    for (const VoxelGrid& level : pyramid.levels) {
        VoxelGrid stage = level;
        if (stage.colored())
            stage = quantize_grid(stage,
                                  QuantizeConfig{cfg.k_colors, 100, 1e-4},
                                  palette);
        if (cfg.fill) stage = fill_interior(stage);

        const BrickModel model =
            merge_bricks(stage, catalog, palette, MergeOptions{cfg.interlock, 7});
        if (iou(rasterize(model), stage) != 1.0)
            throw InternalError("merge did not exactly cover the grid at side " +
                                std::to_string(level.nx()));

        const ConnectivityReport conn = analyze_connectivity(model);
        report.levels.push_back(LevelReport{level.nx(), model.placements.size(),
                                            conn.component_count,
                                            conn.floating_components.size()});

        const std::string base = stem + "_" + std::to_string(level.nx());
        const auto emit = [&](const std::string& name, const std::string& content) {
            const std::string path = (out_dir / name).string();
            write_file_atomic(path, content);
            report.artifacts.push_back(path);
        };
        emit(base + ".ldr", emit_ldr(model));
        emit(base + "_instructions.txt", emit_instructions(model, palette));
        emit(base + "_bom.csv", bom_csv(model, palette));
    }
    const std::string report_path = (out_dir / (stem + "_report.csv")).string();
    write_file_atomic(report_path, report_csv(report));
    report.artifacts.push_back(report_path);
    return report;
}

/// Per-level IoU between two grids' pyramids, as `level,iou` CSV rows keyed
/// by level side.
inline std::string metrics_csv_grids(const VoxelGrid& pred, const VoxelGrid& target,
                                     int levels) {
    const ResolutionPyramid pp = build_pyramid(pred, levels);
    const ResolutionPyramid tp = build_pyramid(target, levels);
    std::string out = "level,iou\n";
    for (std::size_t i = 0; i < pp.levels.size(); ++i)
        out += std::to_string(pp.levels[i].nx()) + "," +
               format_number(iou(pp.levels[i], tp.levels[i])) + "\n";
    return out;
}

/// Per-level IoU (logits thresholded at zero) and cross-entropy against the
/// target's pyramid, as `level,iou,bce` rows plus a `total` row with the
/// summed loss.
inline std::string metrics_csv_logits(const LogitPyramid& logits,
                                      const VoxelGrid& target) {
    const std::vector<double> losses = cross_entropy_per_level(logits, target);
    const ResolutionPyramid tp =
        build_pyramid(target, static_cast<int>(logits.levels.size()));

    std::string out = "level,iou,bce\n";
    double total = 0.0;
    for (std::size_t i = 0; i < logits.levels.size(); ++i) {
        const LogitLevel& lv = logits.levels[i];
        VoxelGrid occ(lv.side, lv.side, lv.side);
        std::size_t n = 0;
        for (int z = 0; z < lv.side; ++z)
            for (int y = 0; y < lv.side; ++y)
                for (int x = 0; x < lv.side; ++x, ++n)
                    if (lv.values[n] > 0.0) occ.fill(x, y, z);
        out += std::to_string(lv.side) + "," + format_number(iou(occ, tp.levels[i])) +
               "," + format_number(losses[i]) + "\n";
        total += losses[i];
    }
    out += "total,," + format_number(total) + "\n";
    return out;
}

} // namespace voxbrick
