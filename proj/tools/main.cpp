#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "voxbrick/voxbrick.hpp"

namespace {

std::string stem_of(const std::string& path) {
    const std::string stem = std::filesystem::path(path).stem().string();
    return stem.empty() ? "model" : stem;
}

std::string output_path(const voxbrick::PipelineConfig& cfg, const std::string& name) {
    voxbrick::ensure_directory(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

voxbrick::VoxelGrid load_grid_file(const std::string& path) {
    return voxbrick::parse_voxgrid(voxbrick::read_file(path));
}

void write_or_print(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        voxbrick::write_file_atomic(out_path, content);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compiles voxel grids and meshes into buildable brick models"};
    app.require_subcommand(1);
    app.fallthrough();

    voxbrick::PipelineConfig cfg;
    app.add_option("--resolution", cfg.resolution,
                   "Voxel grid side used when voxelizing meshes")
        ->capture_default_str();
    app.add_option("--levels", cfg.levels, "Resolution pyramid depth")
        ->capture_default_str();
    app.add_option("--colors", cfg.k_colors, "Quantized color count")
        ->capture_default_str();
    app.add_flag("--fill,!--no-fill", cfg.fill,
                 "Fill enclosed interior cavities before merging")
        ->capture_default_str();
    app.add_flag("--interlock,!--no-interlock", cfg.interlock,
                 "Alternate brick orientation between layers")
        ->capture_default_str();
    app.add_option("--catalog", cfg.catalog_path,
                   "Brick catalog file (width depth part_id per line)");
    app.add_option("--palette", cfg.palette_path,
                   "Palette file (code r g b name per line)");
    app.add_option("--seed", cfg.seed, "Random seed for surface sampling")
        ->capture_default_str();
    app.add_option("--samples", cfg.samples, "Surface sample count for meshes")
        ->capture_default_str();
    app.add_option("--out-dir", cfg.out_dir, "Directory for written artifacts")
        ->capture_default_str();
    app.set_config("--config", "", "Read options from a key=value file");

    std::string in_path, second_path, out_path;

    CLI::App* voxelize = app.add_subcommand(
        "voxelize", "Sample a mesh surface and write a VOXGRID occupancy file");
    voxelize->add_option("mesh", in_path, "Input .off or .obj mesh")->required();
    voxelize->add_option("-o,--output", out_path, "Output VOXGRID path");

    CLI::App* build = app.add_subcommand(
        "build", "Emit LDraw models, instructions, BOMs, and a report for every "
                 "pyramid level");
    build->add_option("input", in_path, "Input mesh or VOXGRID file")->required();

    CLI::App* metrics = app.add_subcommand(
        "metrics", "Report per-level IoU (and cross-entropy for logit input)");
    metrics->add_option("pred", in_path, "Predicted VOXGRID or VOXLOGIT file")
        ->required();
    metrics->add_option("target", second_path, "Target VOXGRID file")->required();
    metrics->add_option("-o,--output", out_path, "Write the CSV here instead of stdout");

    CLI::App* legolize = app.add_subcommand(
        "legolize", "Merge one voxel grid into bricks and emit its artifacts");
    legolize->add_option("input", in_path, "Input mesh or VOXGRID file")->required();

    CLI::App* quantize = app.add_subcommand(
        "quantize", "Reduce a colored VOXGRID to palette colors");
    quantize->add_option("input", in_path, "Input VOXGRID file")->required();
    quantize->add_option("-o,--output", out_path, "Output VOXGRID path");

    CLI::App* fill = app.add_subcommand(
        "fill", "Fill enclosed cavities in a VOXGRID");
    fill->add_option("input", in_path, "Input VOXGRID file")->required();
    fill->add_option("-o,--output", out_path, "Output VOXGRID path");

    CLI::App* bom = app.add_subcommand(
        "bom", "Read an LDraw file and print its bill of materials as CSV");
    bom->add_option("input", in_path, "Input .ldr file")->required();
    bom->add_option("-o,--output", out_path, "Write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*voxelize) {
            voxbrick::validate_config(cfg);
            const voxbrick::VoxelGrid grid = voxbrick::load_input_grid(in_path, cfg);
            const std::string dest =
                out_path.empty() ? output_path(cfg, stem_of(in_path) + ".voxgrid")
                                 : out_path;
            voxbrick::write_file_atomic(dest, voxbrick::write_voxgrid(grid));
            std::cout << dest << "\n";
        } else if (*build) {
            const voxbrick::VoxelGrid grid = voxbrick::load_input_grid(in_path, cfg);
            const voxbrick::BuildReport report =
                voxbrick::run_build(grid, cfg, stem_of(in_path));
            std::cout << voxbrick::report_csv(report);
        } else if (*metrics) {
            const voxbrick::VoxelGrid target = load_grid_file(second_path);
            const std::string pred_text = voxbrick::read_file(in_path);
            std::string csv;
            if (pred_text.starts_with("VOXLOGIT"))
                csv = voxbrick::metrics_csv_logits(voxbrick::parse_voxlogit(pred_text),
                                                   target);
            else
                csv = voxbrick::metrics_csv_grids(voxbrick::parse_voxgrid(pred_text),
                                                  target, cfg.levels);
            write_or_print(out_path, csv);
        } else if (*legolize) {
            const voxbrick::VoxelGrid input = voxbrick::load_input_grid(in_path, cfg);
            const voxbrick::BrickCatalog catalog = voxbrick::effective_catalog(cfg);
            const voxbrick::Palette palette = voxbrick::effective_palette(cfg);

            voxbrick::VoxelGrid stage = input;
            if (stage.colored())
                stage = voxbrick::quantize_grid(
                    stage, voxbrick::QuantizeConfig{cfg.k_colors, 100, 1e-4},
                    palette);
            if (cfg.fill) stage = voxbrick::fill_interior(stage);
            const voxbrick::BrickModel model = voxbrick::merge_bricks(
                stage, catalog, palette, voxbrick::MergeOptions{cfg.interlock, 7});
            if (voxbrick::iou(voxbrick::rasterize(model), stage) != 1.0)
                throw voxbrick::InternalError("merge did not exactly cover the grid");

            const std::string stem = stem_of(in_path);
            voxbrick::write_file_atomic(output_path(cfg, stem + ".ldr"),
                                        voxbrick::emit_ldr(model));
            voxbrick::write_file_atomic(output_path(cfg, stem + "_instructions.txt"),
                                        voxbrick::emit_instructions(model, palette));
            voxbrick::write_file_atomic(output_path(cfg, stem + "_bom.csv"),
                                        voxbrick::bom_csv(model, palette));
            voxbrick::write_file_atomic(output_path(cfg, stem + ".bricks"),
                                        voxbrick::dump_bricks(model));
            std::cout << model.placements.size() << " bricks\n";
        } else if (*quantize) {
            const voxbrick::VoxelGrid grid = load_grid_file(in_path);
            const voxbrick::Palette palette = voxbrick::effective_palette(cfg);
            const voxbrick::VoxelGrid result = voxbrick::quantize_grid(
                grid, voxbrick::QuantizeConfig{cfg.k_colors, 100, 1e-4},
                palette);
            const std::string dest =
                out_path.empty()
                    ? output_path(cfg, stem_of(in_path) + "_quantized.voxgrid")
                    : out_path;
            voxbrick::write_file_atomic(dest, voxbrick::write_voxgrid(result));
            std::cout << dest << "\n";
        } else if (*fill) {
            const voxbrick::VoxelGrid grid = load_grid_file(in_path);
            const voxbrick::VoxelGrid result = voxbrick::fill_interior(grid);
            const std::string dest =
                out_path.empty()
                    ? output_path(cfg, stem_of(in_path) + "_filled.voxgrid")
                    : out_path;
            voxbrick::write_file_atomic(dest, voxbrick::write_voxgrid(result));
            std::cout << dest << "\n";
        } else if (*bom) {
            const voxbrick::BrickCatalog catalog = voxbrick::effective_catalog(cfg);
            const voxbrick::Palette palette = voxbrick::effective_palette(cfg);
            const voxbrick::LDrawDocument doc =
                voxbrick::parse_ldr(voxbrick::read_file(in_path), catalog);
            for (const std::string& w : doc.warnings) std::cerr << w << "\n";
            write_or_print(out_path, voxbrick::bom_csv(voxbrick::to_model(doc), palette));
        }
    } catch (const voxbrick::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const voxbrick::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
