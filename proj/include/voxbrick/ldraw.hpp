#pragma once

/// LDraw emission and parsing: type-1 part lines with STEP-grouped layers,
/// plus human-readable instructions and the BOM CSV.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "voxbrick/brick.hpp"
#include "voxbrick/color.hpp"
#include "voxbrick/error.hpp"
#include "voxbrick/grid.hpp"
#include "voxbrick/io.hpp"

namespace voxbrick {

struct LDrawDocument {
    std::vector<std::string> header_comments;
    std::vector<std::vector<BrickPlacement>> steps; // bottom layer first
    int nx = 0, ny = 0, nz = 0;
    std::vector<std::string> warnings;
};

namespace detail {

inline constexpr const char* kIdentityRotation = "1 0 0 0 1 0 0 0 1";
inline constexpr const char* kQuarterRotation = "0 0 1 0 1 0 -1 0 0";

inline const PaletteEntry* find_palette_entry(const Palette& palette, int code) {
    for (const PaletteEntry& e : palette.entries)
        if (e.code == code) return &e;
    return nullptr;
}

inline std::string color_name(const Palette& palette, int code) {
    const PaletteEntry* e = find_palette_entry(palette, code);
    return e ? e->name : "color " + std::to_string(code);
}

} // namespace detail

/// LDraw text for a model: one type-1 line per brick, layers separated by
/// `0 STEP`, CRLF line endings. Part origins sit at the center-top, so a
/// brick in layer y is placed at py = -24*(y+1) with px/pz measuring the
/// footprint center from the grid center in 20-LDU studs.
inline std::string emit_ldr(const BrickModel& model) {
    std::string out;
    const auto line = [&out](const std::string& text) {
        out += text;
        out += "\r\n";
    };
    line("0 Brick model " + std::to_string(model.nx) + "x" +
         std::to_string(model.ny) + "x" + std::to_string(model.nz));

    std::map<int, std::vector<const BrickPlacement*>> by_layer;
    for (const BrickPlacement& p : model.placements) by_layer[p.y].push_back(&p);
    for (const auto& [y, bricks] : by_layer) {
        for (const BrickPlacement* p : bricks) {
            const double px = 20.0 * (p->x + p->w / 2.0 - model.nx / 2.0);
            const double py = -24.0 * (y + 1);
            const double pz = 20.0 * (p->z + p->d / 2.0 - model.nz / 2.0);
            const char* rot = p->orientation == 0 ? detail::kIdentityRotation
                                                  : detail::kQuarterRotation;
            line("1 " + std::to_string(p->color_code) + " " + format_number(px) +
                 " " + format_number(py) + " " + format_number(pz) + " " + rot +
                 " " + p->part_id + ".dat");
        }
        line("0 STEP");
    }
    line("0");
    return out;
}

/// Parses the LDraw subset emit_ldr writes. Grid dims come from the
/// `Brick model WxHxD` header when present; otherwise placements are shifted
/// so the minimum occupied cell is the origin and dims grow to fit. Unknown
/// parts, rotations other than the two emitted ones, and placements that do
/// not land on whole cells are collected as warnings and skipped. Malformed
/// lines (wrong field count, non-numeric fields, unknown line type) raise a
/// parse error naming the line.
inline LDrawDocument parse_ldr(std::string_view text,
                               const BrickCatalog& catalog = standard_catalog()) {
    struct Raw {
        std::size_t line_no = 0;
        int color = 0;
        double px = 0, py = 0, pz = 0;
        int orientation = 0;
        const BrickFootprint* part = nullptr;
        int w = 0, d = 0;
        std::size_t step = 0;
    };

    LDrawDocument doc;
    std::vector<Raw> raws;
    std::size_t step = 0;
    bool step_has_bricks = false;

    const auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::size_t lno = li + 1;
        const auto toks = split_tokens(lines[li]);
        if (toks.empty()) continue;
        if (toks[0] == "0") {
            if (toks.size() >= 2 && toks[1] == "STEP") {
                if (step_has_bricks) {
                    ++step;
                    step_has_bricks = false;
                }
                continue;
            }
            if (toks.size() == 1) continue; // end-of-file meta
            std::string comment(toks[1]);
            for (std::size_t t = 2; t < toks.size(); ++t) {
                comment += ' ';
                comment += toks[t];
            }
            doc.header_comments.push_back(std::move(comment));
            continue;
        }
        if (toks[0] == "1") {
            if (toks.size() != 15)
                throw ParseError(lno, "part line needs 14 fields, got " +
                                          std::to_string(toks.size() - 1));
            Raw raw;
            raw.line_no = lno;
            long long color = 0;
            if (!parse_int(toks[1], color) || color < 0)
                throw ParseError(lno, "bad color code '" + std::string(toks[1]) + "'");
            raw.color = static_cast<int>(color);
            double nums[12];
            for (int i = 0; i < 12; ++i)
                if (!parse_double(toks[static_cast<std::size_t>(i) + 2], nums[i]))
                    throw ParseError(
                        lno, "bad numeric field '" +
                                 std::string(toks[static_cast<std::size_t>(i) + 2]) + "'");
            raw.px = nums[0];
            raw.py = nums[1];
            raw.pz = nums[2];

            static constexpr double kIdentity[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
            static constexpr double kQuarter[9] = {0, 0, 1, 0, 1, 0, -1, 0, 0};
            const bool identity = std::equal(nums + 3, nums + 12, kIdentity);
            const bool quarter = std::equal(nums + 3, nums + 12, kQuarter);
            if (!identity && !quarter) {
                doc.warnings.push_back("line " + std::to_string(lno) +
                                       ": unsupported rotation, placement skipped");
                continue;
            }
            raw.orientation = identity ? 0 : 90;

            std::string_view file = toks[14];
            if (file.size() < 5 || !file.ends_with(".dat"))
                throw ParseError(lno, "part reference must end in .dat");
            const std::string_view part_id = file.substr(0, file.size() - 4);
            raw.part = catalog.find_part(part_id);
            if (raw.part == nullptr) {
                doc.warnings.push_back("line " + std::to_string(lno) +
                                       ": unknown part '" + std::string(file) +
                                       "', placement skipped");
                continue;
            }
            raw.w = raw.orientation == 0 ? raw.part->depth : raw.part->width;
            raw.d = raw.orientation == 0 ? raw.part->width : raw.part->depth;
            raw.step = step;
            raws.push_back(raw);
            step_has_bricks = true;
            continue;
        }
        if (toks[0] == "2" || toks[0] == "3" || toks[0] == "4" || toks[0] == "5")
            continue; // geometry primitives carry no placements
        throw ParseError(lno, "unknown line type '" + std::string(toks[0]) + "'");
    }

    bool have_dims = false;
    for (const std::string& comment : doc.header_comments) {
        const auto toks = split_tokens(comment);
        if (toks.size() != 3 || toks[0] != "Brick" || toks[1] != "model") continue;
        std::string_view dims = toks[2];
        long long v[3];
        std::size_t part = 0;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            const std::size_t sep = dims.find('x', part);
            const std::string_view tok =
                i == 2 ? dims.substr(part)
                       : dims.substr(part, sep == std::string_view::npos
                                               ? std::string_view::npos
                                               : sep - part);
            ok = !tok.empty() && parse_int(tok, v[i]) && v[i] >= 0 && v[i] <= 1024;
            if (i < 2) {
                if (sep == std::string_view::npos) ok = false;
                part = sep + 1;
            }
        }
        if (ok) {
            doc.nx = static_cast<int>(v[0]);
            doc.ny = static_cast<int>(v[1]);
            doc.nz = static_cast<int>(v[2]);
            have_dims = true;
            break;
        }
    }

    const bool dims_from_header = have_dims;
    double shift_x = 0, shift_y = 0, shift_z = 0;
    if (!raws.empty() && !have_dims) {
        double min_x = 0, max_x = 0, min_y = 0, max_y = 0, min_z = 0, max_z = 0;
        bool first = true;
        for (const Raw& r : raws) {
            const double x0 = r.px / 20.0 - r.w / 2.0;
            const double z0 = r.pz / 20.0 - r.d / 2.0;
            const double y0 = -r.py / 24.0 - 1.0;
            if (first) {
                min_x = x0; max_x = x0 + r.w;
                min_y = y0; max_y = y0 + 1;
                min_z = z0; max_z = z0 + r.d;
                first = false;
            } else {
                min_x = std::min(min_x, x0); max_x = std::max(max_x, x0 + r.w);
                min_y = std::min(min_y, y0); max_y = std::max(max_y, y0 + 1);
                min_z = std::min(min_z, z0); max_z = std::max(max_z, z0 + r.d);
            }
        }
        shift_x = -min_x;
        shift_y = -min_y;
        shift_z = -min_z;
        doc.nx = static_cast<int>(std::lround(std::ceil(max_x - min_x)));
        doc.ny = static_cast<int>(std::lround(std::ceil(max_y - min_y)));
        doc.nz = static_cast<int>(std::lround(std::ceil(max_z - min_z)));
        have_dims = true;
    }

    std::vector<std::vector<BrickPlacement>> steps(step + 1);
    const auto integral = [](double v, int& out) {
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9) return false;
        out = static_cast<int>(r);
        return true;
    };
    for (const Raw& r : raws) {
        const double fx =
            r.px / 20.0 - r.w / 2.0 + (dims_from_header ? doc.nx / 2.0 : shift_x);
        const double fy = -r.py / 24.0 - 1.0 + shift_y;
        const double fz =
            r.pz / 20.0 - r.d / 2.0 + (dims_from_header ? doc.nz / 2.0 : shift_z);
        int x = 0, y = 0, z = 0;
        if (!integral(fx, x) || !integral(fy, y) || !integral(fz, z)) {
            doc.warnings.push_back("line " + std::to_string(r.line_no) +
                                   ": placement not on whole cells, skipped");
            continue;
        }
        if (x < 0 || y < 0 || z < 0 || x + r.w > doc.nx || y >= doc.ny ||
            z + r.d > doc.nz) {
            doc.warnings.push_back("line " + std::to_string(r.line_no) +
                                   ": placement outside the grid, skipped");
            continue;
        }
        steps[r.step].push_back(BrickPlacement{x, y, z, r.w, r.d, r.orientation,
                                               r.part->part_id, r.color});
    }
    for (auto& s : steps)
        if (!s.empty()) doc.steps.push_back(std::move(s));
    return doc;
}

inline BrickModel to_model(const LDrawDocument& doc) {
    BrickModel model;
    model.nx = doc.nx;
    model.ny = doc.ny;
    model.nz = doc.nz;
    for (const auto& s : doc.steps)
        model.placements.insert(model.placements.end(), s.begin(), s.end());
    return model;
}

/// Step-by-step build text: one step per nonempty layer, each brick named by
/// its catalog footprint and palette color, with a running total.
inline std::string emit_instructions(const BrickModel& model,
                                     const Palette& palette = builtin_palette()) {
    std::map<int, std::vector<const BrickPlacement*>> by_layer;
    for (const BrickPlacement& p : model.placements) by_layer[p.y].push_back(&p);

    std::string out;
    std::size_t step = 0;
    std::size_t cumulative = 0;
    for (const auto& [y, bricks] : by_layer) {
        ++step;
        out += "Step " + std::to_string(step) + ": layer " + std::to_string(y) + "\n";
        for (const BrickPlacement* p : bricks) {
            const int a = std::min(p->w, p->d), b = std::max(p->w, p->d);
            out += "  place " + std::to_string(a) + "x" + std::to_string(b) +
                   " brick " + p->part_id + ", " +
                   detail::color_name(palette, p->color_code) + ", at (" +
                   std::to_string(p->x) + ", " + std::to_string(p->y) + ", " +
                   std::to_string(p->z) + ")\n";
        }
        cumulative += bricks.size();
        out += "  total " + std::to_string(cumulative) +
               (cumulative == 1 ? " brick" : " bricks") + "\n";
    }
    return out;
}

inline std::string bom_csv(const BrickModel& model,
                           const Palette& palette = builtin_palette()) {
    std::string out = "part_id,color_code,color_name,count\n";
    for (const BomLine& line : bill_of_materials(model))
        out += line.part_id + "," + std::to_string(line.color_code) + "," +
               detail::color_name(palette, line.color_code) + "," +
               std::to_string(line.count) + "\n";
    return out;
}

} // namespace voxbrick
