#pragma once

/// Triangle mesh ingestion: OFF and OBJ parsing, area-weighted surface
/// sampling, and point-cloud voxelization.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "voxbrick/error.hpp"
#include "voxbrick/grid.hpp"
#include "voxbrick/io.hpp"

namespace voxbrick {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
};

struct PointCloud {
    std::vector<Vec3> points;
    std::vector<Rgb> colors; // empty, or one entry per point
};

inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
    const double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
    const double cx = uy * vz - uz * vy;
    const double cy = uz * vx - ux * vz;
    const double cz = ux * vy - uy * vx;
    return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

namespace detail {

inline void append_fan(std::vector<std::array<int, 3>>& faces,
                       const std::vector<int>& poly, std::size_t line) {
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        const std::array<int, 3> tri{poly[0], poly[i], poly[i + 1]};
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw ParseError(line, "degenerate face with repeated vertex index");
        faces.push_back(tri);
    }
}

} // namespace detail

/// OFF parser. Accepts the counts on the header line ("OFF 8 6 0" and the
/// glued "OFF8 6 0" variant seen in the wild) or on the following line.
/// Polygons with more than three vertices are fan-triangulated.
inline TriangleMesh parse_off(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t li = 0;
    const auto next_tokens = [&](const char* what) {
        while (li < lines.size()) {
            std::string_view line = lines[li];
            const std::size_t hash = line.find('#');
            if (hash != std::string_view::npos) line = line.substr(0, hash);
            auto toks = split_tokens(line);
            ++li;
            if (!toks.empty()) return toks;
        }
        throw ParseError(lines.size() + 1, std::string("missing ") + what);
    };

    std::vector<std::string_view> counts;
    {
        auto toks = next_tokens("OFF header");
        if (!toks[0].starts_with("OFF"))
            throw ParseError(li, "expected OFF header, got '" + std::string(toks[0]) + "'");
        std::string_view rest = toks[0].substr(3);
        if (!rest.empty()) counts.push_back(rest);
        counts.insert(counts.end(), toks.begin() + 1, toks.end());
        if (counts.empty())
            counts = next_tokens("vertex/face counts");
    }
    if (counts.size() != 2 && counts.size() != 3)
        throw ParseError(li, "counts line must be 'nv nf [ne]'");
    long long nv = 0, nf = 0;
    if (!parse_int(counts[0], nv) || nv < 0)
        throw ParseError(li, "bad vertex count '" + std::string(counts[0]) + "'");
    if (!parse_int(counts[1], nf) || nf < 0)
        throw ParseError(li, "bad face count '" + std::string(counts[1]) + "'");

    TriangleMesh mesh;
    for (long long i = 0; i < nv; ++i) {
        const auto toks = next_tokens("vertex line");
        if (toks.size() < 3)
            throw ParseError(li, "vertex line needs 3 coordinates");
        Vec3 v;
        if (!parse_double(toks[0], v.x) || !parse_double(toks[1], v.y) ||
            !parse_double(toks[2], v.z))
            throw ParseError(li, "bad vertex coordinate");
        mesh.vertices.push_back(v);
    }
    for (long long i = 0; i < nf; ++i) {
        const auto toks = next_tokens("face line");
        long long n = 0;
        if (!parse_int(toks[0], n) || n < 3)
            throw ParseError(li, "face must list at least 3 vertices");
        if (static_cast<long long>(toks.size()) < n + 1)
            throw ParseError(li, "face lists fewer indices than declared");
        std::vector<int> poly;
        for (long long k = 1; k <= n; ++k) {
            long long idx = 0;
            if (!parse_int(toks[static_cast<std::size_t>(k)], idx))
                throw ParseError(li, "bad face index '" +
                                         std::string(toks[static_cast<std::size_t>(k)]) + "'");
            if (idx < 0 || idx >= nv)
                throw ParseError(li, "face index " + std::to_string(idx) +
                                         " out of range [0, " + std::to_string(nv) + ")");
            poly.push_back(static_cast<int>(idx));
        }
        detail::append_fan(mesh.faces, poly, li);
    }
    return mesh;
}

/// OBJ parser for the v/f subset. Face entries may carry /vt/vn suffixes
/// (ignored); negative indices count back from the vertices read so far.
/// Records other than v and f are skipped.
inline TriangleMesh parse_obj(std::string_view text) {
    TriangleMesh mesh;
    const auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::string_view line = lines[li];
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        const auto toks = split_tokens(line);
        if (toks.empty()) continue;
        const std::size_t lno = li + 1;
        if (toks[0] == "v") {
            if (toks.size() < 4)
                throw ParseError(lno, "v record needs 3 coordinates");
            Vec3 v;
            if (!parse_double(toks[1], v.x) || !parse_double(toks[2], v.y) ||
                !parse_double(toks[3], v.z))
                throw ParseError(lno, "bad vertex coordinate");
            mesh.vertices.push_back(v);
        } else if (toks[0] == "f") {
            if (toks.size() < 4)
                throw ParseError(lno, "f record needs at least 3 vertices");
            const long long count = static_cast<long long>(mesh.vertices.size());
            std::vector<int> poly;
            for (std::size_t k = 1; k < toks.size(); ++k) {
                std::string_view ref = toks[k];
                const std::size_t slash = ref.find('/');
                if (slash != std::string_view::npos) ref = ref.substr(0, slash);
                long long idx = 0;
                if (!parse_int(ref, idx) || idx == 0)
                    throw ParseError(lno, "bad face index '" + std::string(toks[k]) + "'");
                const long long resolved = idx > 0 ? idx - 1 : count + idx;
                if (resolved < 0 || resolved >= count)
                    throw ParseError(lno, "face index " + std::to_string(idx) +
                                              " out of range");
                poly.push_back(static_cast<int>(resolved));
            }
            detail::append_fan(mesh.faces, poly, lno);
        }
    }
    return mesh;
}

/// Draws n surface points: triangles chosen with probability proportional to
/// area, positions uniform in the triangle via the square-root barycentric
/// map. Reproducible across platforms: the generator is std::mt19937_64
/// seeded with `seed`, and uniforms are built as (next() >> 11) * 2^-53,
/// three draws per point in a fixed order.
inline PointCloud sample_surface(const TriangleMesh& mesh, std::size_t n,
                                 std::uint64_t seed) {
    if (n < 1) throw InputError("sample count must be >= 1");
    std::vector<double> cumulative;
    cumulative.reserve(mesh.faces.size());
    double total = 0.0;
    for (const auto& f : mesh.faces) {
        total += triangle_area(mesh.vertices[static_cast<std::size_t>(f[0])],
                               mesh.vertices[static_cast<std::size_t>(f[1])],
                               mesh.vertices[static_cast<std::size_t>(f[2])]);
        cumulative.push_back(total);
    }
    if (total <= 0.0)
        throw GeometryError("mesh has zero total surface area");

    std::mt19937_64 rng(seed);
    const auto uniform = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    PointCloud cloud;
    cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = uniform() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        if (it == cumulative.end()) --it;
        const auto& f = mesh.faces[static_cast<std::size_t>(it - cumulative.begin())];
        const Vec3& a = mesh.vertices[static_cast<std::size_t>(f[0])];
        const Vec3& b = mesh.vertices[static_cast<std::size_t>(f[1])];
        const Vec3& c = mesh.vertices[static_cast<std::size_t>(f[2])];
        const double sr1 = std::sqrt(uniform());
        const double r2 = uniform();
        const double wa = 1.0 - sr1;
        const double wb = sr1 * (1.0 - r2);
        const double wc = sr1 * r2;
        cloud.points.push_back(Vec3{wa * a.x + wb * b.x + wc * c.x,
                                    wa * a.y + wb * b.y + wc * c.y,
                                    wa * a.z + wb * b.z + wc * c.z});
    }
    return cloud;
}

/// Normalizes the cloud into the unit cube (uniform scale, centered, 2%
/// margin on the longest axis) and marks every cell containing at least one
/// point. Cells are half-open, so the occupancy is invariant to uniform
/// scaling and translation of the input; a point landing exactly on the cube
/// ceiling clamps into the last cell. Cell colors are the mean over the
/// points inside, accumulated in point order.
inline VoxelGrid voxelize(const PointCloud& cloud, int resolution) {
    if (resolution < 1) throw InputError("resolution must be >= 1");
    if (cloud.points.empty()) throw InputError("cannot voxelize an empty point cloud");
    if (!cloud.colors.empty() && cloud.colors.size() != cloud.points.size())
        throw InputError("point cloud colors must match point count");

    Vec3 lo = cloud.points.front(), hi = cloud.points.front();
    for (const Vec3& p : cloud.points) {
        lo.x = std::min(lo.x, p.x); hi.x = std::max(hi.x, p.x);
        lo.y = std::min(lo.y, p.y); hi.y = std::max(hi.y, p.y);
        lo.z = std::min(lo.z, p.z); hi.z = std::max(hi.z, p.z);
    }
    const double extent = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
    const double scale = extent > 0.0 ? 0.96 / extent : 0.0;
    const double ox = 0.5 - scale * (lo.x + hi.x) * 0.5;
    const double oy = 0.5 - scale * (lo.y + hi.y) * 0.5;
    const double oz = 0.5 - scale * (lo.z + hi.z) * 0.5;

    const bool colored = !cloud.colors.empty();
    VoxelGrid grid(resolution, resolution, resolution, colored);
    const auto cell_of = [resolution](double v) {
        int c = static_cast<int>(std::floor(v * resolution));
        return std::clamp(c, 0, resolution - 1);
    };

    std::vector<Rgb> sums;
    std::vector<std::size_t> counts;
    if (colored) {
        sums.assign(grid.cell_count(), Rgb{});
        counts.assign(grid.cell_count(), 0);
    }
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const Vec3& p = cloud.points[i];
        const int cx = cell_of(scale * p.x + ox);
        const int cy = cell_of(scale * p.y + oy);
        const int cz = cell_of(scale * p.z + oz);
        if (colored) {
            const std::size_t idx = grid.index(cx, cy, cz);
            sums[idx].r += cloud.colors[i].r;
            sums[idx].g += cloud.colors[i].g;
            sums[idx].b += cloud.colors[i].b;
            ++counts[idx];
        } else {
            grid.fill(cx, cy, cz);
        }
    }
    if (colored) {
        for (int z = 0; z < resolution; ++z)
            for (int y = 0; y < resolution; ++y)
                for (int x = 0; x < resolution; ++x) {
                    const std::size_t idx = grid.index(x, y, z);
                    if (counts[idx] == 0) continue;
                    const double n = static_cast<double>(counts[idx]);
                    grid.fill(x, y, z,
                              Rgb{sums[idx].r / n, sums[idx].g / n, sums[idx].b / n});
                }
    }
    return grid;
}

} // namespace voxbrick
