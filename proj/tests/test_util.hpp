#pragma once

#include <random>
#include <vector>

#include "voxbrick/color.hpp"
#include "voxbrick/grid.hpp"

namespace test_util {

inline double uniform01(std::mt19937& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline voxbrick::VoxelGrid random_grid(std::mt19937& rng, int nx, int ny, int nz,
                                       double fill_probability) {
    voxbrick::VoxelGrid grid(nx, ny, nz);
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x)
                if (uniform01(rng) < fill_probability) grid.fill(x, y, z);
    return grid;
}

/// Random occupancy colored from a small random pool, so quantization and
/// merging see realistic repeated colors.
inline voxbrick::VoxelGrid random_colored_grid(std::mt19937& rng, int nx, int ny,
                                               int nz, double fill_probability,
                                               int pool_size = 5) {
    std::vector<voxbrick::Rgb> pool;
    for (int i = 0; i < pool_size; ++i)
        pool.push_back(voxbrick::Rgb{uniform01(rng), uniform01(rng), uniform01(rng)});
    voxbrick::VoxelGrid grid(nx, ny, nz, true);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x)
                if (uniform01(rng) < fill_probability) grid.fill(x, y, z, pool[pick(rng)]);
    return grid;
}

} // namespace test_util
