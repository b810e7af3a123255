#pragma once

#include "voxbrick/brick.hpp"
#include "voxbrick/color.hpp"
#include "voxbrick/error.hpp"
#include "voxbrick/grid.hpp"
#include "voxbrick/grid_io.hpp"
#include "voxbrick/io.hpp"
#include "voxbrick/ldraw.hpp"
#include "voxbrick/mesh.hpp"
#include "voxbrick/pipeline.hpp"
