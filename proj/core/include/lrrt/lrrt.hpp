#pragma once

#include "lrrt/bench.hpp"
#include "lrrt/dataset.hpp"
#include "lrrt/errors.hpp"
#include "lrrt/geometry.hpp"
#include "lrrt/grid_world.hpp"
#include "lrrt/map_image.hpp"
#include "lrrt/metrics.hpp"
#include "lrrt/oracle.hpp"
#include "lrrt/planner.hpp"
#include "lrrt/region.hpp"
#include "lrrt/rng.hpp"
