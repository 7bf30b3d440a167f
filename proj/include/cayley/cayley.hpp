#pragma once

#include "cayley/census.hpp"
#include "cayley/common.hpp"
#include "cayley/flipdyn.hpp"
#include "cayley/minkowski.hpp"
#include "cayley/ratlp.hpp"
#include "cayley/regularity.hpp"
#include "cayley/render.hpp"
#include "cayley/tiling_io.hpp"
#include "cayley/triangulation.hpp"
#include "cayley/trigrid.hpp"
#include "cayley/tropic.hpp"
