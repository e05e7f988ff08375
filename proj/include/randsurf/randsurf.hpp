#pragma once

#include "randsurf/characters.hpp"
#include "randsurf/connectivity.hpp"
#include "randsurf/cycle_stats.hpp"
#include "randsurf/exact_enum.hpp"
#include "randsurf/montecarlo.hpp"
#include "randsurf/perm.hpp"
#include "randsurf/surface.hpp"
