#pragma once

/// Umbrella header: the full biased-derivative toolkit.

#include "bider/bias.hpp"
#include "bider/bubble.hpp"
#include "bider/calculus.hpp"
#include "bider/csv.hpp"
#include "bider/errors.hpp"
#include "bider/integrators.hpp"
#include "bider/models.hpp"
#include "bider/parse.hpp"
#include "bider/regime.hpp"
#include "bider/signal.hpp"
#include "bider/svg.hpp"
#include "bider/time_grid.hpp"
#include "bider/trajectory.hpp"
