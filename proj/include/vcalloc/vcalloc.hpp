#pragma once

// Umbrella header: allocation of computation-intensive job graphs onto
// vehicular-cloud service providers.

#include "vcalloc/brute_force.hpp"
#include "vcalloc/experiment.hpp"
#include "vcalloc/instance_io.hpp"
#include "vcalloc/model.hpp"
#include "vcalloc/objective.hpp"
#include "vcalloc/optimal.hpp"
#include "vcalloc/randomized.hpp"
#include "vcalloc/rng.hpp"
#include "vcalloc/scenario.hpp"
