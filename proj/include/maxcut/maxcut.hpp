#pragma once

#include "maxcut/brute_force.hpp"
#include "maxcut/cut_state.hpp"
#include "maxcut/error.hpp"
#include "maxcut/generators.hpp"
#include "maxcut/graph.hpp"
#include "maxcut/gset.hpp"
#include "maxcut/harness.hpp"
#include "maxcut/random.hpp"
#include "maxcut/results.hpp"
#include "maxcut/softtabu.hpp"
#include "maxcut/solvers.hpp"
#include "maxcut/tuning.hpp"
