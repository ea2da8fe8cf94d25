#pragma once

#include "ldgm/geometry.hpp"
#include "ldgm/harness.hpp"
#include "ldgm/objectives.hpp"
#include "ldgm/oracles.hpp"
#include "ldgm/random.hpp"
#include "ldgm/solvers.hpp"
#include "ldgm/version.hpp"
