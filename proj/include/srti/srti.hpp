#pragma once

// Umbrella header.

#include "srti/core.hpp"
#include "srti/encoding.hpp"
#include "srti/generator.hpp"
#include "srti/io.hpp"
#include "srti/objectives.hpp"
#include "srti/oracle.hpp"
#include "srti/personalization.hpp"
#include "srti/solver.hpp"
#include "srti/stability.hpp"
