#pragma once

// Umbrella header: tropical (max,+) circuits for maximum weight independent
// set, with compilers from graph decompositions, verification against the
// exact optimum, separator-family audits, and constructive hitting-set search.

#include "tropic/audit.hpp"
#include "tropic/circuit.hpp"
#include "tropic/compile.hpp"
#include "tropic/config.hpp"
#include "tropic/decomposition.hpp"
#include "tropic/error.hpp"
#include "tropic/exact.hpp"
#include "tropic/generators.hpp"
#include "tropic/graph.hpp"
#include "tropic/hitting.hpp"
#include "tropic/io.hpp"
#include "tropic/minor.hpp"
#include "tropic/rng.hpp"
#include "tropic/verify.hpp"
#include "tropic/vertex_set.hpp"
#include "tropic/weight.hpp"

namespace tropic {}
