#pragma once

/// Umbrella header: trajectories, polynomials, root-modulus bounds, the
/// numeric root finder, integer-root analysis, and JSON serialization.

#include "collatz/analysis.hpp"
#include "collatz/bounds.hpp"
#include "collatz/errors.hpp"
#include "collatz/polynomial.hpp"
#include "collatz/roots.hpp"
#include "collatz/serialize.hpp"
#include "collatz/trajectory.hpp"
