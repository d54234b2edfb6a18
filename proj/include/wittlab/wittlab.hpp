#pragma once

// Umbrella header: exact pi-typical Witt vectors, Frobenius lifts and
// pi-derivations, the arithmetic Taylor expansion, and the verification
// harness, over the three shipped coefficient rings.

#include "wittlab/coeff_ring.hpp"
#include "wittlab/config.hpp"
#include "wittlab/delta.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/harness.hpp"
#include "wittlab/parse.hpp"
#include "wittlab/poly.hpp"
#include "wittlab/rng.hpp"
#include "wittlab/witt.hpp"
