#pragma once

// Functional bootstrapping for LWE ciphertexts with large plaintext moduli.
// The accumulator is a length-r vector of RLWE ciphertexts acted on by monic
// monomial permutation matrices, so the rotation group has order 2Nr while
// every ring stays at dimension N; a single-ring baseline at dimension N*r is
// included for comparison.

#include "bench.hpp"
#include "bootstrap.hpp"
#include "lwe.hpp"
#include "mmpm.hpp"
#include "modmath.hpp"
#include "noise.hpp"
#include "params.hpp"
#include "ring.hpp"
#include "rlwe.hpp"
#include "rng.hpp"
#include "serialize.hpp"
#include "switching.hpp"
