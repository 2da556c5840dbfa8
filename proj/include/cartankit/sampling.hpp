#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cartankit/ancoords.hpp"

namespace cartankit {

using Rng = std::mt19937_64;

/// Standard normal scalar in F (imaginary part zero over R).
Scalar random_scalar(Rng& rng, FieldTag f);

/// Random nilpotent element (t1 = t2 = 0), all slots standard normal in
/// their fields (xx, yy purely imaginary; absent over R).
ANElement random_nilpotent(const GroupContext& ctx, Rng& rng);

/// Random element with torus part included.
ANElement random_an(const GroupContext& ctx, Rng& rng);

/// Haar-like random element of K = G ^ SU(n+2): unitary block rotations in
/// the eigenbasis of the form matrix (U(n) x U(2) over C, O(n) x O(2) over
/// R), determinant corrected to 1.
GroupMatrix random_k(const GroupContext& ctx, Rng& rng);

/// Generic group element exp(0.4 * random_an) * random_k.
GroupMatrix random_group(const GroupContext& ctx, Rng& rng);

/// Unit-norm random real combination of the given elements.
ANElement random_unit_combo(const std::vector<ANElement>& basis, Rng& rng);

} // namespace cartankit
