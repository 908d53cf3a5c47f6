#pragma once

#include <cstdint>
#include <vector>

#include "entdetect/density_matrix.hpp"

namespace entdetect {

/// Computational-basis ket |digits> over the given dims.
ComplexVector basis_ket(const Dims& dims, const std::vector<int>& digits);

/// (1 - p)/D * I + p * rho. Requires 0 <= p <= 1.
DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double p);

/// (|00> + |11>)/sqrt(2) on C^2 (x) C^2.
DensityMatrix bell_state();

/// Horodecki 2 x 4 bound entangled state, 0 < d < 1.
DensityMatrix horodecki_2x4(double d);

/// x |xi><xi| + (1 - x) horodecki_2x4(d), with |xi> = (|0,0> + |1,1>)/sqrt(2)
/// placed on levels 0 and 1 of the four-level factor.
DensityMatrix horodecki_2x4_bell_mixture(double d, double x);

/// Horodecki 3 x 3 bound entangled state, 0 < x < 1. This is the full 9 x 9
/// matrix including the (8,8) = x diagonal entry (1-based).
DensityMatrix horodecki_3x3(double x);

/// The five orthonormal product vectors of the tiles UPB on C^3 (x) C^3.
std::vector<ComplexVector> tiles_upb_vectors();

/// (I_9 - sum |phi_i><phi_i|)/4, a rank-4 PPT entangled state.
DensityMatrix tiles_upb_state();

ComplexVector w_bar_vector();
/// Projector onto (|001>+|010>+|100>+|112>+|121>+|211>)/sqrt(6) in 3x3x3.
DensityMatrix w_bar_state();

/// (|000> + eps|110> + |111>)/sqrt(2 + eps^2).
ComplexVector ghz_epsilon_vector(double eps);
DensityMatrix ghz_epsilon_state(double eps);

/// Three-qubit GHZ projector.
DensityMatrix ghz3_state();

// Seeded generators; the same seed always yields the same state.

ComplexMatrix random_unitary(int d, std::uint64_t seed);
ComplexVector random_pure_vector(const Dims& dims, std::uint64_t seed);
DensityMatrix random_pure(const Dims& dims, std::uint64_t seed);
/// G G^H / tr(G G^H) with G a D x rank complex Ginibre matrix.
DensityMatrix random_mixed(const Dims& dims, int rank, std::uint64_t seed);
/// Convex mixture of `terms` random pure product states (one random pure
/// state per factor) with Dirichlet(1, ..., 1) weights. Fully separable.
DensityMatrix random_separable(const Dims& dims, int terms, std::uint64_t seed);
/// Tripartite only: each term is a pure state product across a random cut
/// i | jk, mixed with Dirichlet(1, ..., 1) weights. Biseparable.
DensityMatrix random_biseparable(const Dims& dims, int terms, std::uint64_t seed);

} // namespace entdetect
