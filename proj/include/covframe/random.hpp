#pragma once

// Seeded generators for test inputs and Haar sampling.

#include "covframe/spin.hpp"

#include <random>
#include <vector>

namespace covframe {

using Rng = std::mt19937_64;

/// Haar-distributed SU(2) element as z-y-z Euler angles.
EulerAngles haar_euler(Rng& rng);

/// Random probability vector (flat Dirichlet).
RealVector random_distribution(int dim, Rng& rng);

/// Random full-rank density matrix (Ginibre G, rho = G G^dagger / Tr).
Operator random_density_matrix(int dim, Rng& rng);

/// Random complex matrix with i.i.d. standard normal entries.
Operator random_ginibre(int rows, int cols, Rng& rng);

/// Random CPTP Kraus set of `count` operators: stacked Ginibre G
/// orthonormalized so that sum E^dagger E = I.
std::vector<Operator> random_kraus(int dim, int count, Rng& rng);

}  // namespace covframe
