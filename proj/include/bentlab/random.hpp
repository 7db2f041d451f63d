// Seeded random objects used by the twirl oracles, the see-saw restarts and
// the test suites. All draws go through std::mt19937_64 so a fixed seed gives
// the same stream on a given platform.

#pragma once

#include <random>

#include "bentlab/types.hpp"

namespace bentlab {

using Rng = std::mt19937_64;

Vec gaussian_vec(int n, Rng& rng);
Mat gaussian_mat(int rows, int cols, Rng& rng);

// Haar-distributed unitary via QR of a complex Gaussian matrix with the
// R diagonal's phases folded into Q.
Mat haar_unitary(int d, Rng& rng);

// d x k isometry whose columns span a Haar-random k-plane.
Mat haar_isometry(int d, int k, Rng& rng);

// Random density matrix (Hilbert-Schmidt measure) on dim dimensions.
Mat random_density(int dim, Rng& rng);

// Random unit vector.
Vec random_unit_vec(int n, Rng& rng);

}  // namespace bentlab
