// Alternating (see-saw) minimization of <psi|M|psi> over Schmidt-rank-two
// states. One side's 2-plane is held fixed while the other side is solved
// exactly as a small Hermitian eigenproblem; the minimizer's Schmidt vectors
// then refit the plane for the next half-step. Each half-step optimizes over
// a superset containing the current iterate, so the value never increases.
// The result is always an upper bound on the true minimum, certified by the
// returned state.

#pragma once

#include <cstdint>
#include <vector>

#include "bentlab/core.hpp"

namespace bentlab {

// Schmidt-rank-two parametrization: sum_s sqrt(mu_s) |a_s> (x) |b_s> with
// mu_1 + mu_2 = 1 and both vector pairs orthonormal.
struct RankTwoState {
    Eigen::Vector2d mu;
    Mat a_vecs;   // D_A x 2
    Mat b_vecs;   // D_B x 2

    Vec assemble() const;
};

struct SeesawOptions {
    int restarts = 64;
    int max_iters = 500;
    double tol = 1e-12;
    int stall_iters = 3;
    std::uint64_t seed = 0;
    // Optional deterministic starting Alice 2-planes tried before the random
    // restarts (columns orthonormal, D_A x 2).
    std::vector<Mat> warm_starts;
};

struct OptimizerReport {
    double min_value = 0.0;
    RankTwoState argmin;
    int restarts = 0;
    std::vector<int> iterations_per_restart;
    bool converged = false;
    std::uint64_t seed = 0;
};

double rank2_expectation(const Mat& m, int dA, int dB, const RankTwoState& v);

OptimizerReport min_rank2(const Mat& m, int dA, int dB,
                          const SeesawOptions& opts = {});

// Per-restart rng seed derivation (splitmix-style counter mix), shared with
// the map-positivity searches.
std::uint64_t restart_seed(std::uint64_t seed, int restart);

}  // namespace bentlab
