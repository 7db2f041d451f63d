// Schmidt-rank-two distillability machinery: the minimum of
// <psi|PT(rho(c,eps))^{(x)n}|psi> over rank-two states, epsilon thresholds
// by bisection, the two explicit distillation witnesses, the overlap bound
// with maximally entangled states, and the null-space positivity check at
// eps = 0.

#pragma once

#include <optional>

#include "bentlab/canonical.hpp"
#include "bentlab/seesaw.hpp"

namespace bentlab {

// ----------------------------------------------------------------- types ---

// Cap on the total bipartite dimension of dense n-copy operators.
// BENTLAB_MAX_DIM in the environment overrides everything.
struct SizeCaps {
    int max_dim = 81;

    static SizeCaps resolve(bool stress = false);
};

struct Verdict {
    enum class Kind { DistillableWitnessFound, NoViolationFound };
    Kind kind = Kind::NoViolationFound;
    std::optional<RankTwoState> witness;
    double margin = 0.0;

    bool found() const { return kind == Kind::DistillableWitnessFound; }
};

struct ThresholdResult {
    double eps0 = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int evaluations = 0;
};

struct OverlapReport {
    double max_overlap = 0.0;
    OptimizerReport report;
};

struct NullSpaceReport {
    int null_dim = 0;
    double min_value = 0.0;
    OptimizerReport report;
};

// ------------------------------------------------------------ operations ---

// PT(rho(c,eps))^{(x)n} with all copies' A factors regrouped together.
Mat n_copy_pt(const EpsParams& p, int n, const SizeCaps& caps = SizeCaps::resolve());

// min over Schmidt-rank-two psi of <psi| PT(rho(c,eps))^{(x)n} |psi>.
// The explicit one-copy witness planes are always tried as warm starts
// (tensored per copy) on top of the random restarts.
OptimizerReport f_value(const EpsParams& p, int n, const SeesawOptions& opts = {},
                        const SizeCaps& caps = SizeCaps::resolve());

// Bisection on the sign of f_value over eps in [0, bracket_hi]; bracket_hi
// defaults to the physicality limit 1/(d(d-1)) - c. Throws BracketError when
// the endpoints do not straddle a sign change.
ThresholdResult eps_threshold(int d, double c, int n, const SeesawOptions& opts = {},
                              double width = 1e-5, double bracket_hi = -1.0,
                              const SizeCaps& caps = SizeCaps::resolve());

// Evaluates the two explicit rank-two witnesses on PT(rho_bc):
//   w1 = |00> + |11>
//   w2 = (sum_j |j>)(x)(sum_k |k>) + (sum_j w^j |j>)(x)(sum_k w^-k |k>)
// with w = exp(2 pi i / d). Certified when negative; margins are
// expectations of the unit-normalized witnesses.
Verdict witness_scan(const CanonicalParams& p);

// Alice 2-planes of the two witnesses (warm starts for the optimizer).
std::vector<Mat> witness_planes(int d);

// Maximum overlap of a Schmidt-rank-two state with the maximally entangled
// psi, computed with the same see-saw engine on -|psi><psi|.
OverlapReport maxent_overlap_max(int d, const PureState& psi,
                                 const SeesawOptions& opts = {});

// Null-space dimension of the n-copy PT at eps = 0 (eigenvalues below
// 1e-12) together with the rank-two minimum over the same operator.
NullSpaceReport null_space_margin(const EpsParams& p, int n,
                                  const SeesawOptions& opts = {},
                                  const SizeCaps& caps = SizeCaps::resolve());

}  // namespace bentlab
