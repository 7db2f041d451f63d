// The five-step local-filtering / twirling reduction that maps any NPT
// state onto a canonical rho_bc with negative partial transpose, plus the
// optional full twirl onto the Werner line. Twirls are exact projections
// onto the invariant operator algebra; Monte-Carlo averaging over random
// unitaries is provided as an independent oracle.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bentlab/canonical.hpp"
#include "bentlab/core.hpp"
#include "bentlab/random.hpp"

namespace bentlab {

// ----------------------------------------------------------------- types ---

struct NptWitness {
    PureState psi;   // unit norm
    double value;    // <psi| PT(rho) |psi> < 0
};

struct ReductionStage {
    std::string name;
    BipartiteState state;
    double tr_H_rho;
    double trace;
    double min_eig;
};

struct ReductionTrace {
    std::vector<ReductionStage> stages;
};

struct ReductionResult {
    CanonicalParams params;
    BipartiteState state;
    ReductionTrace trace;
};

// ------------------------------------------------------------ operations ---

// Most negative eigenvector of PT(rho) when the minimum eigenvalue is below
// -1e-12; nullopt otherwise.
std::optional<NptWitness> find_npt_witness(const BipartiteState& rho);

// Step (i): local unitaries carrying the witness into computational Schmidt
// form. Returns the rotated state and phi = sum_i sqrt(lambda_i)|ii> with
// <phi| PT(rho') |phi> equal to the original witness value. Bob's rotation
// maps the conjugated Schmidt vectors to the computational basis; that is
// what keeps the expectation against the fixed-basis partial transpose
// unchanged. Witness Schmidt coefficients below 1e-10 of the largest are
// truncated; the truncated rank becomes the working dimension d.
std::pair<BipartiteState, PureState> schmidt_rotate(const BipartiteState& rho,
                                                    const NptWitness& w);

// Step (ii): Alice-side filter W with (W^dag (x) 1)|Phi+_d> = |phi|, i.e.
// W = diag(sqrt(d lambda_i)) on the support and zero outside, output
// renormalized.
BipartiteState local_filter(const BipartiteState& rho, const PureState& phi);

// Step (iii): project both sides onto span{|0>..|d-1>} and renormalize.
BipartiteState project_dd(const BipartiteState& rho, int d);

// Step (iv): exact projection onto the algebra spanned by |ii><ii|,
// |ij><ij| and |ij><ji|.
BipartiteState diagonal_twirl(const BipartiteState& rho);

// Step (v): average the invariant-algebra coefficients over simultaneous
// basis permutations. Input must already lie in the diagonal-twirl algebra.
BipartiteState permutation_symmetrize(
    const BipartiteState& rho,
    const NumericPolicy& pol = NumericPolicy::standard());

// Step (vi), optional: exact U (x) U Haar twirl = projection onto
// span{I, swap}.
BipartiteState full_twirl(const BipartiteState& rho);

// Steps (i)-(v) composed. Throws NotNpt when no witness exists.
ReductionResult reduce_to_canonical(const BipartiteState& rho);

// Canonical parameters read off a state already in rho_bc form.
CanonicalParams extract_params(const BipartiteState& rho,
                               const NumericPolicy& pol = NumericPolicy::standard());

double tr_H_rho(const BipartiteState& rho, int d);

// Monte-Carlo oracles: average of (U (x) U) rho (U (x) U)^dag over `samples`
// random diagonal-phase (resp. Haar) unitaries.
Mat mc_diagonal_twirl(const BipartiteState& rho, int samples, std::uint64_t seed);
Mat mc_full_twirl(const BipartiteState& rho, int samples, std::uint64_t seed);

}  // namespace bentlab
