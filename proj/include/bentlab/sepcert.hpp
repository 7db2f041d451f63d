// Explicit product-state ensembles certifying separability of the PPT
// corner states A, B, J, K and, by barycentric mixing, of every canonical
// state in the PPT region.

#pragma once

#include <string>
#include <vector>

#include "bentlab/canonical.hpp"
#include "bentlab/core.hpp"

namespace bentlab {

// ----------------------------------------------------------------- types ---

struct ProductEnsemble {
    struct Member {
        double w;    // positive, weights sum to 1
        Vec alice;   // need not be unit norm
        Vec bob;
    };
    std::vector<Member> members;
};

struct SeparabilityReport {
    double max_entry_error = 0.0;
    bool weights_ok = false;
    bool members_ok = false;
    bool pass = false;
};

// ------------------------------------------------------------ operations ---

// Trace-normalized sum w_i |a_i><a_i| (x) |b_i><b_i|.
BipartiteState ensemble_to_density(const ProductEnsemble& e, int dA, int dB);

// Corner ensembles. The B and J mixtures are easiest to derive for the
// partial transposes of those states; the ensembles returned here reproduce
// the states themselves, with Bob's vectors conjugated accordingly.
ProductEnsemble decomposition_A(int d);
ProductEnsemble decomposition_B(int d);
ProductEnsemble decomposition_J(int d);
ProductEnsemble decomposition_K(int d);

// Barycentric combination of the corner ensembles over triangles ABK / AKJ;
// valid for any p with classify_region(p) == SeparablePPT.
ProductEnsemble decompose_ppt_point(const CanonicalParams& p);

SeparabilityReport verify_separable(const ProductEnsemble& e,
                                    const BipartiteState& rho,
                                    double tol = 1e-11);

}  // namespace bentlab
