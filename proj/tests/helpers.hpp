// Shared test helpers: canonical fixtures, random samplers, polygon
// samplers for the (b,c) geometry.

#pragma once

#include "bentlab/canonical.hpp"
#include "bentlab/core.hpp"
#include "bentlab/random.hpp"

namespace bentlab::test {

inline Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

// sigma^PT(lambda) = lambda I - (lambda+1)|Phi_0><Phi_0| on d (x) d.
inline Mat sigma_pt(int d, double lambda) {
    const Vec phi = max_entangled(d, 0).vec;
    return lambda * Mat::Identity(d * d, d * d) -
           (lambda + 1.0) * Mat(phi * phi.adjoint());
}

// Uniform sample from a convex polygon by rejection inside its bounding box.
inline CanonicalParams sample_polygon(int d, bool (*inside)(const CanonicalParams&),
                                      Rng& rng) {
    double blo = 1e9, bhi = -1e9, clo = 1e9, chi = -1e9;
    for (const auto& p : region_points(d)) {
        blo = std::min(blo, p.b);
        bhi = std::max(bhi, p.b);
        clo = std::min(clo, p.c);
        chi = std::max(chi, p.c);
    }
    std::uniform_real_distribution<double> ub(blo, bhi), uc(clo, chi);
    for (int tries = 0; tries < 100000; ++tries) {
        const CanonicalParams p{d, ub(rng), uc(rng)};
        if (inside(p)) return p;
    }
    throw Error("sample_polygon: rejection sampling failed");
}

// Random physical canonical parameters (uniform over the a,b,c >= 0 region).
inline CanonicalParams sample_physical(int d, Rng& rng) {
    const double lim = 2.0 / (double(d) * double(d - 1));
    std::uniform_real_distribution<double> u(0.0, lim);
    for (;;) {
        const CanonicalParams p{d, u(rng), u(rng)};
        if (p.physical()) return p;
    }
}

// Rejection-sampled NPT density matrix on dA (x) dB.
inline BipartiteState sample_npt_state(int dA, int dB, Rng& rng) {
    for (int tries = 0; tries < 10000; ++tries) {
        BipartiteState rho(random_density(dA * dB, rng), dA, dB, true);
        const HermEig eig = herm_eig(partial_transpose(rho).mat());
        if (eig.values(0) < -1e-8) return rho;
    }
    throw Error("sample_npt_state: no NPT state found");
}

}  // namespace bentlab::test
