// The two-parameter canonical state family rho_bc on d (x) d, the
// epsilon-parametrized states hugging the PPT boundary, Werner-line states,
// the swap-proportional operator H, analytic PT spectra and the (b,c)
// region geometry.

#pragma once

#include <array>
#include <string>

#include "bentlab/core.hpp"

namespace bentlab {

// ----------------------------------------------------------------- types ---

struct CanonicalParams {
    int d = 3;
    double b = 0.0;
    double c = 0.0;

    // Unit trace fixes a: d*a + (b+c) d(d-1)/2 = 1.
    double a() const {
        return (1.0 - (b + c) * double(d) * double(d - 1) / 2.0) / double(d);
    }
    bool physical(double tol = 1e-12) const {
        return b >= -tol && c >= -tol && a() >= -tol;
    }
};

// States rho(c, eps) just right of segment BK: b = 1/(d(d-1)) + eps.
struct EpsParams {
    int d = 3;
    double c = 0.0;
    double eps = 0.0;

    CanonicalParams to_canonical() const {
        return CanonicalParams{d, 1.0 / (double(d) * double(d - 1)) + eps, c};
    }
};

enum class RegionLabel {
    Unphysical,
    SeparablePPT,
    NPT1_PseudoOneCopyUndistillable,
    NPT1_OneCopyDistillable,
    NPT2,
};

std::string to_string(RegionLabel label);

// Spectrum of the partial transpose: lambda0 on |Phi_0>, lambda1 on the
// remaining e-dit eigenstates (multiplicity d-1), lambda2 on the product
// eigenstates |ij>, i != j (multiplicity d^2-d).
struct PTSpectrum {
    int d = 3;
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    double trace() const {
        return lambda0 + double(d - 1) * lambda1 +
               double(d) * double(d - 1) * lambda2;
    }
    double min() const;
};

struct RegionPoint {
    char label;
    double b;
    double c;
};

// ------------------------------------------------------------ operations ---

// rho_bc = a sum |ii><ii| + b sum_{i<j} psi-_{ij} + c sum_{i<j} psi+_{ij}.
// Throws InvalidInput for unphysical parameters unless allow_unphysical.
BipartiteState build_rho_bc(const CanonicalParams& p,
                            bool allow_unphysical = false);

BipartiteState build_rho_c_eps(const EpsParams& p);

PTSpectrum pt_spectrum(const CanonicalParams& p);
PTSpectrum pt_spectrum(const EpsParams& p);

// Unnormalized operator whose partial transpose is exactly
// lambda I - (lambda+1)|Phi_0><Phi_0|.
BipartiteState build_werner(int d, double lambda);

// Canonical parameters of the trace-normalized Werner state at this lambda;
// lies on the line FH.
CanonicalParams werner_params(int d, double lambda);

// H = PT(|Phi+><Phi+|); d*H is the swap operator.
Mat swap_H(int d);

RegionLabel classify_region(const CanonicalParams& p);

// Named corners of the (b,c) geometry: A,B,C,F,G,H,J,K.
std::array<RegionPoint, 8> region_points(int d);
RegionPoint region_point(int d, char label);

// Closed convex polygon membership used by the classifier, exposed for the
// samplers in tests and the CLI.
bool in_polygon_bcgk(const CanonicalParams& p);
bool in_polygon_cfkg(const CanonicalParams& p);
bool in_polygon_abkj(const CanonicalParams& p);

}  // namespace bentlab
