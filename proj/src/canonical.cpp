#include "bentlab/canonical.hpp"

#include <algorithm>
#include <cmath>

namespace bentlab {

namespace {

// |psi_ij^{+-}> = (|ij> +- |ji>)/sqrt(2) as a projector added into m.
void add_pair_projector(Mat& m, int d, int i, int j, double weight, int sign) {
    const int ij = i * d + j;
    const int ji = j * d + i;
    const double h = weight / 2.0;
    m(ij, ij) += h;
    m(ji, ji) += h;
    m(ij, ji) += sign * h;
    m(ji, ij) += sign * h;
}

}  // namespace

std::string to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::Unphysical: return "Unphysical";
        case RegionLabel::SeparablePPT: return "SeparablePPT";
        case RegionLabel::NPT1_PseudoOneCopyUndistillable:
            return "NPT1_PseudoOneCopyUndistillable";
        case RegionLabel::NPT1_OneCopyDistillable:
            return "NPT1_OneCopyDistillable";
        case RegionLabel::NPT2: return "NPT2";
    }
    return "?";
}

double PTSpectrum::min() const { return std::min({lambda0, lambda1, lambda2}); }

BipartiteState build_rho_bc(const CanonicalParams& p, bool allow_unphysical) {
    if (p.d < 2) throw InvalidInput("build_rho_bc: d must be >= 2");
    if (!allow_unphysical && !p.physical())
        throw InvalidInput("build_rho_bc: unphysical parameters");
    const int d = p.d;
    Mat m = Mat::Zero(d * d, d * d);
    const double a = p.a();
    for (int i = 0; i < d; ++i) m(i * d + i, i * d + i) += a;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            add_pair_projector(m, d, i, j, p.b, -1);
            add_pair_projector(m, d, i, j, p.c, +1);
        }
    return BipartiteState(std::move(m), d, d, /*normalized=*/true);
}

BipartiteState build_rho_c_eps(const EpsParams& p) {
    if (p.d < 2) throw InvalidInput("build_rho_c_eps: d must be >= 2");
    const double cmax = 1.0 / (double(p.d) * double(p.d - 1));
    if (p.c < 0.0 || p.c >= cmax)
        throw InvalidInput("build_rho_c_eps: c out of [0, 1/(d(d-1)))");
    if (p.eps < 0.0) throw InvalidInput("build_rho_c_eps: eps must be >= 0");
    return build_rho_bc(p.to_canonical());
}

PTSpectrum pt_spectrum(const CanonicalParams& p) {
    const double d = double(p.d);
    PTSpectrum s;
    s.d = p.d;
    s.lambda0 = (d - 1.0) * (1.0 / (d * (d - 1.0)) - p.b);
    s.lambda1 = 1.0 / d - (d / 2.0) * p.c - ((d - 2.0) / 2.0) * p.b;
    s.lambda2 = (p.c + p.b) / 2.0;
    return s;
}

PTSpectrum pt_spectrum(const EpsParams& p) { return pt_spectrum(p.to_canonical()); }

BipartiteState build_werner(int d, double lambda) {
    if (d < 2) throw InvalidInput("build_werner: d must be >= 2");
    if (lambda <= 0.0) throw InvalidInput("build_werner: lambda must be > 0");
    // PT of the output is lambda I - (lambda+1)|Phi_0><Phi_0|, so the state
    // itself is lambda I - (lambda+1) H.
    Mat m = lambda * Mat::Identity(d * d, d * d) - (lambda + 1.0) * swap_H(d);
    return BipartiteState(std::move(m), d, d, /*normalized=*/false);
}

CanonicalParams werner_params(int d, double lambda) {
    const BipartiteState w = build_werner(d, lambda);
    const double tr = w.mat().trace().real();
    // Unnormalized coefficients: on psi- the swap eats -1/d, on psi+ +1/d.
    const double bu = lambda + (lambda + 1.0) / double(d);
    const double cu = lambda - (lambda + 1.0) / double(d);
    return CanonicalParams{d, bu / tr, cu / tr};
}

Mat swap_H(int d) {
    if (d < 2) throw InvalidInput("swap_H: d must be >= 2");
    Mat h = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) h(i * d + j, j * d + i) = 1.0 / double(d);
    return h;
}

namespace {

// Roundoff slack so exactly-on-boundary inputs land on the closed side.
constexpr double kBoundaryTol = 1e-14;

double cross(double ox, double oy, double ax, double ay, double bx, double by) {
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

// Closed membership in a convex counterclockwise polygon.
bool in_convex_polygon(double b, double c, const RegionPoint* pts, int n) {
    for (int i = 0; i < n; ++i) {
        const RegionPoint& p = pts[i];
        const RegionPoint& q = pts[(i + 1) % n];
        if (cross(p.b, p.c, q.b, q.c, b, c) < -1e-15) return false;
    }
    return true;
}

}  // namespace

std::array<RegionPoint, 8> region_points(int d) {
    if (d < 3) throw InvalidInput("region_points: d must be >= 3");
    const double dd = double(d);
    const double x = 1.0 / (dd * (dd - 1.0));
    return {{
        {'A', 0.0, 0.0},
        {'B', x, 0.0},
        {'C', 4.0 / (dd * (3.0 * dd - 2.0)), 0.0},
        {'F', 2.0 * x, 0.0},
        {'G', 3.0 / (dd * (2.0 * dd - 1.0)), 1.0 / (dd * (2.0 * dd - 1.0))},
        {'H', x, 1.0 / (dd * (dd + 1.0))},
        {'J', 0.0, 2.0 / (dd * dd)},
        {'K', x, x},
    }};
}

RegionPoint region_point(int d, char label) {
    for (const RegionPoint& p : region_points(d))
        if (p.label == label) return p;
    throw InvalidInput(std::string("region_point: unknown label ") + label);
}

bool in_polygon_bcgk(const CanonicalParams& p) {
    const RegionPoint B = region_point(p.d, 'B'), C = region_point(p.d, 'C'),
                      G = region_point(p.d, 'G'), K = region_point(p.d, 'K');
    const RegionPoint poly[4] = {B, C, G, K};
    return in_convex_polygon(p.b, p.c, poly, 4);
}

bool in_polygon_cfkg(const CanonicalParams& p) {
    const RegionPoint C = region_point(p.d, 'C'), F = region_point(p.d, 'F'),
                      K = region_point(p.d, 'K'), G = region_point(p.d, 'G');
    const RegionPoint poly[4] = {C, F, K, G};
    return in_convex_polygon(p.b, p.c, poly, 4);
}

bool in_polygon_abkj(const CanonicalParams& p) {
    const RegionPoint A = region_point(p.d, 'A'), B = region_point(p.d, 'B'),
                      K = region_point(p.d, 'K'), J = region_point(p.d, 'J');
    const RegionPoint poly[4] = {A, B, K, J};
    return in_convex_polygon(p.b, p.c, poly, 4);
}

RegionLabel classify_region(const CanonicalParams& p) {
    if (p.d < 3)
        throw InvalidInput("classify_region: geometry degenerates below d=3");
    if (p.b < -kBoundaryTol || p.c < -kBoundaryTol || p.a() < -kBoundaryTol)
        return RegionLabel::Unphysical;
    const PTSpectrum s = pt_spectrum(p);
    // Boundaries belong to the separable / undistillable side.
    if (s.lambda0 >= -kBoundaryTol && s.lambda1 >= -kBoundaryTol)
        return RegionLabel::SeparablePPT;
    if (s.lambda1 < -kBoundaryTol) return RegionLabel::NPT2;
    return in_polygon_bcgk(p) ? RegionLabel::NPT1_PseudoOneCopyUndistillable
                              : RegionLabel::NPT1_OneCopyDistillable;
}

}  // namespace bentlab
