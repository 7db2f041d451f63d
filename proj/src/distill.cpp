#include "bentlab/distill.hpp"

#include <cmath>
#include <cstdlib>

namespace bentlab {

namespace {

constexpr double kNegativeCut = 1e-12;

// Sign rule for threshold bisection: a reported minimum below this counts as
// a certified violation.
constexpr double kSignCut = 1e-10;

Vec ones_vec(int d) { return Vec::Constant(d, cplx(1.0, 0.0)); }

Vec fourier_vec(int d, int sign) {
    Vec f(d);
    for (int j = 0; j < d; ++j) {
        const double ang = sign * 2.0 * M_PI * double(j) / double(d);
        f(j) = cplx(std::cos(ang), std::sin(ang));
    }
    return f;
}

Mat orthonormal_pair(Vec a, Vec b) {
    a.normalize();
    b -= a * a.dot(b);
    b.normalize();
    Mat plane(a.size(), 2);
    plane.col(0) = a;
    plane.col(1) = b;
    return plane;
}

// n-fold tensor power of each column pairing: span{x^{(x)n}, y^{(x)n}}.
Mat plane_power(const Mat& plane, int n) {
    Vec x = plane.col(0), y = plane.col(1);
    Vec xn = x, yn = y;
    for (int k = 1; k < n; ++k) {
        xn = tensor_vec(xn, x);
        yn = tensor_vec(yn, y);
    }
    return orthonormal_pair(xn, yn);
}

}  // namespace

SizeCaps SizeCaps::resolve(bool stress) {
    SizeCaps caps;
    caps.max_dim = stress ? 729 : 81;
    if (const char* env = std::getenv("BENTLAB_MAX_DIM")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) caps.max_dim = int(v);
    }
    return caps;
}

Mat n_copy_pt(const EpsParams& p, int n, const SizeCaps& caps) {
    if (n < 1) throw InvalidInput("n_copy_pt: n must be >= 1");
    double dim = 1.0;
    for (int k = 0; k < n; ++k) dim *= double(p.d) * double(p.d);
    if (dim > double(caps.max_dim))
        throw SizeLimit("n_copy_pt: total dimension exceeds cap");
    const Mat pt = partial_transpose(build_rho_c_eps(p)).mat();
    if (n == 1) return pt;
    NumericPolicy pol;
    pol.max_total_entries = std::size_t(caps.max_dim) * std::size_t(caps.max_dim);
    return bipartite_tensor_power(pt, p.d, p.d, n, pol);
}

std::vector<Mat> witness_planes(int d) {
    Vec e0 = Vec::Zero(d), e1 = Vec::Zero(d);
    e0(0) = 1.0;
    e1(1) = 1.0;
    return {orthonormal_pair(e0, e1),
            orthonormal_pair(ones_vec(d), fourier_vec(d, +1))};
}

OptimizerReport f_value(const EpsParams& p, int n, const SeesawOptions& opts,
                        const SizeCaps& caps) {
    const Mat m = n_copy_pt(p, n, caps);
    int D = 1;
    for (int k = 0; k < n; ++k) D *= p.d;
    SeesawOptions local = opts;
    for (const Mat& plane : witness_planes(p.d))
        local.warm_starts.push_back(plane_power(plane, n));
    return min_rank2(m, D, D, local);
}

ThresholdResult eps_threshold(int d, double c, int n, const SeesawOptions& opts,
                              double width, double bracket_hi,
                              const SizeCaps& caps) {
    const double cmax = 1.0 / (double(d) * double(d - 1));
    if (c < 0.0 || c >= cmax)
        throw InvalidInput("eps_threshold: c out of [0, 1/(d(d-1)))");
    if (bracket_hi <= 0.0) bracket_hi = (cmax - c) * (1.0 - 1e-12);

    ThresholdResult result;
    auto negative = [&](double eps) {
        ++result.evaluations;
        return f_value(EpsParams{d, c, eps}, n, opts, caps).min_value < -kSignCut;
    };

    if (negative(0.0))
        throw BracketError("eps_threshold: minimum already negative at eps=0");
    if (!negative(bracket_hi))
        throw BracketError("eps_threshold: no sign change in bracket");

    double lo = 0.0, hi = bracket_hi;
    while (hi - lo > width) {
        const double mid = (lo + hi) / 2.0;
        (negative(mid) ? hi : lo) = mid;
    }
    result.lo = lo;
    result.hi = hi;
    result.eps0 = (lo + hi) / 2.0;
    return result;
}

Verdict witness_scan(const CanonicalParams& p) {
    const Mat pt = partial_transpose(build_rho_bc(p, true)).mat();
    const int d = p.d;

    std::vector<RankTwoState> witnesses;
    {
        RankTwoState w1;
        w1.mu = Eigen::Vector2d(0.5, 0.5);
        w1.a_vecs = Mat::Zero(d, 2);
        w1.a_vecs(0, 0) = 1.0;
        w1.a_vecs(1, 1) = 1.0;
        w1.b_vecs = w1.a_vecs;
        witnesses.push_back(w1);

        RankTwoState w2;
        w2.mu = Eigen::Vector2d(0.5, 0.5);
        w2.a_vecs = Mat(d, 2);
        w2.a_vecs.col(0) = ones_vec(d) / std::sqrt(double(d));
        w2.a_vecs.col(1) = fourier_vec(d, +1) / std::sqrt(double(d));
        w2.b_vecs = Mat(d, 2);
        w2.b_vecs.col(0) = ones_vec(d) / std::sqrt(double(d));
        w2.b_vecs.col(1) = fourier_vec(d, -1) / std::sqrt(double(d));
        witnesses.push_back(w2);
    }

    Verdict verdict;
    bool first = true;
    for (const RankTwoState& w : witnesses) {
        const double value = rank2_expectation(pt, d, d, w);
        if (first || value < verdict.margin) {
            verdict.margin = value;
            if (value < -kNegativeCut) verdict.witness = w;
            first = false;
        }
    }
    verdict.kind = verdict.margin < -kNegativeCut
                       ? Verdict::Kind::DistillableWitnessFound
                       : Verdict::Kind::NoViolationFound;
    if (!verdict.found()) verdict.witness.reset();
    return verdict;
}

OverlapReport maxent_overlap_max(int d, const PureState& psi,
                                 const SeesawOptions& opts) {
    if (psi.dA != d || psi.dB != d)
        throw InvalidInput("maxent_overlap_max: psi must live on d (x) d");
    Vec v = psi.vec / psi.vec.norm();
    const PureState unit(v, d, d);
    const Mat marginal = partial_trace(
        BipartiteState(Mat(v * v.adjoint()), d, d, true), Subsys::A);
    if (max_abs(marginal - Mat::Identity(d, d) / double(d)) > 1e-10)
        throw InvalidInput("maxent_overlap_max: psi is not maximally entangled");

    SeesawOptions local = opts;
    const SchmidtDecomposition sd = schmidt(unit);
    local.warm_starts.push_back(
        orthonormal_pair(sd.left.col(0), sd.left.col(1)));

    OverlapReport out;
    out.report = min_rank2(Mat(-v * v.adjoint()), d, d, local);
    out.max_overlap = std::sqrt(std::max(0.0, -out.report.min_value));
    return out;
}

NullSpaceReport null_space_margin(const EpsParams& p, int n,
                                  const SeesawOptions& opts,
                                  const SizeCaps& caps) {
    if (p.eps != 0.0)
        throw InvalidInput("null_space_margin: defined at eps = 0 only");
    NullSpaceReport out;
    const Mat m = n_copy_pt(p, n, caps);
    const HermEig eig = herm_eig(m);
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (std::abs(eig.values(i)) < 1e-12) ++out.null_dim;
    out.report = f_value(p, n, opts, caps);
    out.min_value = out.report.min_value;
    return out;
}

}  // namespace bentlab
