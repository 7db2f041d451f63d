#include "bentlab/posmaps.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "bentlab/random.hpp"

namespace bentlab {

namespace {

constexpr double kViolationCut = 1e-12;

}  // namespace

ChoiMap::ChoiMap(Mat choi, int dIn, int dOut, const NumericPolicy& pol)
    : choi_(std::move(choi)), dIn_(dIn), dOut_(dOut) {
    if (dIn_ < 1 || dOut_ < 1)
        throw InvalidInput("ChoiMap: dimensions must be positive");
    if (choi_.rows() != choi_.cols() || choi_.rows() != dIn_ * dOut_)
        throw InvalidInput("ChoiMap: matrix is not dIn*dOut square");
    if (!is_hermitian(choi_, pol.construct_tol))
        throw InvalidInput("ChoiMap: Choi matrix not Hermitian");
}

Mat ChoiMap::block(int i, int j) const {
    return choi_.block(i * dOut_, j * dOut_, dOut_, dOut_);
}

ChoiMap state_to_map(const BipartiteState& rho) {
    if (rho.dA() != rho.dB())
        throw InvalidInput("state_to_map: state must live on d (x) d");
    return ChoiMap(double(rho.dA()) * rho.mat(), rho.dA(), rho.dB());
}

BipartiteState map_to_state(const ChoiMap& map) {
    Mat rho = map.choi() / double(map.dIn());
    const double tr = rho.trace().real();
    const bool normalized = std::abs(tr - 1.0) <= 1e-12;
    return BipartiteState(std::move(rho), map.dIn(), map.dOut(), normalized);
}

Mat map_apply(const ChoiMap& map, const Mat& x) {
    if (x.rows() != map.dIn() || x.cols() != map.dIn())
        throw InvalidInput("map_apply: input dimension mismatch");
    Mat out = Mat::Zero(map.dOut(), map.dOut());
    for (int i = 0; i < map.dIn(); ++i)
        for (int j = 0; j < map.dIn(); ++j) out += x(i, j) * map.block(i, j);
    return out;
}

Mat map_adjoint_apply(const ChoiMap& map, const Mat& z) {
    if (z.rows() != map.dOut() || z.cols() != map.dOut())
        throw InvalidInput("map_adjoint_apply: input dimension mismatch");
    Mat out(map.dIn(), map.dIn());
    for (int i = 0; i < map.dIn(); ++i)
        for (int j = 0; j < map.dIn(); ++j)
            out(i, j) = (Mat(map.block(i, j).adjoint()) * z).trace();
    return out;
}

ChoiMap compose_transpose(const ChoiMap& s) {
    return ChoiMap(partial_transpose_mat(s.choi(), s.dIn(), s.dOut()), s.dIn(),
                   s.dOut());
}

ChoiMap tau_w(int d, double lambda) {
    if (d < 2) throw InvalidInput("tau_w: d must be >= 2");
    if (lambda <= 0.0) throw InvalidInput("tau_w: lambda must be > 0");
    const int D = d * d;
    const Vec phi = max_entangled(d, 0).vec;
    Mat choi = double(d) * lambda * Mat::Identity(D, D) -
               (lambda + 1.0) * double(d) * Mat(phi * phi.adjoint());
    return ChoiMap(std::move(choi), d, d);
}

Mat apply_one_side(const ChoiMap& map, const Mat& input, int k) {
    const int n = map.dIn(), m = map.dOut();
    if (input.rows() != k * n || input.cols() != k * n)
        throw InvalidInput("apply_one_side: input dimension mismatch");
    Mat out = Mat::Zero(k * m, k * m);
    for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s)
            out.block(r * m, s * m, m, m) =
                map_apply(map, input.block(r * n, s * n, n, n));
    return out;
}

namespace {

struct KposIterate {
    double value;
    Vec xi;   // input vector on C^k (x) C^n
    Vec z;    // output test vector on C^k (x) C^m
};

Mat outer(const Vec& v) { return v * v.adjoint(); }

// (1_k (x) L^dag)(z z^dag) -- the effective Hermitian matrix for the
// input-side eigensolve.
Mat input_side_matrix(const ChoiMap& map, const Vec& z, int k) {
    const int n = map.dIn(), m = map.dOut();
    Mat out(k * n, k * n);
    for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) {
            const Mat zblock =
                z.segment(r * m, m) * z.segment(s * m, m).adjoint();
            out.block(r * n, s * n, n, n) = map_adjoint_apply(map, zblock);
        }
    return (out + Mat(out.adjoint())) / 2.0;
}

double maxent_margin(const ChoiMap& map, const Mat& bob_plane, Vec* witness) {
    const int n = map.dIn();
    Vec psi = Vec::Zero(2 * n);
    psi.segment(0, n) = bob_plane.col(0) / std::sqrt(2.0);
    psi.segment(n, n) = bob_plane.col(1) / std::sqrt(2.0);
    const Mat image = apply_one_side(map, outer(psi), 2);
    Eigen::SelfAdjointEigenSolver<Mat> es((image + Mat(image.adjoint())) / 2.0);
    if (witness) *witness = psi;
    return es.eigenvalues()(0);
}

// Orthonormal basis of the input-side support of xi on C^k (x) C^n,
// widened to two columns when the support is one-dimensional.
Mat input_plane(const Vec& xi, int k, int n) {
    Mat coeff(k, n);
    for (int r = 0; r < k; ++r)
        for (int j = 0; j < n; ++j) coeff(r, j) = xi(r * n + j);
    Eigen::JacobiSVD<Mat> svd(coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // Second-factor Schmidt vectors of xi are the conjugated right singular
    // vectors of its coefficient matrix.
    Mat plane = svd.matrixV().conjugate().leftCols(2);
    if (svd.singularValues().size() < 2 ||
        svd.singularValues()(1) < 1e-14 * svd.singularValues()(0)) {
        Vec best;
        double best_norm = -1.0;
        for (int e = 0; e < n; ++e) {
            Vec r = Vec::Zero(n);
            r(e) = 1.0;
            r -= plane.col(0) * plane.col(0).dot(r);
            if (r.norm() > best_norm) {
                best_norm = r.norm();
                best = r;
            }
        }
        plane.col(1) = best / best_norm;
    }
    return plane;
}

PositivityVerdict kpos_search(const ChoiMap& map, int k, const SeesawOptions& opts,
                              bool maxent_restricted) {
    const int n = map.dIn();
    PositivityVerdict verdict;
    verdict.k = k;
    bool have_best = false;
    double best = 0.0;
    Vec best_witness;

    for (int r = 0; r < opts.restarts; ++r) {
        Rng rng(restart_seed(opts.seed, r));
        Vec xi = random_unit_vec(k * n, rng);
        double current = std::numeric_limits<double>::infinity();
        int stall = 0;
        Vec z;
        for (int it = 0; it < opts.max_iters; ++it) {
            const Mat image = apply_one_side(map, outer(xi), k);
            Eigen::SelfAdjointEigenSolver<Mat> es(
                (image + Mat(image.adjoint())) / 2.0);
            const double value = es.eigenvalues()(0);
            if (value > current + 1e-12)
                throw Error("is_k_positive: value increased in output step");
            z = es.eigenvectors().col(0);

            const Mat q = input_side_matrix(map, z, k);
            Eigen::SelfAdjointEigenSolver<Mat> es2(q);
            xi = es2.eigenvectors().col(0);

            const double improved = current - value;
            current = value;
            if (improved < opts.tol) {
                if (++stall >= opts.stall_iters) break;
            } else {
                stall = 0;
            }
        }

        double candidate;
        Vec witness;
        if (maxent_restricted) {
            candidate = maxent_margin(map, input_plane(xi, k, n), &witness);
        } else {
            const Mat image = apply_one_side(map, outer(xi), k);
            Eigen::SelfAdjointEigenSolver<Mat> es(
                (image + Mat(image.adjoint())) / 2.0);
            candidate = es.eigenvalues()(0);
            witness = xi;
        }
        if (!have_best || candidate < best) {
            have_best = true;
            best = candidate;
            best_witness = witness;
        }
    }

    verdict.margin = best;
    if (best < -kViolationCut) {
        verdict.result = PositivityVerdict::Kind::ViolationFound;
        verdict.witness = best_witness;
    }
    return verdict;
}

}  // namespace

PositivityVerdict is_k_positive(const ChoiMap& map, int k, const SeesawOptions& opts) {
    if (k < 1 || k > map.dIn())
        throw InvalidInput("is_k_positive: k out of [1, dIn]");
    return kpos_search(map, k, opts, /*maxent_restricted=*/false);
}

PositivityVerdict is_2_positive_maxent(const ChoiMap& map, const SeesawOptions& opts) {
    if (map.dIn() < 2)
        throw InvalidInput("is_2_positive_maxent: dIn must be >= 2");
    return kpos_search(map, 2, opts, /*maxent_restricted=*/true);
}

ChoiMap tensor_maps(const ChoiMap& l1, const ChoiMap& l2, std::size_t max_entries) {
    NumericPolicy pol;
    pol.max_total_entries = max_entries;
    Mat choi = bipartite_tensor_pair(l1.choi(), l1.dIn(), l1.dOut(), l2.choi(),
                                     l2.dIn(), l2.dOut(), pol);
    return ChoiMap(std::move(choi), l1.dIn() * l2.dIn(), l1.dOut() * l2.dOut());
}

Mat reduction_map_image(const BipartiteState& rho) {
    const Mat marginal = partial_trace(rho, Subsys::A);
    return tensor(marginal, Mat::Identity(rho.dB(), rho.dB())) - rho.mat();
}

CanonicalParams lambda_c_image(const CanonicalParams& p) {
    if (p.d <= 2)
        throw InvalidInput("lambda_c_image: map degenerates at d = 2");
    // (Tr_B rho_bc) (x) 1 - rho_bc = (1/d - a) sum|ii><ii| +
    // (1/d - b) sum psi- + (1/d - c) sum psi+, trace d-1.
    const double inv_d = 1.0 / double(p.d);
    const double scale = 1.0 / double(p.d - 1);
    return CanonicalParams{p.d, (inv_d - p.b) * scale, (inv_d - p.c) * scale};
}

}  // namespace bentlab
