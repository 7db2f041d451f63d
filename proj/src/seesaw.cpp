#include "bentlab/seesaw.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "bentlab/random.hpp"

namespace bentlab {

Vec RankTwoState::assemble() const {
    Vec out = Vec::Zero(a_vecs.rows() * b_vecs.rows());
    for (int s = 0; s < 2; ++s)
        out += std::sqrt(std::max(0.0, mu(s))) *
               tensor_vec(a_vecs.col(s), b_vecs.col(s));
    return out;
}

double rank2_expectation(const Mat& m, int dA, int dB, const RankTwoState& v) {
    if (v.a_vecs.rows() != dA || v.b_vecs.rows() != dB ||
        m.rows() != dA * dB || m.cols() != dA * dB)
        throw InvalidInput("rank2_expectation: dimension mismatch");
    const Vec psi = v.assemble();
    return (psi.adjoint() * m * psi)(0).real();
}

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (std::uint64_t(restart) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

struct HalfStep {
    double value;
    Vec xi;   // minimizer in the compressed space
};

// Exact minimization over states with the A side confined to the 2-plane V:
// smallest eigenpair of (V (x) I)^dag M (V (x) I).
HalfStep solve_a_fixed(const Mat& m, const Mat& v, int dB) {
    const Mat lift = tensor(v, Mat::Identity(dB, dB));
    const Mat compressed = lift.adjoint() * m * lift;
    Eigen::SelfAdjointEigenSolver<Mat> es(
        (compressed + Mat(compressed.adjoint())) / 2.0);
    return HalfStep{es.eigenvalues()(0), es.eigenvectors().col(0)};
}

HalfStep solve_b_fixed(const Mat& m, const Mat& w, int dA) {
    const Mat lift = tensor(Mat::Identity(dA, dA), w);
    const Mat compressed = lift.adjoint() * m * lift;
    Eigen::SelfAdjointEigenSolver<Mat> es(
        (compressed + Mat(compressed.adjoint())) / 2.0);
    return HalfStep{es.eigenvalues()(0), es.eigenvectors().col(0)};
}

// Orthonormal 2-frame spanning the other side's support of the compressed
// minimizer. `rows` x `cols` is the coefficient-matrix shape of xi.
Mat refit_plane(const Vec& xi, int rows, int cols, bool want_right) {
    Mat coeff(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) coeff(i, j) = xi(i * cols + j);
    Eigen::JacobiSVD<Mat> svd(coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (want_right) return svd.matrixV().conjugate().leftCols(2);
    return svd.matrixU().leftCols(2);
}

RankTwoState state_from_psi(const PureState& psi) {
    SchmidtDecomposition sd = schmidt(psi);
    RankTwoState v;
    const int k = int(sd.coefficients.size());
    double s0 = sd.coefficients(0) * sd.coefficients(0);
    double s1 = (k > 1) ? sd.coefficients(1) * sd.coefficients(1) : 0.0;
    const double tot = s0 + s1;
    v.mu = Eigen::Vector2d(s0 / tot, s1 / tot);
    v.a_vecs = sd.left.leftCols(std::min(k, 2));
    v.b_vecs = sd.right.leftCols(std::min(k, 2));
    if (k < 2) {
        // Widen a rank-one minimizer with any orthogonal completion.
        auto widen = [](const Mat& cols, int dim) {
            Mat out(dim, 2);
            out.col(0) = cols.col(0);
            Vec best;
            double best_norm = -1.0;
            for (int e = 0; e < dim; ++e) {
                Vec r = Vec::Zero(dim);
                r(e) = 1.0;
                r -= out.col(0) * out.col(0).dot(r);
                if (r.norm() > best_norm) {
                    best_norm = r.norm();
                    best = r;
                }
            }
            out.col(1) = best / best_norm;
            return out;
        };
        v.a_vecs = widen(v.a_vecs, int(psi.dA));
        v.b_vecs = widen(v.b_vecs, int(psi.dB));
    }
    return v;
}

}  // namespace

OptimizerReport min_rank2(const Mat& m, int dA, int dB, const SeesawOptions& opts) {
    if (m.rows() != m.cols() || m.rows() != dA * dB)
        throw InvalidInput("min_rank2: dimension mismatch");
    if (dA < 2 || dB < 2) throw InvalidInput("min_rank2: both sides need dim >= 2");
    if (!is_hermitian(m, 1e-10))
        throw InvalidInput("min_rank2: matrix not Hermitian");

    OptimizerReport report;
    report.seed = opts.seed;
    bool have_best = false;
    double best_value = 0.0;
    Vec best_psi;
    bool best_converged = false;

    const int total = int(opts.warm_starts.size()) + opts.restarts;
    for (int r = 0; r < total; ++r) {
        Mat plane;
        if (r < int(opts.warm_starts.size())) {
            plane = opts.warm_starts[std::size_t(r)];
            if (plane.rows() != dA || plane.cols() != 2)
                throw InvalidInput("min_rank2: warm start plane must be D_A x 2");
            if (max_abs(Mat(plane.adjoint() * plane) - Mat::Identity(2, 2)) > 1e-10)
                throw InvalidInput("min_rank2: warm start plane not orthonormal");
        } else {
            Rng rng(restart_seed(opts.seed, r));
            plane = haar_isometry(dA, 2, rng);
        }

        double current = std::numeric_limits<double>::infinity();
        Vec psi;
        int stall = 0;
        int iters = 0;
        bool converged = false;
        for (; iters < opts.max_iters; ++iters) {
            const HalfStep a = solve_a_fixed(m, plane, dB);
            if (a.value > current + 1e-12)
                throw Error("min_rank2: value increased in A half-step");
            const Mat bob_plane = refit_plane(a.xi, 2, dB, /*want_right=*/true);

            const HalfStep b = solve_b_fixed(m, bob_plane, dA);
            if (b.value > a.value + 1e-12)
                throw Error("min_rank2: value increased in B half-step");
            plane = refit_plane(b.xi, dA, 2, /*want_right=*/false);

            const Vec lifted = tensor(Mat::Identity(dA, dA), bob_plane) * b.xi;
            const double improved = current - b.value;
            current = b.value;
            psi = lifted;
            if (improved < opts.tol) {
                if (++stall >= opts.stall_iters) {
                    converged = true;
                    ++iters;
                    break;
                }
            } else {
                stall = 0;
            }
        }
        report.iterations_per_restart.push_back(iters);
        if (!have_best || current < best_value) {
            have_best = true;
            best_value = current;
            best_psi = psi;
            best_converged = converged;
        }
    }

    report.restarts = total;
    report.argmin = state_from_psi(PureState(best_psi / best_psi.norm(), dA, dB));
    report.min_value = rank2_expectation(m, dA, dB, report.argmin);
    report.converged = best_converged;
    return report;
}

}  // namespace bentlab
