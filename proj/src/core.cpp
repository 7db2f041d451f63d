#include "bentlab/core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace bentlab {

// ----------------------------------------------------------------- types ---

BipartiteState::BipartiteState(Mat mat, int dA, int dB, bool normalized,
                               const NumericPolicy& pol)
    : mat_(std::move(mat)), dA_(dA), dB_(dB), normalized_(normalized) {
    if (dA_ < 1 || dB_ < 1)
        throw InvalidInput("BipartiteState: dimensions must be positive");
    if (mat_.rows() != mat_.cols() || mat_.rows() != dA_ * dB_)
        throw InvalidInput("BipartiteState: matrix is not dA*dB square");
    if (!mat_.allFinite())
        throw InvalidInput("BipartiteState: non-finite entries");
    if (!is_hermitian(mat_, pol.construct_tol))
        throw InvalidInput("BipartiteState: not Hermitian within tolerance");
    if (normalized_) {
        double tr = mat_.trace().real();
        if (std::abs(tr - 1.0) > pol.construct_tol ||
            std::abs(mat_.trace().imag()) > pol.construct_tol)
            throw InvalidInput("BipartiteState: trace != 1 for normalized state");
    }
}

PureState::PureState(Vec v, int a, int b) : vec(std::move(v)), dA(a), dB(b) {
    if (dA < 1 || dB < 1 || vec.size() != dA * dB)
        throw InvalidInput("PureState: vector length != dA*dB");
    if (!vec.allFinite()) throw InvalidInput("PureState: non-finite entries");
    if (vec.norm() == 0.0) throw InvalidInput("PureState: zero vector");
}

// ------------------------------------------------------------ operations ---

Mat tensor(const Mat& a, const Mat& b, const NumericPolicy& pol) {
    const std::size_t entries = std::size_t(a.rows()) * std::size_t(b.rows()) *
                                std::size_t(a.cols()) * std::size_t(b.cols());
    if (entries > pol.max_total_entries)
        throw SizeLimit("tensor: result exceeds configured size cap");
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

Vec tensor_vec(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

Mat partial_transpose_mat(const Mat& m, int dA, int dB) {
    if (m.rows() != dA * dB || m.cols() != dA * dB)
        throw InvalidInput("partial_transpose: dimension mismatch");
    Mat out(m.rows(), m.cols());
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dA; ++k)
                for (int l = 0; l < dB; ++l)
                    out(i * dB + j, k * dB + l) = m(i * dB + l, k * dB + j);
    return out;
}

BipartiteState partial_transpose(const BipartiteState& rho) {
    return BipartiteState(partial_transpose_mat(rho.mat(), rho.dA(), rho.dB()),
                          rho.dA(), rho.dB(), rho.normalized());
}

Mat partial_trace(const BipartiteState& rho, Subsys keep) {
    const int dA = rho.dA(), dB = rho.dB();
    const Mat& m = rho.mat();
    if (keep == Subsys::A) {
        Mat out = Mat::Zero(dA, dA);
        for (int i = 0; i < dA; ++i)
            for (int k = 0; k < dA; ++k)
                for (int j = 0; j < dB; ++j) out(i, k) += m(i * dB + j, k * dB + j);
        return out;
    }
    Mat out = Mat::Zero(dB, dB);
    for (int j = 0; j < dB; ++j)
        for (int l = 0; l < dB; ++l)
            for (int i = 0; i < dA; ++i) out(j, l) += m(i * dB + j, i * dB + l);
    return out;
}

namespace {

// Rotate each column so its largest-magnitude component is real positive.
void fix_phases(Mat& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index imax = 0;
        vectors.col(c).cwiseAbs().maxCoeff(&imax);
        const cplx z = vectors(imax, c);
        const double a = std::abs(z);
        if (a > 0.0) vectors.col(c) *= std::conj(z) / a;
    }
}

}  // namespace

HermEig herm_eig(const Mat& m, const NumericPolicy& pol) {
    if (m.rows() != m.cols()) throw InvalidInput("herm_eig: not square");
    if (!is_hermitian(m, pol.algebra_tol))
        throw InvalidInput("herm_eig: input not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Mat> es((m + Mat(m.adjoint())) / 2.0);
    if (es.info() != Eigen::Success) throw Error("herm_eig: solver failed");
    HermEig out{es.eigenvalues(), es.eigenvectors()};
    fix_phases(out.vectors);
    return out;
}

SchmidtDecomposition schmidt(const PureState& psi) {
    // Coefficient matrix C(i,j) = <ij|psi>; C = U S V^dag gives
    // psi = sum_k s_k u_k (x) conj(v_k).
    Mat coeff(psi.dA, psi.dB);
    for (int i = 0; i < psi.dA; ++i)
        for (int j = 0; j < psi.dB; ++j) coeff(i, j) = psi.amp(i, j);
    Eigen::JacobiSVD<Mat> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtDecomposition out;
    out.coefficients = svd.singularValues();
    out.left = svd.matrixU();
    out.right = svd.matrixV().conjugate();
    // Deterministic phases: rotate left vectors, compensate on the right so
    // the reconstruction is untouched.
    for (Eigen::Index c = 0; c < out.left.cols(); ++c) {
        Eigen::Index imax = 0;
        out.left.col(c).cwiseAbs().maxCoeff(&imax);
        const cplx z = out.left(imax, c);
        const double a = std::abs(z);
        if (a > 0.0) {
            out.left.col(c) *= std::conj(z) / a;
            out.right.col(c) *= z / a;
        }
    }
    return out;
}

int schmidt_rank(const PureState& psi, double tol) {
    if (tol <= 0.0) throw InvalidInput("schmidt_rank: tol must be positive");
    const SchmidtDecomposition sd = schmidt(psi);
    if (sd.coefficients.size() == 0) return 0;
    const double top = sd.coefficients(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sd.coefficients.size(); ++i)
        if (sd.coefficients(i) > tol * top) ++rank;
    return rank;
}

PureState max_entangled(int d, int k) {
    if (d < 2) throw InvalidInput("max_entangled: d must be >= 2");
    if (k < 0 || k >= d) throw InvalidInput("max_entangled: phase index out of range");
    Vec v = Vec::Zero(d * d);
    const double s = 1.0 / std::sqrt(double(d));
    for (int j = 0; j < d; ++j) {
        const double ang = 2.0 * M_PI * double(j) * double(k) / double(d);
        v(j * d + j) = s * cplx(std::cos(ang), std::sin(ang));
    }
    return PureState(std::move(v), d, d);
}

namespace {

// Unranked multi-index helpers for the regrouping permutation. A row index
// of m^{(x)n} in natural order is (a_1 b_1 a_2 b_2 ... ); the regrouped order
// is (a_1 ... a_n b_1 ... b_n).
std::vector<int> digits(long idx, int base, int n) {
    std::vector<int> d(n);
    for (int k = n - 1; k >= 0; --k) {
        d[k] = int(idx % base);
        idx /= base;
    }
    return d;
}

}  // namespace

Mat bipartite_tensor_power(const Mat& m, int dA, int dB, int n,
                           const NumericPolicy& pol) {
    if (n < 1) throw InvalidInput("bipartite_tensor_power: n must be >= 1");
    if (m.rows() != dA * dB || m.cols() != dA * dB)
        throw InvalidInput("bipartite_tensor_power: dimension mismatch");
    double entries = 1.0;
    for (int k = 0; k < 2 * n; ++k) entries *= double(dA) * double(dB);
    if (entries > double(pol.max_total_entries))
        throw SizeLimit("bipartite_tensor_power: result exceeds size cap");

    long DA = 1, DB = 1;
    for (int k = 0; k < n; ++k) {
        DA *= dA;
        DB *= dB;
    }
    Mat out(DA * DB, DA * DB);
    for (long ra = 0; ra < DA; ++ra) {
        const std::vector<int> ia = digits(ra, dA, n);
        for (long rb = 0; rb < DB; ++rb) {
            const std::vector<int> ib = digits(rb, dB, n);
            for (long ca = 0; ca < DA; ++ca) {
                const std::vector<int> ja = digits(ca, dA, n);
                for (long cb = 0; cb < DB; ++cb) {
                    const std::vector<int> jb = digits(cb, dB, n);
                    cplx v(1.0, 0.0);
                    for (int k = 0; k < n; ++k)
                        v *= m(ia[k] * dB + ib[k], ja[k] * dB + jb[k]);
                    out(ra * DB + rb, ca * DB + cb) = v;
                }
            }
        }
    }
    return out;
}

Mat bipartite_tensor_pair(const Mat& m1, int dA1, int dB1, const Mat& m2,
                          int dA2, int dB2, const NumericPolicy& pol) {
    const std::size_t dim = std::size_t(dA1) * dB1 * dA2 * dB2;
    if (dim * dim > pol.max_total_entries)
        throw SizeLimit("bipartite_tensor_pair: result exceeds size cap");
    const int DA = dA1 * dA2, DB = dB1 * dB2;
    Mat out(DA * DB, DA * DB);
    for (int a1 = 0; a1 < dA1; ++a1)
        for (int a2 = 0; a2 < dA2; ++a2)
            for (int b1 = 0; b1 < dB1; ++b1)
                for (int b2 = 0; b2 < dB2; ++b2)
                    for (int c1 = 0; c1 < dA1; ++c1)
                        for (int c2 = 0; c2 < dA2; ++c2)
                            for (int e1 = 0; e1 < dB1; ++e1)
                                for (int e2 = 0; e2 < dB2; ++e2) {
                                    const int row =
                                        (a1 * dA2 + a2) * DB + (b1 * dB2 + b2);
                                    const int col =
                                        (c1 * dA2 + c2) * DB + (e1 * dB2 + e2);
                                    out(row, col) = m1(a1 * dB1 + b1, c1 * dB1 + e1) *
                                                    m2(a2 * dB2 + b2, c2 * dB2 + e2);
                                }
    return out;
}

}  // namespace bentlab
