#include "bentlab/random.hpp"

#include <Eigen/QR>

namespace bentlab {

Vec gaussian_vec(int n, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        v(i) = cplx(re, im);
    }
    return v;
}

Mat gaussian_mat(int rows, int cols, Rng& rng) {
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j) m.col(j) = gaussian_vec(rows, rng);
    return m;
}

Mat haar_unitary(int d, Rng& rng) {
    const Mat g = gaussian_mat(d, d, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const cplx rj = r(j, j);
        const double a = std::abs(rj);
        q.col(j) *= (a > 0.0) ? rj / a : cplx(1.0, 0.0);
    }
    return q;
}

Mat haar_isometry(int d, int k, Rng& rng) {
    return haar_unitary(d, rng).leftCols(k);
}

Mat random_density(int dim, Rng& rng) {
    const Mat g = gaussian_mat(dim, dim, rng);
    Mat rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Symmetrize away the last bits of rounding noise.
    return (rho + Mat(rho.adjoint())) / 2.0;
}

Vec random_unit_vec(int n, Rng& rng) {
    Vec v = gaussian_vec(n, rng);
    return v / v.norm();
}

}  // namespace bentlab
