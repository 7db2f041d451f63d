// Shared scalar/matrix typedefs, error taxonomy and the numeric policy
// every constructor threads through.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bentlab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// ---------------------------------------------------------------- errors ---

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};
struct SizeLimit : Error {
    using Error::Error;
};
struct SingularFilter : Error {
    using Error::Error;
};
struct DegenerateProjection : Error {
    using Error::Error;
};
struct NotNpt : Error {
    using Error::Error;
};
struct BracketError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------- policy ---

// Tolerance tiers: construction-level identities are expected to hold to
// near machine precision, algebraic identities a bit looser, iterative
// eigensolver residuals looser still.
struct NumericPolicy {
    double construct_tol = 1e-12;
    double algebra_tol = 1e-10;
    double eig_tol = 1e-9;
    // Dense-size guard for tensor products: total entries of the result.
    std::size_t max_total_entries = std::size_t{1} << 20;

    static const NumericPolicy& standard() {
        static const NumericPolicy p{};
        return p;
    }
};

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= tol;
}

}  // namespace bentlab
