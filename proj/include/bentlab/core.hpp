// Dense complex linear algebra and bipartite operations: tensor products,
// partial transpose/trace, Hermitian eigendecomposition and Schmidt
// decomposition. Everything here is a pure function over immutable values.

#pragma once

#include <vector>

#include "bentlab/types.hpp"

namespace bentlab {

// ----------------------------------------------------------------- types ---

// Density operator (or more generally a Hermitian operator) on a dA x dB
// bipartite space. Hermiticity is enforced at construction; unit trace only
// when `normalized` is set (some operations deliberately work with
// unnormalized operators).
class BipartiteState {
   public:
    BipartiteState(Mat mat, int dA, int dB, bool normalized = true,
                   const NumericPolicy& pol = NumericPolicy::standard());

    const Mat& mat() const { return mat_; }
    int dA() const { return dA_; }
    int dB() const { return dB_; }
    int dim() const { return dA_ * dB_; }
    bool normalized() const { return normalized_; }

   private:
    Mat mat_;
    int dA_ = 0;
    int dB_ = 0;
    bool normalized_ = true;
};

struct PureState {
    Vec vec;
    int dA = 0;
    int dB = 0;

    PureState() = default;
    PureState(Vec v, int a, int b);

    cplx amp(int i, int j) const { return vec(i * dB + j); }
};

// Schmidt polar form: vec = sum_k coeff[k] |left_k> (x) |right_k>, with the
// coefficients nonincreasing and both vector sets orthonormal.
struct SchmidtDecomposition {
    RVec coefficients;
    Mat left;    // dA x k, orthonormal columns
    Mat right;   // dB x k, orthonormal columns
};

struct HermEig {
    RVec values;   // ascending
    Mat vectors;   // orthonormal columns, phase-fixed
};

enum class Subsys { A, B };

// ------------------------------------------------------------ operations ---

// Kronecker product with (i1,i2) -> i1*rows(B)+i2 row indexing. Throws
// SizeLimit when the result would exceed the policy's entry cap.
Mat tensor(const Mat& a, const Mat& b,
           const NumericPolicy& pol = NumericPolicy::standard());

Vec tensor_vec(const Vec& a, const Vec& b);

// Transpose on the B factor: out[(i,j),(k,l)] = in[(i,l),(k,j)]. Involution,
// bit-exact on entries.
BipartiteState partial_transpose(const BipartiteState& rho);
Mat partial_transpose_mat(const Mat& m, int dA, int dB);

// Reduced operator on the kept subsystem.
Mat partial_trace(const BipartiteState& rho, Subsys keep);

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending. Each
// eigenvector's largest-magnitude component is rotated real positive so
// results are reproducible. Throws InvalidInput on non-Hermitian input.
HermEig herm_eig(const Mat& m,
                 const NumericPolicy& pol = NumericPolicy::standard());

SchmidtDecomposition schmidt(const PureState& psi);

// Number of Schmidt coefficients above tol * (largest coefficient).
int schmidt_rank(const PureState& psi, double tol = 1e-9);

// |Phi_k> = d^{-1/2} sum_j exp(i 2 pi j k / d) |jj>.
PureState max_entangled(int d, int k = 0);

// Index regrouping for n-fold tensor powers of a bipartite operator: input
// on (A B), output on (A^n B^n) with all A factors collected first.
Mat bipartite_tensor_power(const Mat& m, int dA, int dB, int n,
                           const NumericPolicy& pol = NumericPolicy::standard());

// Same regrouping for two distinct factors (A1 B1) (x) (A2 B2) ->
// (A1 A2)(B1 B2).
Mat bipartite_tensor_pair(const Mat& m1, int dA1, int dB1, const Mat& m2,
                          int dA2, int dB2,
                          const NumericPolicy& pol = NumericPolicy::standard());

}  // namespace bentlab
