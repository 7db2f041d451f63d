// Linear maps on matrix algebras represented by their Choi matrices:
// the state <-> completely-positive-map correspondence, composition with
// transposition, the Werner-line map tau_W, and numeric k-positivity /
// 2-positivity searches sharing the see-saw engine's alternation.
//
// Choi convention: Choi(L) = sum_{ij} |i><j| (x) L(|i><j|), i.e. the block
// at (i,j) holds L(|i><j|). Equivalently (1 (x) L) applied to the
// unnormalized d |Phi+><Phi+|.

#pragma once

#include <optional>

#include "bentlab/canonical.hpp"
#include "bentlab/seesaw.hpp"

namespace bentlab {

// ----------------------------------------------------------------- types ---

class ChoiMap {
   public:
    ChoiMap(Mat choi, int dIn, int dOut,
            const NumericPolicy& pol = NumericPolicy::standard());

    const Mat& choi() const { return choi_; }
    int dIn() const { return dIn_; }
    int dOut() const { return dOut_; }

    // Block (i,j) = L(|i><j|).
    Mat block(int i, int j) const;

   private:
    Mat choi_;
    int dIn_ = 0;
    int dOut_ = 0;
};

struct PositivityVerdict {
    enum class Kind { ViolationFound, NoViolationFound };
    int k = 0;
    Kind result = Kind::NoViolationFound;
    // Input state (on C^k (x) C^dIn) whose image has a negative eigenvalue.
    std::optional<Vec> witness;
    double margin = 0.0;

    bool violated() const { return result == Kind::ViolationFound; }
};

// ------------------------------------------------------------ operations ---

// S with rho = (1 (x) S)(|Phi+><Phi+|); Choi(S) = d * rho.
ChoiMap state_to_map(const BipartiteState& rho);
BipartiteState map_to_state(const ChoiMap& map);

Mat map_apply(const ChoiMap& map, const Mat& x);

// Adjoint with respect to the Hilbert-Schmidt inner product.
Mat map_adjoint_apply(const ChoiMap& map, const Mat& z);

// T o S: blockwise transpose of the Choi matrix.
ChoiMap compose_transpose(const ChoiMap& s);

// tau_W(X) = d lambda Tr(X) 1 - (lambda + 1) X.
ChoiMap tau_w(int d, double lambda);

// (1_k (x) L) applied to an input operator on C^k (x) C^dIn.
Mat apply_one_side(const ChoiMap& map, const Mat& input, int k);

// Heuristic minimization of the smallest output eigenvalue over
// Schmidt-rank-<=k inputs, by alternating exact eigensolves between the
// input vector and the output test vector. A negative margin is certified
// by the stored witness; a nonnegative one is not a proof.
PositivityVerdict is_k_positive(const ChoiMap& map, int k,
                                const SeesawOptions& opts = {});

// Same verdict but with the search's reported witness/margin restricted to
// maximally entangled rank-two inputs |0,b0> + |1,b1>.
PositivityVerdict is_2_positive_maxent(const ChoiMap& map,
                                       const SeesawOptions& opts = {});

// Choi of L1 (x) L2 with the regrouped (in1 in2)(out1 out2) ordering.
ChoiMap tensor_maps(const ChoiMap& l1, const ChoiMap& l2,
                    std::size_t max_entries = std::size_t{1} << 20);

// Image of rho_bc under 1 (x) L_c with L_c(X) = Tr(X) 1 - X, expressed as
// canonical parameters of the (trace-normalized) output.
CanonicalParams lambda_c_image(const CanonicalParams& p);

// The raw operator (Tr_B rho) (x) 1 - rho used to verify lambda_c_image.
Mat reduction_map_image(const BipartiteState& rho);

}  // namespace bentlab
