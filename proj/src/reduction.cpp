#include "bentlab/reduction.hpp"

#include <cmath>
#include <limits>

namespace bentlab {

namespace {

constexpr double kWitnessCut = 1e-12;
constexpr double kSchmidtTruncation = 1e-10;

// Extend k orthonormal columns to a full orthonormal basis of C^n by
// Gram-Schmidt against the standard basis, picking the best-conditioned
// candidate each round.
Mat complete_basis(const Mat& cols) {
    const int n = int(cols.rows());
    const int k = int(cols.cols());
    Mat basis(n, n);
    basis.leftCols(k) = cols;
    int have = k;
    while (have < n) {
        int best = -1;
        double best_norm = -1.0;
        Vec best_res;
        for (int e = 0; e < n; ++e) {
            Vec r = Vec::Zero(n);
            r(e) = 1.0;
            for (int c = 0; c < have; ++c)
                r -= basis.col(c) * (basis.col(c).dot(r));
            const double nr = r.norm();
            if (nr > best_norm) {
                best_norm = nr;
                best = e;
                best_res = r;
            }
        }
        if (best < 0 || best_norm < 1e-8)
            throw Error("complete_basis: degenerate span");
        basis.col(have++) = best_res / best_norm;
    }
    return basis;
}

// H of the appropriate size embedded into a dA (x) dB space: the swap/d
// operator on span{|0..d-1|} of each side.
Mat embedded_H(int d, int dA, int dB) {
    Mat h = Mat::Zero(dA * dB, dA * dB);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) h(i * dB + j, j * dB + i) = 1.0 / double(d);
    return h;
}

ReductionStage make_stage(std::string name, const BipartiteState& s, int d) {
    const HermEig eig = herm_eig(s.mat());
    return ReductionStage{std::move(name), s, tr_H_rho(s, d),
                          s.mat().trace().real(), eig.values(0)};
}

}  // namespace

double tr_H_rho(const BipartiteState& rho, int d) {
    const Mat h = embedded_H(d, rho.dA(), rho.dB());
    return (h * rho.mat()).trace().real();
}

std::optional<NptWitness> find_npt_witness(const BipartiteState& rho) {
    const HermEig eig = herm_eig(partial_transpose(rho).mat());
    if (eig.values(0) >= -kWitnessCut) return std::nullopt;
    Vec v = eig.vectors.col(0);
    return NptWitness{PureState(std::move(v), rho.dA(), rho.dB()), eig.values(0)};
}

namespace {

// A witness whose coefficient matrix is already diagonal with nonnegative
// nonincreasing entries needs no rotation at all. Degenerate coefficients
// make the SVD basis arbitrary, so this path also keeps symmetric states
// (equal Schmidt coefficients) fixed points of the pipeline.
bool in_computational_schmidt_form(const PureState& psi) {
    const int dmin = std::min(psi.dA, psi.dB);
    double prev = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (int i = 0; i < psi.dA; ++i)
        for (int j = 0; j < psi.dB; ++j)
            scale = std::max(scale, std::abs(psi.amp(i, j)));
    for (int i = 0; i < psi.dA; ++i)
        for (int j = 0; j < psi.dB; ++j) {
            const cplx z = psi.amp(i, j);
            if (i != j || i >= dmin) {
                if (std::abs(z) > 1e-13 * scale) return false;
                continue;
            }
            if (std::abs(z.imag()) > 1e-13 * scale || z.real() < 0.0 ||
                z.real() > prev + 1e-13 * scale)
                return false;
            prev = z.real();
        }
    return true;
}

}  // namespace

std::pair<BipartiteState, PureState> schmidt_rotate(const BipartiteState& rho,
                                                    const NptWitness& w) {
    if (w.psi.dA != rho.dA() || w.psi.dB != rho.dB())
        throw InvalidInput("schmidt_rotate: witness dimensions mismatch");
    const double check =
        (w.psi.vec.adjoint() * partial_transpose(rho).mat() * w.psi.vec)(0).real();
    if (check >= 0.0)
        throw InvalidInput("schmidt_rotate: witness expectation not negative");

    if (in_computational_schmidt_form(w.psi)) {
        Vec phi = w.psi.vec / w.psi.vec.norm();
        // Truncate the tail below the Schmidt cutoff.
        const int dmin = std::min(rho.dA(), rho.dB());
        double top = 0.0;
        for (int i = 0; i < dmin; ++i)
            top = std::max(top, std::abs(phi(i * rho.dB() + i)));
        double nrm = 0.0;
        for (int i = 0; i < dmin; ++i) {
            cplx& z = phi(i * rho.dB() + i);
            if (std::abs(z) <= kSchmidtTruncation * top) z = 0.0;
            nrm += std::norm(z);
        }
        phi /= std::sqrt(nrm);
        return {rho, PureState(std::move(phi), rho.dA(), rho.dB())};
    }

    SchmidtDecomposition sd = schmidt(w.psi);
    const double top = sd.coefficients(0);
    int d = 0;
    for (Eigen::Index i = 0; i < sd.coefficients.size(); ++i)
        if (sd.coefficients(i) > kSchmidtTruncation * top) ++d;

    const Mat basis_a = complete_basis(sd.left.leftCols(d));
    const Mat basis_b = complete_basis(sd.right.leftCols(d).conjugate());
    const Mat ua = basis_a.adjoint();
    const Mat ub = basis_b.adjoint();

    const Mat u = tensor(ua, ub);
    Mat rotated = u * rho.mat() * u.adjoint();
    rotated = (rotated + Mat(rotated.adjoint())) / 2.0;

    Vec phi = Vec::Zero(rho.dim());
    double nrm = 0.0;
    for (int i = 0; i < d; ++i) nrm += sd.coefficients(i) * sd.coefficients(i);
    nrm = std::sqrt(nrm);
    for (int i = 0; i < d; ++i)
        phi(i * rho.dB() + i) = sd.coefficients(i) / nrm;

    return {BipartiteState(std::move(rotated), rho.dA(), rho.dB(),
                           rho.normalized()),
            PureState(std::move(phi), rho.dA(), rho.dB())};
}

BipartiteState local_filter(const BipartiteState& rho, const PureState& phi) {
    const int dA = rho.dA(), dB = rho.dB();
    if (phi.dA != dA || phi.dB != dB)
        throw InvalidInput("local_filter: phi dimensions mismatch");

    // phi must be diagonal in the computational product basis.
    int support = 0;
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j) {
            const double a = std::abs(phi.amp(i, j));
            if (i != j && a > 1e-10)
                throw InvalidInput("local_filter: phi not in Schmidt form");
            if (i == j && a > 1e-12) support = i + 1;
        }
    if (support == 0) throw InvalidInput("local_filter: phi has empty support");
    for (int i = 0; i < support; ++i)
        if (std::abs(phi.amp(i, i)) <= 1e-12)
            throw SingularFilter("local_filter: zero Schmidt coefficient inside support");

    Mat w = Mat::Zero(dA, dA);
    for (int i = 0; i < support; ++i) {
        const double lam = std::norm(phi.amp(i, i));
        w(i, i) = std::sqrt(double(support) * lam);
    }
    const Mat wfull = tensor(w, Mat::Identity(dB, dB));
    Mat filtered = wfull * rho.mat() * wfull.adjoint();
    const double tr = filtered.trace().real();
    if (tr <= 0.0) throw DegenerateProjection("local_filter: filtered trace vanishes");
    filtered /= tr;
    filtered = (filtered + Mat(filtered.adjoint())) / 2.0;
    return BipartiteState(std::move(filtered), dA, dB, /*normalized=*/true);
}

BipartiteState project_dd(const BipartiteState& rho, int d) {
    if (d < 1 || d > rho.dA() || d > rho.dB())
        throw InvalidInput("project_dd: d out of range");
    Mat out(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    out(i * d + j, k * d + l) =
                        rho.mat()(i * rho.dB() + j, k * rho.dB() + l);
    const double tr = out.trace().real();
    if (tr <= 1e-15) throw DegenerateProjection("project_dd: projected trace vanishes");
    out /= tr;
    return BipartiteState(std::move(out), d, d, /*normalized=*/true);
}

BipartiteState diagonal_twirl(const BipartiteState& rho) {
    if (rho.dA() != rho.dB())
        throw InvalidInput("diagonal_twirl: state must live on d (x) d");
    const int d = rho.dA();
    Mat out = Mat::Zero(d * d, d * d);
    // Surviving matrix elements: (k,l) equal to (i,j) or (j,i) as ordered
    // pairs; everything else averages to zero under the random phases.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            out(i * d + j, i * d + j) = rho.mat()(i * d + j, i * d + j);
            out(i * d + j, j * d + i) = rho.mat()(i * d + j, j * d + i);
        }
    return BipartiteState(std::move(out), d, d, rho.normalized());
}

BipartiteState permutation_symmetrize(const BipartiteState& rho,
                                      const NumericPolicy& pol) {
    if (rho.dA() != rho.dB())
        throw InvalidInput("permutation_symmetrize: state must live on d (x) d");
    const int d = rho.dA();
    const Mat& m = rho.mat();

    // Verify the input sits in the diagonal-twirl invariant algebra.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    const bool keep = (k == i && l == j) || (k == j && l == i);
                    if (!keep && std::abs(m(i * d + j, k * d + l)) > pol.algebra_tol)
                        throw InvalidInput(
                            "permutation_symmetrize: input outside invariant algebra");
                }

    double alpha = 0.0, beta1 = 0.0, beta2 = 0.0;
    for (int i = 0; i < d; ++i) alpha += m(i * d + i, i * d + i).real();
    alpha /= double(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            beta1 += m(i * d + j, i * d + j).real();
            beta2 += m(i * d + j, j * d + i).real();
        }
    const double pairs = double(d) * double(d - 1);
    beta1 /= pairs;
    beta2 /= pairs;

    Mat out = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) out(i * d + i, i * d + i) = alpha;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            out(i * d + j, i * d + j) = beta1;
            out(i * d + j, j * d + i) = beta2;
        }
    return BipartiteState(std::move(out), d, d, rho.normalized());
}

BipartiteState full_twirl(const BipartiteState& rho) {
    if (rho.dA() != rho.dB())
        throw InvalidInput("full_twirl: state must live on d (x) d");
    const int d = rho.dA();
    const double dd = double(d);
    Mat swap = dd * swap_H(d);
    const double tr = rho.mat().trace().real();
    const double s = (swap * rho.mat()).trace().real();
    // Projection onto span{I, swap} preserving Tr(rho) and Tr(swap rho).
    const double denom = dd * dd * dd - dd;
    const double alpha = (dd * tr - s) / denom;
    const double beta = (dd * s - tr) / denom;
    Mat out = alpha * Mat::Identity(d * d, d * d) + beta * swap;
    return BipartiteState(std::move(out), d, d, rho.normalized());
}

CanonicalParams extract_params(const BipartiteState& rho,
                               const NumericPolicy& pol) {
    if (rho.dA() != rho.dB())
        throw InvalidInput("extract_params: state must live on d (x) d");
    const int d = rho.dA();
    const Mat& m = rho.mat();
    double beta1 = 0.0, beta2 = 0.0;
    int count = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            beta1 += m(i * d + j, i * d + j).real();
            beta2 += m(i * d + j, j * d + i).real();
            ++count;
        }
    if (count > 0) {
        beta1 /= double(count);
        beta2 /= double(count);
    }
    // beta1 = (c+b)/2, beta2 = (c-b)/2.
    CanonicalParams p{d, beta1 - beta2, beta1 + beta2};
    const Mat rebuilt = build_rho_bc(p, /*allow_unphysical=*/true).mat();
    if (max_abs(rebuilt - m) > pol.algebra_tol)
        throw InvalidInput("extract_params: state is not of canonical form");
    return p;
}

ReductionResult reduce_to_canonical(const BipartiteState& rho) {
    const auto w = find_npt_witness(rho);
    if (!w) throw NotNpt("reduce_to_canonical: state has positive partial transpose");

    auto [rotated, phi] = schmidt_rotate(rho, *w);
    const int d = schmidt_rank(phi, 1e-11);

    ReductionTrace trace;
    trace.stages.push_back(make_stage("input", rho, d));
    trace.stages.push_back(make_stage("rotate", rotated, d));

    const BipartiteState filtered = local_filter(rotated, phi);
    trace.stages.push_back(make_stage("filter", filtered, d));

    const BipartiteState projected = project_dd(filtered, d);
    trace.stages.push_back(make_stage("project", projected, d));

    const BipartiteState twirled = diagonal_twirl(projected);
    trace.stages.push_back(make_stage("diagonal_twirl", twirled, d));

    const BipartiteState symmetrized = permutation_symmetrize(twirled);
    trace.stages.push_back(make_stage("permutation_symmetrize", symmetrized, d));

    return ReductionResult{extract_params(symmetrized), symmetrized,
                           std::move(trace)};
}

Mat mc_diagonal_twirl(const BipartiteState& rho, int samples, std::uint64_t seed) {
    if (rho.dA() != rho.dB())
        throw InvalidInput("mc_diagonal_twirl: state must live on d (x) d");
    const int d = rho.dA();
    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    Mat acc = Mat::Zero(d * d, d * d);
    for (int s = 0; s < samples; ++s) {
        Vec phases(d);
        for (int i = 0; i < d; ++i) {
            const double t = angle(rng);
            phases(i) = cplx(std::cos(t), std::sin(t));
        }
        Mat u = Mat::Zero(d, d);
        for (int i = 0; i < d; ++i) u(i, i) = phases(i);
        const Mat uu = tensor(u, u);
        acc += uu * rho.mat() * uu.adjoint();
    }
    return acc / double(samples);
}

Mat mc_full_twirl(const BipartiteState& rho, int samples, std::uint64_t seed) {
    if (rho.dA() != rho.dB())
        throw InvalidInput("mc_full_twirl: state must live on d (x) d");
    const int d = rho.dA();
    Rng rng(seed);
    Mat acc = Mat::Zero(d * d, d * d);
    for (int s = 0; s < samples; ++s) {
        const Mat u = haar_unitary(d, rng);
        const Mat uu = tensor(u, u);
        acc += uu * rho.mat() * uu.adjoint();
    }
    return acc / double(samples);
}

}  // namespace bentlab
