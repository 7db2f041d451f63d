#include <doctest.h>

#include "bentlab/canonical.hpp"
#include "bentlab/core.hpp"
#include "bentlab/json_io.hpp"
#include "bentlab/random.hpp"
#include "helpers.hpp"

using namespace bentlab;

TEST_CASE("tensor: identities and diagonal arithmetic") {
    const Mat i2 = Mat::Identity(2, 2), i3 = Mat::Identity(3, 3);
    CHECK(max_abs(tensor(i2, i3) - Mat::Identity(6, 6)) == 0.0);

    Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
    a.diagonal() << 1, 2;
    b.diagonal() << 3, 4;
    Mat expect = Mat::Zero(4, 4);
    expect.diagonal() << 3, 4, 6, 8;
    CHECK(max_abs(tensor(a, b) - expect) == 0.0);
}

TEST_CASE("tensor: (sigma_x (x) sigma_x) |00> = |11>") {
    const Mat xx = tensor(test::pauli_x(), test::pauli_x());
    Vec v00 = Vec::Zero(4);
    v00(0) = 1.0;
    Vec v11 = Vec::Zero(4);
    v11(3) = 1.0;
    CHECK(max_abs(Mat(xx * v00 - v11)) == 0.0);
}

TEST_CASE("tensor: associativity and size guard") {
    Rng rng(11);
    const Mat a = gaussian_mat(2, 2, rng), b = gaussian_mat(3, 3, rng),
              c = gaussian_mat(2, 2, rng);
    CHECK(max_abs(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))) < 1e-14);

    // Exact associativity on integer-entried matrices.
    Mat ia(2, 2), ib(2, 2), ic(2, 2);
    ia << 1, 2, 3, 4;
    ib << 5, -6, 7, 8;
    ic << cplx(0, 1), 2, -3, cplx(4, -4);
    CHECK(max_abs(tensor(tensor(ia, ib), ic) - tensor(ia, tensor(ib, ic))) == 0.0);

    NumericPolicy tight;
    tight.max_total_entries = 10;
    CHECK_THROWS_AS(tensor(a, b, tight), SizeLimit);
}

TEST_CASE("partial_transpose: separable diagonal fixed point") {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 0.25;
    m(3, 3) = 0.75;
    const BipartiteState rho(m, 2, 2, true);
    CHECK(max_abs(partial_transpose(rho).mat() - m) == 0.0);
}

TEST_CASE("partial_transpose: Bell state has minimum eigenvalue -1/2") {
    const Vec phi = max_entangled(2, 0).vec;
    const BipartiteState rho(Mat(phi * phi.adjoint()), 2, 2, true);
    const HermEig eig = herm_eig(partial_transpose(rho).mat());
    CHECK(eig.values(0) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("partial_transpose: rho_bc cross entries become (c-b)/2") {
    const CanonicalParams p{3, 0.2, 0.05};
    const Mat pt = partial_transpose(build_rho_bc(p)).mat();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            CHECK(std::abs(pt(i * 3 + i, j * 3 + j) - cplx((p.c - p.b) / 2.0, 0.0)) <
                  1e-15);
        }
}

TEST_CASE("partial_transpose: involution is bit-exact and pairing holds") {
    Rng rng(42);
    for (int rep = 0; rep < 20; ++rep) {
        const int dA = 2 + int(rng() % 3), dB = 2 + int(rng() % 3);
        const BipartiteState rho(random_density(dA * dB, rng), dA, dB, true);
        const Mat twice =
            partial_transpose(partial_transpose(rho)).mat();
        CHECK((twice.array() == rho.mat().array()).all());

        // Tr(A^dag PT(B)) == Tr(PT(A)^dag B) for Hermitian A, B.
        Mat a = gaussian_mat(dA * dB, dA * dB, rng);
        a = (a + Mat(a.adjoint())) / 2.0;
        const Mat apt = partial_transpose_mat(a, dA, dB);
        const Mat bpt = partial_transpose(rho).mat();
        const cplx lhs = (a.adjoint() * bpt).trace();
        const cplx rhs = (apt.adjoint() * rho.mat()).trace();
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("partial_trace: maximally entangled and product marginals") {
    const Vec phi = max_entangled(3, 0).vec;
    const BipartiteState rho(Mat(phi * phi.adjoint()), 3, 3, true);
    CHECK(max_abs(partial_trace(rho, Subsys::A) - Mat::Identity(3, 3) / 3.0) <
          1e-14);

    Rng rng(5);
    const Mat ra = random_density(3, rng);
    Mat rb = random_density(2, rng);
    rb *= 0.7;   // unnormalized second factor
    const BipartiteState prod(tensor(ra, rb), 3, 2, false);
    CHECK(max_abs(partial_trace(prod, Subsys::A) - Mat(ra * rb.trace())) < 1e-13);
    const double tr = prod.mat().trace().real();
    CHECK(partial_trace(prod, Subsys::B).trace().real() ==
          doctest::Approx(tr).epsilon(1e-12));
}

TEST_CASE("partial_trace: e-dit superposition reduces to |a~|^2 diagonal") {
    // psi = sum_k a_k |Phi_k> has A marginal diag(|a~_j|^2) with a~ the
    // inverse Fourier transform of a.
    const int d = 3;
    Rng rng(7);
    Vec a = gaussian_vec(d, rng);
    a.normalize();
    Vec psi = Vec::Zero(d * d);
    for (int k = 0; k < d; ++k) psi += a(k) * max_entangled(d, k).vec;
    const BipartiteState rho(Mat(psi * psi.adjoint()), d, d, true);
    const Mat red = partial_trace(rho, Subsys::A);
    for (int j = 0; j < d; ++j) {
        cplx at(0, 0);
        for (int k = 0; k < d; ++k)
            at += a(k) * cplx(std::cos(2 * M_PI * j * k / d),
                              std::sin(2 * M_PI * j * k / d));
        at /= std::sqrt(double(d));
        CHECK(std::abs(red(j, j) - cplx(std::norm(at), 0)) < 1e-12);
        for (int l = 0; l < d; ++l)
            if (l != j) CHECK(std::abs(red(j, l)) < 1e-12);
    }
}

TEST_CASE("herm_eig: permutation diagonal, residuals, rejection") {
    Mat m = Mat::Zero(3, 3);
    m.diagonal() << 3, 1, 2;
    const HermEig eig = herm_eig(m);
    CHECK(eig.values(0) == doctest::Approx(1));
    CHECK(eig.values(1) == doctest::Approx(2));
    CHECK(eig.values(2) == doctest::Approx(3));

    Rng rng(3);
    Mat h = gaussian_mat(6, 6, rng);
    h = (h + Mat(h.adjoint())) / 2.0;
    const HermEig e2 = herm_eig(h);
    const double scale = max_abs(h);
    for (int i = 0; i < 6; ++i)
        CHECK((h * e2.vectors.col(i) - e2.values(i) * e2.vectors.col(i)).norm() <=
              1e-9 * scale);
    CHECK(max_abs(Mat(e2.vectors.adjoint() * e2.vectors) - Mat::Identity(6, 6)) <
          1e-12);

    Mat bad = gaussian_mat(4, 4, rng);
    CHECK_THROWS_AS(herm_eig(bad), InvalidInput);
}

TEST_CASE("herm_eig: PT(rho_bc) spectrum has multiplicities 1, d-1, d^2-d") {
    const CanonicalParams p{3, 0.21, 0.04};
    const auto analytic = pt_spectrum(p);
    const HermEig eig = herm_eig(partial_transpose(build_rho_bc(p)).mat());
    int n0 = 0, n1 = 0, n2 = 0;
    for (int i = 0; i < 9; ++i) {
        const double v = eig.values(i);
        if (std::abs(v - analytic.lambda0) < 1e-12) ++n0;
        else if (std::abs(v - analytic.lambda1) < 1e-12) ++n1;
        else if (std::abs(v - analytic.lambda2) < 1e-12) ++n2;
    }
    CHECK(n0 == 1);
    CHECK(n1 == 2);
    CHECK(n2 == 6);
}

TEST_CASE("herm_eig: swap H at d=3 splits -1/3 (x3), +1/3 (x6)") {
    const HermEig eig = herm_eig(swap_H(3));
    for (int i = 0; i < 3; ++i) CHECK(eig.values(i) == doctest::Approx(-1.0 / 3));
    for (int i = 3; i < 9; ++i) CHECK(eig.values(i) == doctest::Approx(1.0 / 3));
}

TEST_CASE("schmidt: product, Bell and e-dit coefficients") {
    Vec v = Vec::Zero(4);
    v(0) = 1.0;
    const auto sd0 = schmidt(PureState(v, 2, 2));
    CHECK(sd0.coefficients(0) == doctest::Approx(1.0));
    CHECK(schmidt_rank(PureState(v, 2, 2)) == 1);

    const auto bell = schmidt(max_entangled(2, 0));
    CHECK(bell.coefficients(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(bell.coefficients(1) == doctest::Approx(1.0 / std::sqrt(2.0)));

    const auto edit = schmidt(max_entangled(3, 0));
    for (int i = 0; i < 3; ++i)
        CHECK(edit.coefficients(i) == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(schmidt_rank(max_entangled(3, 0)) == 3);
}

TEST_CASE("schmidt: reconstruction on random vectors, all small dimensions") {
    Rng rng(99);
    for (int dA = 2; dA <= 4; ++dA)
        for (int dB = 2; dB <= 4; ++dB)
            for (int rep = 0; rep < 1000; ++rep) {
                const PureState psi(gaussian_vec(dA * dB, rng), dA, dB);
                const auto sd = schmidt(psi);
                Vec rebuilt = Vec::Zero(dA * dB);
                for (Eigen::Index k = 0; k < sd.coefficients.size(); ++k)
                    rebuilt += sd.coefficients(k) *
                               tensor_vec(sd.left.col(k), sd.right.col(k));
                REQUIRE((rebuilt - psi.vec).cwiseAbs().maxCoeff() < 1e-10);
                REQUIRE(std::abs(sd.coefficients.squaredNorm() -
                                 psi.vec.squaredNorm()) < 1e-10);
            }
}

TEST_CASE("schmidt_rank: rank-two combination") {
    // sqrt(0.7)|00> + sqrt(0.3)|11> embedded in 3 (x) 3.
    Vec v = Vec::Zero(9);
    v(0) = std::sqrt(0.7);
    v(4) = std::sqrt(0.3);
    CHECK(schmidt_rank(PureState(v, 3, 3)) == 2);
}

TEST_CASE("max_entangled: phases and orthogonality") {
    const PureState bell = max_entangled(2, 0);
    CHECK(std::abs(bell.vec(0) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(bell.vec(3) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);

    const PureState phi1 = max_entangled(3, 1);
    const cplx w(std::cos(2 * M_PI / 3), std::sin(2 * M_PI / 3));
    CHECK(std::abs(phi1.amp(1, 1) - w / std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(phi1.amp(2, 2) - w * w / std::sqrt(3.0)) < 1e-15);

    const cplx overlap = max_entangled(3, 0).vec.dot(max_entangled(3, 1).vec);
    CHECK(std::abs(overlap) < 1e-15);
    CHECK_THROWS_AS(max_entangled(3, 3), InvalidInput);
}

TEST_CASE("bipartite state validation") {
    Mat bad = Mat::Identity(4, 4);
    bad(0, 1) = cplx(0, 1);   // breaks hermiticity
    CHECK_THROWS_AS(BipartiteState(bad, 2, 2, false), InvalidInput);
    CHECK_THROWS_AS(BipartiteState(Mat::Identity(4, 4), 2, 2, true), InvalidInput);
    CHECK_NOTHROW(BipartiteState(Mat::Identity(4, 4) / 4.0, 2, 2, true));
}

TEST_CASE("bipartite_tensor_power: regrouping round trip") {
    Rng rng(17);
    Mat m = gaussian_mat(4, 4, rng);
    m = (m + Mat(m.adjoint())) / 2.0;
    const Mat two = bipartite_tensor_power(m, 2, 2, 2);

    // <x1 x2 (x) y1 y2 | M2 | u1 u2 (x) v1 v2> must factor.
    auto idx = [](int a1, int a2, int b1, int b2) {
        return (a1 * 2 + a2) * 4 + (b1 * 2 + b2);
    };
    for (int rep = 0; rep < 50; ++rep) {
        const int a1 = int(rng() % 2), a2 = int(rng() % 2), b1 = int(rng() % 2),
                  b2 = int(rng() % 2);
        const int c1 = int(rng() % 2), c2 = int(rng() % 2), e1 = int(rng() % 2),
                  e2 = int(rng() % 2);
        const cplx lhs = two(idx(a1, a2, b1, b2), idx(c1, c2, e1, e2));
        const cplx rhs = m(a1 * 2 + b1, c1 * 2 + e1) * m(a2 * 2 + b2, c2 * 2 + e2);
        CHECK(std::abs(lhs - rhs) == 0.0);
    }
}

TEST_CASE("json: matrix and state round trip") {
    Rng rng(23);
    const Mat m = gaussian_mat(3, 4, rng);
    const Mat back = mat_from_json(mat_to_json(m));
    CHECK((back.array() == m.array()).all());

    const BipartiteState rho(random_density(6, rng), 2, 3, true);
    const BipartiteState rho2 = state_from_json(state_to_json(rho));
    CHECK((rho2.mat().array() == rho.mat().array()).all());
    CHECK(rho2.dA() == 2);
    CHECK(rho2.dB() == 3);

    const CanonicalParams p{3, 0.2, 1.0 / 15};
    const CanonicalParams q = params_from_json(params_to_json(p));
    CHECK(q.d == 3);
    CHECK(q.b == p.b);
    CHECK(q.c == p.c);
}
