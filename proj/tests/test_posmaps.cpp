#include <doctest.h>

#include "bentlab/distill.hpp"
#include "bentlab/posmaps.hpp"
#include "helpers.hpp"

using namespace bentlab;

namespace {

ChoiMap transpose_map(int d) {
    // Choi of T is the swap operator.
    return ChoiMap(Mat(double(d) * swap_H(d)), d, d);
}

ChoiMap identity_map(int d) {
    const Vec phi = max_entangled(d, 0).vec;
    return ChoiMap(Mat(double(d) * Mat(phi * phi.adjoint())), d, d);
}

ChoiMap lambda_bc(const CanonicalParams& p) {
    return compose_transpose(state_to_map(build_rho_bc(p)));
}

}  // namespace

TEST_CASE("state_to_map: defining cases and round trip") {
    // |Phi+><Phi+| corresponds to the identity map.
    const Vec phi = max_entangled(3, 0).vec;
    const ChoiMap s =
        state_to_map(BipartiteState(Mat(phi * phi.adjoint()), 3, 3, true));
    Rng rng(1);
    const Mat x = gaussian_mat(3, 3, rng);
    CHECK(max_abs(map_apply(s, x) - x) < 1e-13);

    // Maximally mixed state gives the completely depolarizing map.
    const ChoiMap dep =
        state_to_map(BipartiteState(Mat::Identity(9, 9) / 9.0, 3, 3, true));
    CHECK(max_abs(map_apply(dep, x) - Mat(x.trace() * Mat::Identity(3, 3) / 3.0)) <
          1e-13);

    for (int d : {3, 4}) {
        for (int rep = 0; rep < 50; ++rep) {
            const BipartiteState rho(random_density(d * d, rng), d, d, true);
            const BipartiteState back = map_to_state(state_to_map(rho));
            REQUIRE(max_abs(back.mat() - rho.mat()) < 1e-12);
        }
    }
}

TEST_CASE("map_apply: canonical map action on basis matrices") {
    const CanonicalParams p{3, 0.2, 1.0 / 15};
    const ChoiMap s = state_to_map(build_rho_bc(p));
    const double a = p.a();

    // Under the Choi(S) = d*rho convention the map's action carries an
    // overall factor d against the coefficient formulas.
    Mat e01 = Mat::Zero(3, 3);
    e01(0, 1) = 1.0;
    // S(|i><j|) = d ((c-b)/2)|j><i| for i != j.
    Mat expect = Mat::Zero(3, 3);
    expect(1, 0) = 3.0 * (p.c - p.b) / 2.0;
    CHECK(max_abs(map_apply(s, e01) - expect) < 1e-13);

    // S(|i><i|) = d (a|i><i| + ((b+c)/2) sum_{j != i} |j><j|).
    Mat e11 = Mat::Zero(3, 3);
    e11(1, 1) = 1.0;
    Mat diag = Mat::Zero(3, 3);
    diag(0, 0) = 3.0 * (p.b + p.c) / 2.0;
    diag(1, 1) = 3.0 * a;
    diag(2, 2) = 3.0 * (p.b + p.c) / 2.0;
    CHECK(max_abs(map_apply(s, e11) - diag) < 1e-13);

    // Composed with transposition the off-diagonal action keeps |i><j|.
    const ChoiMap lam = compose_transpose(s);
    Mat expect2 = Mat::Zero(3, 3);
    expect2(0, 1) = 3.0 * (p.c - p.b) / 2.0;
    CHECK(max_abs(map_apply(lam, e01) - expect2) < 1e-13);
}

TEST_CASE("map_adjoint_apply: Hilbert-Schmidt pairing") {
    Rng rng(2);
    const ChoiMap lam = lambda_bc(CanonicalParams{3, 0.21, 0.02});
    for (int rep = 0; rep < 20; ++rep) {
        const Mat x = gaussian_mat(3, 3, rng);
        const Mat z = gaussian_mat(3, 3, rng);
        const cplx lhs = (Mat(map_apply(lam, x).adjoint()) * z).trace();
        const cplx rhs = (Mat(x.adjoint()) * map_adjoint_apply(lam, z)).trace();
        REQUIRE(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("compose_transpose: identity -> swap Choi, involution, Lambda_bc") {
    const ChoiMap t = compose_transpose(identity_map(3));
    CHECK(max_abs(t.choi() - Mat(3.0 * swap_H(3))) < 1e-13);

    const ChoiMap s = state_to_map(build_rho_bc(CanonicalParams{3, 0.2, 0.05}));
    const ChoiMap twice = compose_transpose(compose_transpose(s));
    CHECK((twice.choi().array() == s.choi().array()).all());

    // Choi(T o S_bc) = d * PT(rho_bc).
    const CanonicalParams p{3, 0.19, 0.03};
    const ChoiMap lam = lambda_bc(p);
    const Mat expect = 3.0 * partial_transpose(build_rho_bc(p)).mat();
    CHECK(max_abs(lam.choi() - expect) < 1e-13);
}

TEST_CASE("tau_w: action and Choi proportional to the Werner-line PT") {
    // tau_w(X) = d lambda Tr(X) 1 - (lambda+1) X; at X = I, d = 3,
    // lambda = 1 this is (d^2 lambda - lambda - 1) I = 7 I.
    const ChoiMap tw = tau_w(3, 1.0);
    CHECK(max_abs(map_apply(tw, Mat::Identity(3, 3)) - Mat(7.0 * Mat::Identity(3, 3))) <
          1e-13);

    Mat e01 = Mat::Zero(3, 3);
    e01(0, 1) = 1.0;
    CHECK(max_abs(map_apply(tw, e01) + 2.0 * e01) < 1e-13);

    for (double lambda : {0.7, 2.0}) {
        const ChoiMap m = tau_w(3, lambda);
        CHECK(max_abs(m.choi() - 3.0 * test::sigma_pt(3, lambda)) < 1e-12);
    }
}

TEST_CASE("is_k_positive: transpose map, identity map, tau_w boundary at d=4") {
    SeesawOptions opts;
    opts.restarts = 16;
    opts.seed = 41;

    const auto t2 = is_k_positive(transpose_map(3), 2, opts);
    CHECK(t2.violated());
    REQUIRE(t2.witness.has_value());
    // Witness reproduces the margin.
    const Mat image =
        apply_one_side(transpose_map(3), Mat(*t2.witness * t2.witness->adjoint()), 2);
    CHECK(herm_eig(image).values(0) == doctest::Approx(t2.margin).epsilon(1e-10));
    // Transpose is positive: k=1 finds nothing.
    CHECK(!is_k_positive(transpose_map(3), 1, opts).violated());

    const auto id3 = is_k_positive(identity_map(3), 3, opts);
    CHECK(!id3.violated());
    CHECK(id3.margin >= -1e-12);

    const auto boundary = is_k_positive(tau_w(4, 1.0), 2, opts);
    CHECK(std::abs(boundary.margin) < 1e-7);

    CHECK_THROWS_AS(is_k_positive(identity_map(3), 4, opts), InvalidInput);
}

TEST_CASE("is_2_positive_maxent: verdicts at G and F match the regions") {
    SeesawOptions opts;
    opts.restarts = 16;
    opts.seed = 42;

    CHECK(is_2_positive_maxent(transpose_map(3), opts).violated());
    CHECK(!is_2_positive_maxent(lambda_bc(CanonicalParams{3, 0.2, 1.0 / 15}), opts)
               .violated());
    const auto atF =
        is_2_positive_maxent(lambda_bc(CanonicalParams{3, 1.0 / 3, 0.0}), opts);
    CHECK(atF.violated());
    REQUIRE(atF.witness.has_value());
    const Mat image = apply_one_side(
        lambda_bc(CanonicalParams{3, 1.0 / 3, 0.0}),
        Mat(*atF.witness * atF.witness->adjoint()), 2);
    CHECK(herm_eig(image).values(0) == doctest::Approx(atF.margin).epsilon(1e-10));
}

TEST_CASE("2-positivity of Lambda_bc agrees with the one-copy verdict") {
    Rng rng(77);
    SeesawOptions opts;
    opts.restarts = 16;
    opts.seed = 43;
    SeesawOptions dopts = opts;
    dopts.warm_starts = witness_planes(3);
    for (int rep = 0; rep < 10; ++rep) {
        const CanonicalParams p = test::sample_physical(3, rng);
        const Mat pt = partial_transpose(build_rho_bc(p)).mat();
        const bool distillable = min_rank2(pt, 3, 3, dopts).min_value < -1e-9;
        const auto maxent = is_2_positive_maxent(lambda_bc(p), opts);
        const auto general = is_k_positive(lambda_bc(p), 2, opts);
        REQUIRE(maxent.violated() == distillable);
        REQUIRE(general.violated() == distillable);
    }
}

TEST_CASE("maxent-restricted and general rank-2 testers agree on tau_w") {
    SeesawOptions opts;
    opts.restarts = 12;
    opts.seed = 44;
    for (double lambda : {0.5, 1.0, 1.8, 2.2, 3.0}) {
        const ChoiMap m = tau_w(3, lambda);
        const auto a = is_2_positive_maxent(m, opts);
        const auto b = is_k_positive(m, 2, opts);
        REQUIRE(a.violated() == b.violated());
        // When a violation exists, the maximally entangled family attains
        // the same depth; without one the general search pads zeros via
        // rank-deficient inputs, so only the verdicts need to match.
        if (a.violated()) REQUIRE(std::abs(a.margin - b.margin) < 1e-7);
    }
}

TEST_CASE("tau_w 2-positivity transition sits at lambda = 2/(d-2)") {
    SeesawOptions opts;
    opts.restarts = 12;
    opts.seed = 45;
    for (int d : {3, 4}) {
        double lo = 0.5 / double(d), hi = 4.0;   // margins: negative at lo
        REQUIRE(is_2_positive_maxent(tau_w(d, lo), opts).violated());
        REQUIRE(!is_2_positive_maxent(tau_w(d, hi), opts).violated());
        while (hi - lo > 1e-4) {
            const double mid = (lo + hi) / 2.0;
            (is_2_positive_maxent(tau_w(d, mid), opts).violated() ? lo : hi) = mid;
        }
        const double expect = 2.0 / double(d - 2);
        CHECK(std::abs((lo + hi) / 2.0 - expect) < 1e-3);
    }
}

TEST_CASE("k = dIn search agrees with the Choi PSD test") {
    Rng rng(88);
    SeesawOptions opts;
    opts.restarts = 12;
    opts.seed = 46;
    for (int rep = 0; rep < 6; ++rep) {
        const CanonicalParams p = test::sample_physical(3, rng);
        const ChoiMap lam = lambda_bc(p);
        const bool psd = herm_eig(lam.choi()).values(0) >= -1e-9;
        const auto verdict = is_k_positive(lam, 3, opts);
        REQUIRE(verdict.violated() == !psd);
    }
    // A completely positive map: S_bc itself.
    const ChoiMap s = state_to_map(build_rho_bc(CanonicalParams{3, 0.2, 0.05}));
    CHECK(!is_k_positive(s, 3, opts).violated());
}

TEST_CASE("tensor_maps: identity composition and regrouped Choi") {
    const ChoiMap id2 = tensor_maps(identity_map(2), identity_map(2));
    Rng rng(6);
    const Mat x = gaussian_mat(4, 4, rng);
    CHECK(max_abs(map_apply(id2, x) - x) < 1e-12);

    // Product inputs factorize through the tensor map.
    const ChoiMap l1 = lambda_bc(CanonicalParams{3, 0.2, 0.05});
    const ChoiMap l2 = tau_w(3, 1.3);
    const ChoiMap prod = tensor_maps(l1, l2);
    const Mat xa = gaussian_mat(3, 3, rng), xb = gaussian_mat(3, 3, rng);
    CHECK(max_abs(map_apply(prod, tensor(xa, xb)) -
                  tensor(map_apply(l1, xa), map_apply(l2, xb))) < 1e-11);
}

TEST_CASE("two copies of Lambda_G stay 2-positive (cross-check with distill)") {
    SeesawOptions opts;
    opts.restarts = 12;
    opts.seed = 47;
    const ChoiMap lg = lambda_bc(CanonicalParams{3, 0.2, 1.0 / 15});
    const auto verdict = is_2_positive_maxent(tensor_maps(lg, lg), opts);
    CHECK(!verdict.violated());

    SeesawOptions dopts;
    dopts.restarts = 12;
    dopts.seed = 48;
    const auto two = f_value(EpsParams{3, 1.0 / 15, 1.0 / 30}, 2, dopts);
    CHECK((two.min_value >= -1e-7) == !verdict.violated());
}

TEST_CASE("tensoring with the identity can break 2-positivity") {
    // tau_w(4, 1.2) is 2-positive but not 4-positive, so id_2 (x) tau_w
    // must fail the 2-positivity test; both verdicts are heuristic searches
    // with the violation side certified.
    SeesawOptions opts;
    opts.restarts = 24;
    opts.seed = 49;
    const ChoiMap lam2 = tau_w(4, 1.2);
    CHECK(!is_2_positive_maxent(lam2, opts).violated());
    CHECK(is_k_positive(lam2, 4, opts).violated());

    const ChoiMap prod = tensor_maps(identity_map(2), lam2);
    const auto verdict = is_2_positive_maxent(prod, opts);
    CHECK(verdict.violated());
}

TEST_CASE("lambda_c_image: verified image parameters, symmetry, PPT side") {
    // G maps to (1/15, 2/15); verified entrywise below.
    const CanonicalParams g{3, 0.2, 1.0 / 15};
    const CanonicalParams img = lambda_c_image(g);
    CHECK(img.b == doctest::Approx(1.0 / 15).epsilon(1e-14));
    CHECK(img.c == doctest::Approx(2.0 / 15).epsilon(1e-14));

    Rng rng(91);
    for (int rep = 0; rep < 25; ++rep) {
        const CanonicalParams p = test::sample_physical(3, rng);
        const Mat raw = reduction_map_image(build_rho_bc(p));
        const CanonicalParams q = lambda_c_image(p);
        const Mat target = build_rho_bc(q, true).mat() * raw.trace().real();
        REQUIRE(max_abs(raw - target) < 1e-11);
        // b = c maps to b' = c'.
        if (rep == 0) {
            const CanonicalParams sym = lambda_c_image(CanonicalParams{3, 0.1, 0.1});
            REQUIRE(sym.b == doctest::Approx(sym.c).epsilon(1e-15));
        }
    }

    // Image of the NPT1 region lands on the PPT side of the b axis.
    for (int rep = 0; rep < 40; ++rep) {
        CanonicalParams p = test::sample_polygon(
            3,
            [](const CanonicalParams& q) {
                return classify_region(q) != RegionLabel::Unphysical &&
                       pt_spectrum(q).lambda0 < 0.0;
            },
            rng);
        REQUIRE(pt_spectrum(lambda_c_image(p)).lambda0 >= -1e-12);
    }

    CHECK_THROWS_AS(lambda_c_image(CanonicalParams{2, 0.6, 0.0}), InvalidInput);
}
