#include "bentlab/sepcert.hpp"

#include <cmath>

namespace bentlab {

namespace {

cplx unit_phase(double angle) { return cplx(std::cos(angle), std::sin(angle)); }

long choose2(int d) { return long(d) * long(d - 1) / 2; }

// Scale a corner ensemble into a barycentric mix: member vectors are
// normalized and their norms folded into the weights, so that the combined
// ensemble reproduces sum_corner w_corner * rho_corner.
void append_scaled(ProductEnsemble& out, const ProductEnsemble& corner,
                   double corner_weight) {
    if (corner_weight <= 0.0) return;
    double trace = 0.0;
    for (const auto& m : corner.members)
        trace += m.w * m.alice.squaredNorm() * m.bob.squaredNorm();
    for (const auto& m : corner.members) {
        const double na = m.alice.norm(), nb = m.bob.norm();
        out.members.push_back({corner_weight * m.w * na * na * nb * nb / trace,
                               m.alice / na, m.bob / nb});
    }
}

}  // namespace

BipartiteState ensemble_to_density(const ProductEnsemble& e, int dA, int dB) {
    if (e.members.empty()) throw InvalidInput("ensemble_to_density: empty ensemble");
    Mat acc = Mat::Zero(dA * dB, dA * dB);
    for (const auto& m : e.members) {
        if (m.alice.size() != dA || m.bob.size() != dB)
            throw InvalidInput("ensemble_to_density: member dimension mismatch");
        if (m.w <= 0.0) throw InvalidInput("ensemble_to_density: nonpositive weight");
        const Vec prod = tensor_vec(m.alice, m.bob);
        acc += m.w * Mat(prod * prod.adjoint());
    }
    acc /= acc.trace().real();
    acc = (acc + Mat(acc.adjoint())) / 2.0;
    return BipartiteState(std::move(acc), dA, dB, /*normalized=*/true);
}

ProductEnsemble decomposition_A(int d) {
    if (d < 2) throw InvalidInput("decomposition_A: d must be >= 2");
    ProductEnsemble e;
    for (int i = 0; i < d; ++i) {
        Vec v = Vec::Zero(d);
        v(i) = 1.0;
        e.members.push_back({1.0 / double(d), v, v});
    }
    return e;
}

ProductEnsemble decomposition_K(int d) {
    if (d < 2) throw InvalidInput("decomposition_K: d must be >= 2");
    ProductEnsemble e;
    const double w = 1.0 / double(d * d - d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            Vec a = Vec::Zero(d), b = Vec::Zero(d);
            a(i) = 1.0;
            b(j) = 1.0;
            e.members.push_back({w, a, b});
        }
    return e;
}

ProductEnsemble decomposition_B(int d) {
    if (d < 3) throw InvalidInput("decomposition_B: d must be >= 3");
    // Equal mixture of (-|i> + w^k |j>) (x) (|i> + w^k |j>) over pairs i<j
    // and k = 0,1,2 with w = exp(2 pi i / 3); the three cube-root phases
    // cancel every cross term that is absent from the target state.
    ProductEnsemble e;
    const double w = 1.0 / double(3 * choose2(d));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = 0; k < 3; ++k) {
                const cplx ph = unit_phase(2.0 * M_PI * double(k) / 3.0);
                Vec a = Vec::Zero(d), b = Vec::Zero(d);
                a(i) = -1.0;
                a(j) = ph;
                b(i) = 1.0;
                b(j) = ph;
                e.members.push_back({w, a, b});
            }
    return e;
}

ProductEnsemble decomposition_J(int d) {
    if (d < 3) throw InvalidInput("decomposition_J: d must be >= 3");
    if (d > 8) throw SizeLimit("decomposition_J: 3^d members beyond guard at d > 8");
    long count = 1;
    for (int i = 0; i < d; ++i) count *= 3;
    ProductEnsemble e;
    const double w = 1.0 / double(count);
    for (long code = 0; code < count; ++code) {
        long rem = code;
        Vec a(d);
        for (int j = 0; j < d; ++j) {
            const int kj = int(rem % 3);
            rem /= 3;
            a(j) = unit_phase(2.0 * M_PI * double(kj) / 3.0);
        }
        // The stated mixture realizes the PT at J with Bob conjugated;
        // conjugating back makes Bob's vector equal Alice's.
        e.members.push_back({w, a, a});
    }
    return e;
}

ProductEnsemble decompose_ppt_point(const CanonicalParams& p) {
    if (classify_region(p) != RegionLabel::SeparablePPT)
        throw InvalidInput("decompose_ppt_point: point is not in the PPT region");
    const RegionPoint A = region_point(p.d, 'A'), B = region_point(p.d, 'B'),
                      K = region_point(p.d, 'K'), J = region_point(p.d, 'J');

    // Barycentric solve in triangle ABK when the point lies on B's side of
    // the diagonal AK (ties included), else in AKJ.
    auto barycentric = [&](const RegionPoint& p0, const RegionPoint& p1,
                           const RegionPoint& p2, double* w) {
        const double det = (p1.b - p0.b) * (p2.c - p0.c) -
                           (p2.b - p0.b) * (p1.c - p0.c);
        w[1] = ((p.b - p0.b) * (p2.c - p0.c) - (p2.b - p0.b) * (p.c - p0.c)) / det;
        w[2] = ((p1.b - p0.b) * (p.c - p0.c) - (p.b - p0.b) * (p1.c - p0.c)) / det;
        w[0] = 1.0 - w[1] - w[2];
    };

    const double side = p.b * K.c - p.c * K.b;   // cross(AK, Apoint) sign flip
    double w[3];
    ProductEnsemble out;
    if (side >= 0.0) {
        barycentric(A, B, K, w);
        append_scaled(out, decomposition_A(p.d), w[0]);
        append_scaled(out, decomposition_B(p.d), w[1]);
        append_scaled(out, decomposition_K(p.d), w[2]);
    } else {
        barycentric(A, K, J, w);
        append_scaled(out, decomposition_A(p.d), w[0]);
        append_scaled(out, decomposition_K(p.d), w[1]);
        append_scaled(out, decomposition_J(p.d), w[2]);
    }
    for (double v : w)
        if (v < -1e-12)
            throw InvalidInput("decompose_ppt_point: negative barycentric weight");
    return out;
}

SeparabilityReport verify_separable(const ProductEnsemble& e,
                                    const BipartiteState& rho, double tol) {
    SeparabilityReport report;
    double wsum = 0.0;
    report.members_ok = true;
    for (const auto& m : e.members) {
        wsum += m.w;
        if (m.w <= 0.0 || !m.alice.allFinite() || !m.bob.allFinite() ||
            m.alice.norm() == 0.0 || m.bob.norm() == 0.0)
            report.members_ok = false;
    }
    report.weights_ok = std::abs(wsum - 1.0) <= 1e-12;
    const BipartiteState rebuilt =
        ensemble_to_density(e, rho.dA(), rho.dB());
    report.max_entry_error = max_abs(rebuilt.mat() - rho.mat());
    report.pass =
        report.weights_ok && report.members_ok && report.max_entry_error <= tol;
    return report;
}

}  // namespace bentlab
