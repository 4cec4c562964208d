#include "schottky/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "schottky/errors.hpp"

namespace schottky {

double binom(long long m, long long l) {
    if (l < 0 || m < 0 || l > m) return 0.0;
    l = std::min(l, m - l);
    double r = 1.0;
    for (long long i = 1; i <= l; ++i) r *= static_cast<double>(m - l + i) / static_cast<double>(i);
    return r;
}

double log_binom(long long m, long long l) {
    if (l < 0 || m < 0 || l > m) return -std::numeric_limits<double>::infinity();
    l = std::min(l, m - l);
    double r = 0.0;
    for (long long i = 1; i <= l; ++i)
        r += std::log(static_cast<double>(m - l + i)) - std::log(static_cast<double>(i));
    return r;
}

Matrix jordan_block_power(Complex lam, int size, long long m) {
    Matrix p = Matrix::Zero(size, size);
    for (int i = 0; i < size; ++i) {
        for (int j = i; j < size; ++j) {
            const long long d = j - i;
            if (d > m) continue;
            p(i, j) = binom(m, d) * std::pow(lam, static_cast<double>(m - d));
        }
    }
    return p;
}

KIndexReport k_index(const Vector& v, const Matrix& t, int witness_steps) {
    if (v.norm() <= tol::zero_vector) throw ZeroVectorError();
    if (inverse_condition(t) <= tol::invertible) throw SingularError();
    const Eigen::Index n = t.rows();
    const SchurDecomp schur = complex_schur(t);
    const Vector eig = schur.t.diagonal();
    for (Eigen::Index i = 0; i < eig.size(); ++i)
        if (std::abs(std::abs(eig(i)) - 1.0) > tol::unit_modulus) throw NonUnitarySpectrumError();

    const auto groups = cluster_values(eig, tol::unit_modulus);

    // simultaneous spectral-subspace basis, one block per eigenvalue
    Matrix joint(n, n);
    std::vector<Complex> lambdas;
    std::vector<Eigen::Index> offsets, dims;
    Eigen::Index at = 0;
    for (const auto& grp : groups) {
        SchurDecomp local = schur;
        schur_move_to_front(local, grp);
        const Eigen::Index d = static_cast<Eigen::Index>(grp.size());
        joint.middleCols(at, d) = local.u.leftCols(d);
        Complex lambda = 0.0;
        for (int idx : grp) lambda += eig(idx);
        lambdas.push_back(lambda / static_cast<double>(grp.size()));
        offsets.push_back(at);
        dims.push_back(d);
        at += d;
    }
    const Vector coords = joint.partialPivLu().solve(v);

    int k = 0;
    const double vnorm = v.norm();
    for (size_t gi = 0; gi < groups.size(); ++gi) {
        const Vector w = joint.middleCols(offsets[gi], dims[gi]) * coords.segment(offsets[gi], dims[gi]);
        if (w.norm() <= tol::component * vnorm) continue;
        const Matrix nil = t - lambdas[gi] * Matrix::Identity(n, n);
        // smallest j with (t - lambda)^j w ~ 0, capped at the subspace dim
        Vector u = w;
        int j = 0;
        while (u.norm() > tol::unit_modulus * vnorm && j < static_cast<int>(dims[gi])) {
            u = nil * u;
            ++j;
        }
        k = std::max(k, j - 1);
    }

    KIndexReport rep;
    rep.k = k;
    // witness: late binomial-normalized iterate and its distance to Eve(t)
    const Matrix eve = eigenvector_span(t);
    Vector w = v;
    for (int m = 1; m <= witness_steps; ++m) w = t * w;
    w /= binom(witness_steps, k);
    rep.witness_limit = w;
    const Vector unit = w / w.norm();
    rep.residual = (unit - eve * (eve.adjoint() * unit)).norm();
    return rep;
}

DecayTable verify_decay(const Matrix& t, Complex lam, long long l, const Vector& v, long long m_max) {
    const double radius = complex_schur(t).t.diagonal().cwiseAbs().maxCoeff();
    if (!(radius < std::abs(lam) * (1.0 - 1e-10))) throw SpectralRadiusViolationError();
    const double log_lam = std::log(std::abs(lam));

    DecayTable table;
    Vector w = v;
    double log_norm = 0.0;
    bool dead = false;  // t^m v vanished exactly
    {
        const double n0 = w.norm();
        if (n0 <= 0.0) dead = true;
        else {
            w /= n0;
            log_norm = std::log(n0);
        }
    }
    double best = -1.0;
    for (long long m = 1; m <= m_max; ++m) {
        double value = 0.0;
        if (!dead) {
            w = t * w;
            const double n = w.norm();
            if (n <= 0.0) dead = true;
            else {
                w /= n;
                log_norm += std::log(n);
                value = std::exp(log_norm + log_binom(m, l) - static_cast<double>(m) * log_lam);
            }
        }
        table.rows.push_back({m, value});
        if (value > best) {
            best = value;
            table.burn_in_index = static_cast<int>(table.rows.size()) - 1;
        }
    }
    table.final_norm = table.rows.empty() ? 0.0 : table.rows.back().norm;
    return table;
}

OrbitDiagnostics normalized_orbit(const ProjMap& g, const ProjPoint& p, long long m_max) {
    const ModulusDecomposition dec = modulus_decomposition(g);
    const auto comps = dec.components(p.coords());
    int j0 = -1;
    for (int j = 0; j < dec.classes(); ++j)
        if (comps[static_cast<size_t>(j)].norm() > tol::component) j0 = j;
    if (j0 < 0) throw ZeroVectorError("point has no component in any modulus class");

    const ModulusPart& part = dec.parts[static_cast<size_t>(j0)];
    const KIndexReport ki = k_index(comps[static_cast<size_t>(j0)], part.gamma, /*witness_steps=*/500);

    const Matrix eve_local = eigenvector_span(part.gamma);
    OrbitDiagnostics diag(ProjSubspace::from_span(part.basis * eve_local));
    diag.j0 = j0 + 1;
    diag.k = ki.k;

    const double log_r = std::log(part.modulus);
    PowerIterator it(g.lift(), p.coords());
    const Matrix span = diag.limit_span.basis();
    for (long long m = 1; m <= m_max; ++m) {
        it.step();
        OrbitRow row;
        row.m = m;
        row.norm = std::exp(it.log_norm - static_cast<double>(m) * log_r - log_binom(m, ki.k));
        row.distance_to_span = (it.w - span * (span.adjoint() * it.w)).norm();
        diag.rows.push_back(row);
        diag.points.push_back(canonicalize(it.w));
    }
    diag.last_distance = diag.rows.empty() ? 0.0 : diag.rows.back().distance_to_span;
    return diag;
}

}  // namespace schottky
