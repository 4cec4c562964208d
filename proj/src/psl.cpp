#include "schottky/psl.hpp"

#include <algorithm>
#include <cmath>

#include "schottky/errors.hpp"

namespace schottky {

ProjMap ProjMap::from_lift(const Matrix& lift) {
    if (lift.rows() != lift.cols() || lift.rows() < 2) throw DimensionMismatchError("lift must be square, size >= 2");
    if (inverse_condition(lift) <= tol::invertible) throw SingularError();
    const Eigen::Index n = lift.rows();
    const Complex det = lift.determinant();
    // principal n-th root of the determinant
    const Complex root = std::exp(std::log(det) / static_cast<double>(n));
    return ProjMap(lift / root, std::abs(root));
}

ProjMap ProjMap::identity(int ambient_dim) {
    return ProjMap(Matrix::Identity(ambient_dim + 1, ambient_dim + 1), 1.0);
}

ProjMap ProjMap::inverse() const {
    Matrix inv = lift_.inverse();
    ProjMap r = from_lift(inv);
    r.input_scale_ = 1.0 / input_scale_;
    return r;
}

ProjMap ProjMap::operator*(const ProjMap& rhs) const {
    if (ambient_dim() != rhs.ambient_dim()) throw DimensionMismatchError();
    ProjMap r = from_lift(lift_ * rhs.lift_);
    r.input_scale_ = input_scale_ * rhs.input_scale_;
    return r;
}

ProjPoint ProjMap::apply(const ProjPoint& p) const {
    if (ambient_dim() != p.ambient_dim()) throw DimensionMismatchError();
    return canonicalize(lift_ * p.coords());
}

ProjSubspace ProjMap::apply(const ProjSubspace& s) const {
    if (ambient_dim() != s.ambient_dim()) throw DimensionMismatchError();
    return ProjSubspace::from_span(lift_ * s.basis());
}

bool ProjMap::proj_equal(const ProjMap& rhs, double rel_tol) const {
    Complex c;
    if (!proportional(lift_, rhs.lift_, rel_tol, &c)) return false;
    return std::abs(std::abs(c) - 1.0) <= rel_tol;
}

Matrix ModulusDecomposition::joint_basis() const {
    const int n = ambient_dim + 1;
    Matrix b(n, n);
    Eigen::Index c = 0;
    for (const auto& part : parts) {
        b.middleCols(c, part.basis.cols()) = part.basis;
        c += part.basis.cols();
    }
    return b;
}

Matrix ModulusDecomposition::reassemble() const {
    const int n = ambient_dim + 1;
    Matrix block = Matrix::Zero(n, n);
    Eigen::Index c = 0;
    for (const auto& part : parts) {
        const Eigen::Index d = part.gamma.rows();
        block.block(c, c, d, d) = part.modulus * part.gamma;
        c += d;
    }
    const Matrix b = joint_basis();
    return b * block * b.inverse();
}

std::vector<Vector> ModulusDecomposition::components(const Vector& x) const {
    const Vector c = joint_basis().partialPivLu().solve(x);
    std::vector<Vector> out;
    Eigen::Index at = 0;
    for (const auto& part : parts) {
        out.push_back(c.segment(at, part.basis.cols()));
        at += part.basis.cols();
    }
    return out;
}

ModulusDecomposition modulus_decomposition(const ProjMap& g) {
    const Matrix& a = g.lift();
    const SchurDecomp schur = complex_schur(a);
    const Vector eig = schur.t.diagonal();
    const Eigen::VectorXd moduli = eig.cwiseAbs();
    const auto clusters = cluster_moduli(moduli);

    ModulusDecomposition dec;
    dec.ambient_dim = g.ambient_dim();
    for (const auto& cl : clusters) {
        double log_r = 0.0;
        for (int idx : cl) {
            if (moduli(idx) <= 0.0) throw SingularError();
            log_r += std::log(moduli(idx));
        }
        const double r = std::exp(log_r / static_cast<double>(cl.size()));
        for (int idx : cl)
            if (std::abs(moduli(idx) / r - 1.0) > tol::unit_modulus)
                throw IllConditionedError();

        SchurDecomp local = schur;
        schur_move_to_front(local, cl);
        const Eigen::Index d = static_cast<Eigen::Index>(cl.size());
        ModulusPart part;
        part.modulus = r;
        part.basis = local.u.leftCols(d);
        part.gamma = Matrix(local.t.topLeftCorner(d, d)) / r;
        dec.parts.push_back(std::move(part));
    }
    std::sort(dec.parts.begin(), dec.parts.end(),
              [](const ModulusPart& x, const ModulusPart& y) { return x.modulus < y.modulus; });
    return dec;
}

Matrix eigenvector_span(const Matrix& t) {
    if (inverse_condition(t) <= tol::invertible) throw SingularError();
    const Eigen::Index n = t.rows();
    const Vector eig = complex_schur(t).t.diagonal();
    const double scale = eig.cwiseAbs().maxCoeff();
    const auto groups = cluster_values(eig, tol::unit_modulus * std::max(1.0, scale));
    Matrix collected(n, 0);
    for (const auto& grp : groups) {
        Complex lambda = 0.0;
        for (int idx : grp) lambda += eig(idx);
        lambda /= static_cast<double>(grp.size());
        const Matrix k = kernel_basis(t - lambda * Matrix::Identity(n, n));
        Matrix wider(n, collected.cols() + k.cols());
        wider << collected, k;
        collected = std::move(wider);
    }
    return orthonormal_range(collected);
}

namespace {

// Indices of Schur-diagonal eigenvalues belonging to modulus cluster r,
// together with the cluster list itself.
struct ClusterView {
    Vector eig;
    Eigen::VectorXd moduli;
    std::vector<std::vector<int>> clusters;
};

ClusterView cluster_view(const Matrix& lift) {
    ClusterView v;
    v.eig = complex_schur(lift).t.diagonal();
    v.moduli = v.eig.cwiseAbs();
    v.clusters = cluster_moduli(v.moduli);
    return v;
}

ProjSubspace level_set_for_cluster(const Matrix& lift, const ClusterView& view, const std::vector<int>& cl) {
    const Eigen::Index n = lift.rows();
    const double scale = view.moduli.maxCoeff();
    // distinct eigenvalues within the modulus cluster
    Vector vals(static_cast<Eigen::Index>(cl.size()));
    for (size_t i = 0; i < cl.size(); ++i) vals(static_cast<Eigen::Index>(i)) = view.eig(cl[i]);
    const auto groups = cluster_values(vals, tol::unit_modulus * std::max(1.0, scale));
    Matrix collected(n, 0);
    for (const auto& grp : groups) {
        Complex lambda = 0.0;
        for (int idx : grp) lambda += vals(idx);
        lambda /= static_cast<double>(grp.size());
        const Matrix k = kernel_basis(lift - lambda * Matrix::Identity(n, n));
        Matrix wider(n, collected.cols() + k.cols());
        wider << collected, k;
        collected = std::move(wider);
    }
    return ProjSubspace::from_span(collected);
}

}  // namespace

std::optional<ProjSubspace> level_set(const ProjMap& g, double r) {
    if (r <= 0.0) return std::nullopt;
    const double target = r / g.input_scale();
    const ClusterView view = cluster_view(g.lift());
    for (const auto& cl : view.clusters) {
        double log_r = 0.0;
        for (int idx : cl) log_r += std::log(view.moduli(idx));
        const double cr = std::exp(log_r / static_cast<double>(cl.size()));
        if (std::abs(target / cr - 1.0) <= tol::cluster_gap)
            return level_set_for_cluster(g.lift(), view, cl);
    }
    return std::nullopt;
}

bool finite_projective_order(const ProjMap& g, int* order) {
    const Eigen::Index n = g.lift().rows();
    Matrix p = g.lift() / g.lift().norm();
    for (int m = 1; m <= tol::finite_order_cap; ++m) {
        const Complex c = p.trace() / static_cast<double>(n);
        if ((p - c * Matrix::Identity(n, n)).norm() <= tol::proj_identity) {
            if (order) *order = m;
            return true;
        }
        p = p * g.lift();
        p /= p.norm();
    }
    return false;
}

std::vector<ProjSubspace> limit_set(const ProjMap& g) {
    int ord = 0;
    if (finite_projective_order(g, &ord))
        throw FiniteOrderError("projective order " + std::to_string(ord) + " <= 360");

    const ClusterView view = cluster_view(g.lift());
    // reuse the decomposition preconditions (cluster well-posedness)
    (void)modulus_decomposition(g);
    std::vector<ProjSubspace> out;
    out.reserve(view.clusters.size());
    for (const auto& cl : view.clusters) out.push_back(level_set_for_cluster(g.lift(), view, cl));
    return out;
}

}  // namespace schottky
