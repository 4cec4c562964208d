#include "schottky/region.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "schottky/errors.hpp"

namespace schottky {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> hermitian_eigen(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw SingularError("Hermitian eigensolver failed");
    return es;
}

}  // namespace

QuadricRegion QuadricRegion::from_forms(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw DimensionMismatchError("form pair must be square of equal size");
    if ((a - a.adjoint()).norm() > 1e-12 * std::max(1.0, a.norm()) ||
        (b - b.adjoint()).norm() > 1e-12 * std::max(1.0, b.norm()))
        throw ParseError("form pair is not Hermitian");
    Matrix ah = hermitize(a);
    Matrix bh = hermitize(b);
    const double scale = bh.norm();
    if (scale <= 0.0) throw SingularError("b form is zero");
    ah /= scale;
    bh /= scale;
    const double min_eig = hermitian_eigen(bh).eigenvalues().minCoeff();
    if (min_eig <= 1e-10) throw SingularError("b form is not positive definite");
    return QuadricRegion(std::move(ah), std::move(bh));
}

double QuadricRegion::eval_raw(const Vector& x) const {
    const double n2 = x.squaredNorm();
    if (n2 <= tol::zero_vector * tol::zero_vector) throw ZeroVectorError();
    const Complex v = x.dot((a_ - b_) * x);  // x^* (a-b) x
    return v.real() / n2;
}

double QuadricRegion::eval(const ProjPoint& p) const {
    if (p.ambient_dim() != ambient_dim()) throw DimensionMismatchError();
    return eval_raw(p.coords());
}

Membership QuadricRegion::membership(const ProjPoint& p, double boundary_tol) const {
    const double s = eval(p);
    if (s < -boundary_tol) return Membership::Inside;
    if (s > boundary_tol) return Membership::Outside;
    return Membership::Boundary;
}

QuadricRegion::Signature QuadricRegion::signature() const {
    const auto es = hermitian_eigen(a_ - b_);
    const auto& ev = es.eigenvalues();
    const double cut = tol::rank * std::max(1.0, std::abs(ev(0)) > std::abs(ev(ev.size() - 1))
                                                     ? std::abs(ev(0))
                                                     : std::abs(ev(ev.size() - 1)));
    Signature sig;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > cut) ++sig.positive;
        else if (ev(i) < -cut) ++sig.negative;
        else ++sig.zero;
    }
    return sig;
}

bool QuadricRegion::is_regular() const {
    const Signature s = signature();
    return s.positive >= 1 && s.negative >= 1;
}

QuadricRegion QuadricRegion::closure_complement() const {
    // {x*(a-b)x > 0} == {x* a' x < x* b' x} with a' = 2b - a, b' = b
    return from_forms(2.0 * b_ - a_, b_);
}

QuadricRegion QuadricRegion::from_forms_congruent(Matrix a, Matrix b) {
    Matrix ah = hermitize(a);
    Matrix bh = hermitize(b);
    const double scale = bh.norm();
    if (scale <= 0.0) throw SingularError("b form is zero");
    ah /= scale;
    bh /= scale;
    return QuadricRegion(std::move(ah), std::move(bh));
}

QuadricRegion region_image(const QuadricRegion& r, const ProjMap& g) {
    if (r.ambient_dim() != g.ambient_dim()) throw DimensionMismatchError();
    const Matrix ginv = g.lift().inverse();
    return QuadricRegion::from_forms_congruent(ginv.adjoint() * r.form_a() * ginv,
                                               ginv.adjoint() * r.form_b() * ginv);
}

namespace {

double min_eigenvalue(const Matrix& m) { return hermitian_eigen(m).eigenvalues().minCoeff(); }

// Attempts to produce a point with both difference forms <= tol from the
// lambda_min eigenspace at the maximizing combination weight.
std::optional<Vector> boundary_touch_witness(const Matrix& f1, const Matrix& f2, double mu) {
    const Matrix combo = mu * f1 + (1.0 - mu) * f2;
    const auto es = hermitian_eigen(combo);
    const auto& ev = es.eigenvalues();
    const double lmin = ev(0);
    // eigenspace of lambda_min within a small gap
    int d = 0;
    while (d < ev.size() && ev(d) <= lmin + 1e-8 * std::max(1.0, std::abs(lmin))) ++d;
    const Matrix e = es.eigenvectors().leftCols(d);
    const Matrix h = hermitize(e.adjoint() * (f1 - f2) * e);
    const auto hes = hermitian_eigen(h);
    const auto& hev = hes.eigenvalues();
    if (hev(0) <= 0.0 && hev(hev.size() - 1) >= 0.0) {
        // mix extremal eigenvectors of h until the form difference vanishes
        Vector up = hes.eigenvectors().col(hev.size() - 1);
        Vector dn = hes.eigenvectors().col(0);
        double lo = 0.0, hi = M_PI / 2.0;
        auto value = [&](double th) {
            const Vector y = std::cos(th) * up + std::sin(th) * dn;
            return (y.dot(h * y)).real();
        };
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (value(mid) >= 0.0) lo = mid;
            else hi = mid;
        }
        const double th = 0.5 * (lo + hi);
        const Vector y = std::cos(th) * up + std::sin(th) * dn;
        return Vector(e * y);
    }
    // definite h: the eigenvector of the dominating side may already work
    Vector cand = e.col(0);
    return cand;
}

}  // namespace

DisjointnessResult region_disjoint(const QuadricRegion& r1, const QuadricRegion& r2,
                                   int samples, std::uint64_t seed) {
    if (r1.ambient_dim() != r2.ambient_dim()) throw DimensionMismatchError();
    Matrix f1 = r1.difference_form();
    Matrix f2 = r2.difference_form();
    f1 /= f1.norm();
    f2 /= f2.norm();

    DisjointnessResult res;

    // 1. grid search for a positive definite convex combination
    for (int i = 0; i <= 100; ++i) {
        const double mu = static_cast<double>(i) / 100.0;
        const double lmin = min_eigenvalue(mu * f1 + (1.0 - mu) * f2);
        if (lmin > 1e-12) {
            res.kind = DisjointnessResult::Kind::Disjoint;
            res.mu = mu;
            res.min_eigenvalue = lmin;
            return res;
        }
    }

    const double closure_tol = tol::boundary;
    auto try_witness = [&](const Vector& x) -> bool {
        const double s1 = r1.eval_raw(x);
        const double s2 = r2.eval_raw(x);
        if (s1 <= closure_tol && s2 <= closure_tol) {
            res.kind = DisjointnessResult::Kind::Overlap;
            res.witness = canonicalize(x);
            res.witness_s1 = s1;
            res.witness_s2 = s2;
            return true;
        }
        return false;
    };

    // 2. sampled counterexample
    SphereSampler sampler(seed);
    const int dim = r1.ambient_dim() + 1;
    for (int i = 0; i < samples; ++i)
        if (try_witness(sampler.sphere_vector(dim))) return res;

    // 3. concave refinement of mu -> lambda_min and a boundary-touch probe
    double lo = 0.0, hi = 1.0;
    auto eig_at = [&](double mu) { return min_eigenvalue(mu * f1 + (1.0 - mu) * f2); };
    for (int it = 0; it < 120; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (eig_at(m1) < eig_at(m2)) lo = m1;
        else hi = m2;
    }
    const double mu_star = 0.5 * (lo + hi);
    const double lmax = eig_at(mu_star);
    if (lmax > 1e-12) {
        res.kind = DisjointnessResult::Kind::Disjoint;
        res.mu = mu_star;
        res.min_eigenvalue = lmax;
        return res;
    }
    if (auto w = boundary_touch_witness(f1, f2, mu_star))
        if (try_witness(*w)) return res;
    // also probe the endpoints (maximum attained at the boundary)
    for (double mu : {0.0, 1.0})
        if (auto w = boundary_touch_witness(f1, f2, mu))
            if (try_witness(*w)) return res;

    res.kind = DisjointnessResult::Kind::Unknown;
    res.mu = mu_star;
    res.min_eigenvalue = lmax;
    return res;
}

}  // namespace schottky
