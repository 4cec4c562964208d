#include "schottky/projective.hpp"

#include <algorithm>
#include <cmath>

#include "schottky/errors.hpp"

namespace schottky {

ProjPoint canonicalize(const Vector& raw) {
    const double n0 = raw.norm();
    if (n0 <= tol::zero_vector) throw ZeroVectorError();
    Vector v = raw / n0;
    Eigen::Index pivot = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > best) {
            best = a;
            pivot = i;
        }
    }
    const Complex z = v(pivot);
    const double zmag = std::abs(z);
    // divide by the unit phase z/|z|; pivot becomes real positive
    v *= std::conj(z) / zmag;
    v(pivot) = Complex(zmag, 0.0);
    return ProjPoint(std::move(v));
}

ProjPoint ProjPoint::from_canonical(Vector coords) {
    if (coords.size() < 1) throw ZeroVectorError("empty coordinate vector");
    if (std::abs(coords.norm() - 1.0) > 1e-12)
        throw ParseError("point coordinates are not unit-normalized");
    Eigen::Index pivot = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < coords.size(); ++i) {
        const double a = std::abs(coords(i));
        if (a > best) {
            best = a;
            pivot = i;
        }
    }
    if (coords(pivot).real() <= 0.0 || std::abs(coords(pivot).imag()) > 1e-12 * best)
        throw ParseError("point coordinates are not phase-canonical");
    return ProjPoint(std::move(coords));
}

double fs_distance(const ProjPoint& p, const ProjPoint& q) {
    if (p.ambient_dim() != q.ambient_dim()) throw DimensionMismatchError();
    const double c = std::abs(p.coords().dot(q.coords()));
    return std::acos(std::clamp(c, 0.0, 1.0));
}

ProjSubspace ProjSubspace::from_span(const Matrix& lift_basis) {
    Matrix b = orthonormal_range(lift_basis);
    if (b.cols() == 0) throw ZeroVectorError("span of the inputs is the zero space");
    return ProjSubspace(std::move(b));
}

ProjSubspace ProjSubspace::from_orthonormal(Matrix basis) {
    if (basis.cols() == 0 || basis.rows() < basis.cols())
        throw ParseError("subspace basis has bad shape");
    const Matrix gram = basis.adjoint() * basis;
    if ((gram - Matrix::Identity(basis.cols(), basis.cols())).norm() > 1e-10)
        throw ParseError("subspace basis is not orthonormal");
    return ProjSubspace(std::move(basis));
}

double ProjSubspace::sin_distance(const Vector& x) const {
    const double n = x.norm();
    if (n <= tol::zero_vector) throw ZeroVectorError();
    const double c2 = (basis_.adjoint() * (x / n)).squaredNorm();
    return std::sqrt(std::max(0.0, 1.0 - std::min(1.0, c2)));
}

bool ProjSubspace::contains(const ProjPoint& p, double tol_) const {
    return sin_distance(p.coords()) <= tol_;
}

double fs_distance(const ProjSubspace& s, const ProjPoint& p) {
    if (s.ambient_dim() != p.ambient_dim()) throw DimensionMismatchError();
    const double c = (s.basis().adjoint() * p.coords()).norm();
    return std::acos(std::clamp(c, 0.0, 1.0));
}

namespace {

ProjSubspace span_of_columns(const Matrix& cols) {
    if (cols.cols() == 0) throw EmptyInputError();
    return ProjSubspace::from_span(cols);
}

}  // namespace

ProjSubspace span_of(std::span<const ProjPoint> points) {
    return span_of(points, std::span<const ProjSubspace>{});
}

ProjSubspace span_of(std::span<const ProjSubspace> subspaces) {
    return span_of(std::span<const ProjPoint>{}, subspaces);
}

ProjSubspace span_of(std::span<const ProjPoint> points, std::span<const ProjSubspace> subspaces) {
    if (points.empty() && subspaces.empty()) throw EmptyInputError();
    Eigen::Index rows = points.empty() ? subspaces.front().basis().rows() : points.front().coords().size();
    Eigen::Index total = 0;
    for (const auto& p : points) {
        if (p.coords().size() != rows) throw DimensionMismatchError();
        total += 1;
    }
    for (const auto& s : subspaces) {
        if (s.basis().rows() != rows) throw DimensionMismatchError();
        total += s.basis().cols();
    }
    Matrix stacked(rows, total);
    Eigen::Index c = 0;
    for (const auto& p : points) stacked.col(c++) = p.coords();
    for (const auto& s : subspaces) {
        stacked.middleCols(c, s.basis().cols()) = s.basis();
        c += s.basis().cols();
    }
    return span_of_columns(stacked);
}

std::optional<ProjSubspace> intersect(const ProjSubspace& a, const ProjSubspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatchError();
    const Eigen::Index n = a.basis().rows();
    if (a.proj_dim() == a.ambient_dim()) return b;
    if (b.proj_dim() == b.ambient_dim()) return a;
    const Matrix pa = Matrix::Identity(n, n) - a.basis() * a.basis().adjoint();
    const Matrix pb = Matrix::Identity(n, n) - b.basis() * b.basis().adjoint();
    Matrix stacked(2 * n, n);
    stacked.topRows(n) = pa;
    stacked.bottomRows(n) = pb;
    Matrix k = kernel_basis(stacked);
    if (k.cols() == 0) return std::nullopt;
    return ProjSubspace::from_orthonormal(std::move(k));
}

}  // namespace schottky
