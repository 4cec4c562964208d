#include "schottky/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "schottky/errors.hpp"

namespace schottky {

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

namespace {

Eigen::JacobiSVD<Matrix> full_svd(const Matrix& m) {
    return Eigen::JacobiSVD<Matrix>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

}  // namespace

int numeric_rank(const Matrix& m, double rel_tol) {
    if (m.size() == 0) return 0;
    auto svd = full_svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    const double cut = rel_tol * sv(0);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++r;
    return r;
}

Matrix orthonormal_range(const Matrix& m, double rel_tol) {
    auto svd = full_svd(m);
    const auto& sv = svd.singularValues();
    int r = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
        const double cut = rel_tol * sv(0);
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > cut) ++r;
    }
    return svd.matrixU().leftCols(r);
}

Matrix kernel_basis(const Matrix& m, double rel_tol) {
    auto svd = full_svd(m);
    const auto& sv = svd.singularValues();
    const Eigen::Index n = m.cols();
    Eigen::Index r = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
        const double cut = rel_tol * sv(0);
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > cut) ++r;
    }
    return svd.matrixV().rightCols(n - r);
}

double inverse_condition(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    auto sv = Eigen::JacobiSVD<Matrix>(m).singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0.0;
    return sv(sv.size() - 1) / sv(0);
}

SchurDecomp complex_schur(const Matrix& a) {
    Eigen::ComplexSchur<Matrix> schur(a, /*computeU=*/true);
    if (schur.info() != Eigen::Success) throw SingularError("Schur decomposition failed to converge");
    return SchurDecomp{schur.matrixU(), schur.matrixT()};
}

namespace {

// Unitary similarity exchanging the diagonal entries at i, i+1 of an
// upper triangular t. The first column of the 2x2 rotation is the
// (b, c - a) eigenvector of [[a, b], [0, c]] for eigenvalue c.
void swap_adjacent(SchurDecomp& s, Eigen::Index i) {
    Matrix& t = s.t;
    Matrix& u = s.u;
    const Complex a = t(i, i), b = t(i, i + 1), c = t(i + 1, i + 1);
    Complex g00, g01, g10, g11;
    const double scale = std::abs(a) + std::abs(b) + std::abs(c);
    const double vn = std::sqrt(std::norm(b) + std::norm(c - a));
    if (vn <= 1e-15 * scale) {
        // numerically equal eigenvalues with negligible coupling: a plain
        // transposition keeps the triangular form
        g00 = 0.0; g01 = 1.0; g10 = 1.0; g11 = 0.0;
    } else {
        g00 = b / vn;
        g10 = (c - a) / vn;
        g01 = -std::conj(g10);
        g11 = std::conj(g00);
    }
    const Eigen::Index n = t.rows();
    // rows i, i+1 <- G^* [rows]
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex r0 = t(i, j), r1 = t(i + 1, j);
        t(i, j) = std::conj(g00) * r0 + std::conj(g10) * r1;
        t(i + 1, j) = std::conj(g01) * r0 + std::conj(g11) * r1;
    }
    // cols i, i+1 <- [cols] G
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex c0 = t(j, i), c1 = t(j, i + 1);
        t(j, i) = c0 * g00 + c1 * g10;
        t(j, i + 1) = c0 * g01 + c1 * g11;
        const Complex u0 = u(j, i), u1 = u(j, i + 1);
        u(j, i) = u0 * g00 + u1 * g10;
        u(j, i + 1) = u0 * g01 + u1 * g11;
    }
    t(i + 1, i) = 0.0;
}

}  // namespace

void schur_move_to_front(SchurDecomp& s, const std::vector<int>& positions) {
    const Eigen::Index n = s.t.rows();
    std::vector<char> sel(static_cast<size_t>(n), 0);
    for (int p : positions) sel[static_cast<size_t>(p)] = 1;
    Eigen::Index dst = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!sel[static_cast<size_t>(i)]) continue;
        for (Eigen::Index j = i; j > dst; --j) {
            swap_adjacent(s, j - 1);
            std::swap(sel[static_cast<size_t>(j - 1)], sel[static_cast<size_t>(j)]);
        }
        ++dst;
    }
}

bool proportional(const Matrix& a, const Matrix& b, double rel_tol, Complex* scale) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    Eigen::Index pr = 0, pc = 0;
    double amax = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (std::abs(a(i, j)) > amax) {
                amax = std::abs(a(i, j));
                pr = i;
                pc = j;
            }
    const double bn = b.norm();
    if (amax == 0.0) {
        if (scale) *scale = 0.0;
        return bn == 0.0;
    }
    const Complex c = b(pr, pc) / a(pr, pc);
    const double err = (a * c - b).norm();
    if (err > rel_tol * std::max(1.0, std::max((a * c).norm(), bn))) return false;
    if (scale) *scale = c;
    return true;
}

std::vector<std::vector<int>> cluster_moduli(const Eigen::VectorXd& moduli, double gap) {
    std::vector<int> order(static_cast<size_t>(moduli.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return moduli(i) < moduli(j); });
    std::vector<std::vector<int>> clusters;
    for (int idx : order) {
        if (!clusters.empty()) {
            const double prev = moduli(clusters.back().back());
            if (prev > 0.0 && moduli(idx) / prev <= 1.0 + gap) {
                clusters.back().push_back(idx);
                continue;
            }
        }
        clusters.push_back({idx});
    }
    return clusters;
}

std::vector<std::vector<int>> cluster_values(const Vector& values, double atol) {
    std::vector<std::vector<int>> clusters;
    for (int i = 0; i < values.size(); ++i) {
        bool placed = false;
        for (auto& cl : clusters) {
            if (std::abs(values(cl.front()) - values(i)) <= atol) {
                cl.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({i});
    }
    return clusters;
}

PowerIterator::PowerIterator(Matrix m_, const Vector& w0) : m(std::move(m_)), w(w0) {
    const double n0 = w.norm();
    if (n0 <= 0.0) throw ZeroVectorError();
    w /= n0;
    log_norm = std::log(n0);
}

void PowerIterator::step() {
    w = m * w;
    const double n = w.norm();
    if (n <= 0.0) {
        log_norm = -std::numeric_limits<double>::infinity();
        return;
    }
    w /= n;
    log_norm += std::log(n);
}

}  // namespace schottky
