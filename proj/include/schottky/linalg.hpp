#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace schottky {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Documented numeric thresholds shared across modules.
namespace tol {
inline constexpr double zero_vector = 1e-14;     // below this norm a vector counts as zero
inline constexpr double rank = 1e-10;            // singular values below rank * sigma_max are zero
inline constexpr double invertible = 1e-12;      // sigma_min / sigma_max above this counts as invertible
inline constexpr double cluster_gap = 1e-6;      // relative gap separating eigenvalue-modulus clusters
inline constexpr double unit_modulus = 1e-8;     // |.|-distance from 1 for unit-spectrum factors
inline constexpr double boundary = 1e-10;        // quadric sign evaluations within this count as boundary
inline constexpr double proj_identity = 1e-9;    // projective-identity detection for finite order
inline constexpr double component = 1e-10;       // relative threshold for a nonzero component
inline constexpr int finite_order_cap = 360;     // largest exponent probed for projective torsion
}  // namespace tol

Matrix hermitize(const Matrix& m);

/// Rank with singular values below rel_tol * sigma_max treated as zero.
int numeric_rank(const Matrix& m, double rel_tol = tol::rank);

/// Orthonormal basis of the column space (n x rank).
Matrix orthonormal_range(const Matrix& m, double rel_tol = tol::rank);

/// Orthonormal basis of the null space (n x nullity).
Matrix kernel_basis(const Matrix& m, double rel_tol = tol::rank);

/// sigma_min / sigma_max; zero for an empty or zero matrix.
double inverse_condition(const Matrix& m);

struct SchurDecomp {
    Matrix u;  // unitary
    Matrix t;  // upper triangular, a = u t u^*
};

SchurDecomp complex_schur(const Matrix& a);

/// Reorders a complex Schur form so the eigenvalues at `positions`
/// (indices into the current diagonal) occupy the leading block, using
/// unitary adjacent swaps. Relative order within each group is kept.
void schur_move_to_front(SchurDecomp& s, const std::vector<int>& positions);

/// True when b == c * a entrywise for a single complex scalar c, within
/// rel_tol * max norm. Writes the scalar to *scale when given.
bool proportional(const Matrix& a, const Matrix& b, double rel_tol, Complex* scale = nullptr);

/// Greedy clustering of moduli: sort ascending, cut where the ratio of
/// consecutive values exceeds 1 + gap. Returns per-cluster index lists
/// (indices into the input array), clusters ordered by increasing modulus.
std::vector<std::vector<int>> cluster_moduli(const Eigen::VectorXd& moduli, double gap = tol::cluster_gap);

/// Groups complex values that agree within atol; returns index lists.
std::vector<std::vector<int>> cluster_values(const Vector& values, double atol);

/// Iterates w <- m w while keeping w at unit norm; log_norm accumulates
/// the true magnitude, so m^k w0 = exp(log_norm) * w.
struct PowerIterator {
    Matrix m;
    Vector w;
    double log_norm = 0.0;

    PowerIterator(Matrix m_, const Vector& w0);
    void step();
};

}  // namespace schottky
