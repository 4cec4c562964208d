#pragma once

#include <optional>
#include <vector>

#include "schottky/linalg.hpp"
#include "schottky/projective.hpp"

namespace schottky {

/// An element of PSL(n+1, C), stored as a lifting matrix with
/// determinant normalized to 1 via the principal (n+1)-th root.
///
/// The modulus of the removed scalar is kept as `input_scale` so that
/// eigenvalue-modulus queries (level_set) can be phrased against the
/// lifting the caller actually supplied; projective semantics are
/// scale-free and ignore it.
class ProjMap {
public:
    static ProjMap from_lift(const Matrix& lift);
    static ProjMap identity(int ambient_dim);

    const Matrix& lift() const { return lift_; }
    int ambient_dim() const { return static_cast<int>(lift_.rows()) - 1; }
    double input_scale() const { return input_scale_; }

    ProjMap inverse() const;
    ProjMap operator*(const ProjMap& rhs) const;

    /// gamma([w]) = [lift w], canonicalized.
    ProjPoint apply(const ProjPoint& p) const;
    /// Image subspace, basis re-orthonormalized.
    ProjSubspace apply(const ProjSubspace& s) const;

    /// Equality as projective maps: lifts proportional within tol.
    bool proj_equal(const ProjMap& rhs, double rel_tol = 1e-9) const;

private:
    ProjMap(Matrix lift, double input_scale) : lift_(std::move(lift)), input_scale_(input_scale) {}
    Matrix lift_;
    double input_scale_;
};

/// One modulus class of a lift: the spectral subspace V of all
/// eigenvalues with |lambda| in the class, an orthonormal basis of V,
/// and the restriction divided by the class modulus (unit-modulus
/// spectrum). The restriction is expressed in `basis` coordinates.
struct ModulusPart {
    double modulus = 0.0;
    Matrix basis;   // (n+1) x d, orthonormal columns spanning V
    Matrix gamma;   // d x d, upper triangular, eigenvalues of modulus ~1
};

/// Splitting of a lift by eigenvalue modulus, parts ordered by
/// increasing modulus; the direct sum of modulus * gamma over the parts
/// reassembles the lift.
struct ModulusDecomposition {
    std::vector<ModulusPart> parts;
    int ambient_dim = 0;

    int classes() const { return static_cast<int>(parts.size()); }
    /// B = [basis_1 ... basis_k], an (n+1) x (n+1) change of basis.
    Matrix joint_basis() const;
    /// B diag(r_i gamma_i) B^{-1}; should match the lift to ~1e-8.
    Matrix reassemble() const;
    /// Coordinates of x split by part: solves joint_basis * c = x.
    std::vector<Vector> components(const Vector& x) const;
};

/// Splits by eigenvalue modulus. Moduli are clustered greedily (sorted,
/// cut where the consecutive ratio exceeds 1 + 1e-6); IllConditioned
/// when some member deviates from its cluster's geometric-mean modulus
/// by more than the unit-modulus tolerance (the data is then neither
/// separated nor coincident at the documented gaps).
ModulusDecomposition modulus_decomposition(const ProjMap& g);

/// Orthonormal basis of the span of all proper (not generalized)
/// eigenvectors of t. Dimension = sum of geometric multiplicities.
Matrix eigenvector_span(const Matrix& t);

/// L_r(gamma): projectivized span of eigenvectors whose eigenvalue
/// modulus equals r within the cluster tolerance; nullopt when r is not
/// an eigenvalue modulus. `r` is measured against the caller's input
/// lifting (see ProjMap::input_scale).
std::optional<ProjSubspace> level_set(const ProjMap& g, double r);

/// True when g^m is projectively the identity for some m <= 360
/// (within tolerance 1e-9). Writes the order to *order when given.
bool finite_projective_order(const ProjMap& g, int* order = nullptr);

/// L(gamma) as the list {L_r : r in |Eva(gamma)|}, one nonempty level
/// set per modulus class. Throws FiniteOrderError for torsion of order
/// <= 360, since the limit set is defined for infinite order.
std::vector<ProjSubspace> limit_set(const ProjMap& g);

}  // namespace schottky
