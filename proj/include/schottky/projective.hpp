#pragma once

#include <optional>
#include <span>
#include <vector>

#include "schottky/linalg.hpp"

namespace schottky {

/// A point of P^n_C as a canonical homogeneous coordinate vector:
/// unit Euclidean norm, and the first coordinate of largest magnitude
/// is real and positive. This fixes the scalar ambiguity of the
/// quotient, so equal projective points have equal coordinates.
class ProjPoint {
public:
    /// Trusts `coords` to already be canonical (validated, not rewritten),
    /// so deserialization is bit-stable.
    static ProjPoint from_canonical(Vector coords);

    const Vector& coords() const { return coords_; }
    int ambient_dim() const { return static_cast<int>(coords_.size()) - 1; }

    friend class ProjMap;
    friend ProjPoint canonicalize(const Vector&);

private:
    explicit ProjPoint(Vector coords) : coords_(std::move(coords)) {}
    Vector coords_;
};

/// Canonical representative of [raw]. Throws ZeroVectorError when
/// ||raw|| <= 1e-14. canonicalize(alpha * raw) == canonicalize(raw)
/// for nonzero alpha (up to roundoff in the scalar itself).
ProjPoint canonicalize(const Vector& raw);

/// Fubini-Study distance d([x],[y]) = arccos(|<x,y>|) for unit
/// representatives; values in [0, pi/2].
double fs_distance(const ProjPoint& p, const ProjPoint& q);

/// A projective subspace of P^n_C, stored as an orthonormal basis of
/// its linear lift. proj_dim = columns - 1.
class ProjSubspace {
public:
    /// Orthonormalizes the column span of `lift_basis` (rank-revealing).
    static ProjSubspace from_span(const Matrix& lift_basis);
    /// Validates orthonormality within 1e-10; does not rewrite columns.
    static ProjSubspace from_orthonormal(Matrix basis);

    const Matrix& basis() const { return basis_; }
    int ambient_dim() const { return static_cast<int>(basis_.rows()) - 1; }
    int proj_dim() const { return static_cast<int>(basis_.cols()) - 1; }

    /// Orthogonal projection of a lift vector onto the subspace.
    Vector project(const Vector& x) const { return basis_ * (basis_.adjoint() * x); }

    /// sin of the principal angle between [x] and the subspace,
    /// i.e. the Euclidean residual of the unit lift.
    double sin_distance(const Vector& x) const;
    bool contains(const ProjPoint& p, double tol = tol::rank) const;

private:
    explicit ProjSubspace(Matrix basis) : basis_(std::move(basis)) {}
    Matrix basis_;
};

/// Fubini-Study distance from a point to a subspace (the infimum over
/// the subspace's points): arccos ||B^* p||.
double fs_distance(const ProjSubspace& s, const ProjPoint& p);

/// Smallest projective subspace containing all inputs.
ProjSubspace span_of(std::span<const ProjPoint> points);
ProjSubspace span_of(std::span<const ProjSubspace> subspaces);
ProjSubspace span_of(std::span<const ProjPoint> points, std::span<const ProjSubspace> subspaces);

/// Intersection of projective subspaces, from the kernel of the stacked
/// orthogonal-complement system; nullopt when the linear intersection
/// is {0}. Never empty when proj_dim(a) + proj_dim(b) >= n.
std::optional<ProjSubspace> intersect(const ProjSubspace& a, const ProjSubspace& b);

}  // namespace schottky
