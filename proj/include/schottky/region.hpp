#pragma once

#include <optional>
#include <string>

#include "schottky/linalg.hpp"
#include "schottky/projective.hpp"
#include "schottky/psl.hpp"
#include "schottky/sampling.hpp"

namespace schottky {

enum class Membership { Inside, Boundary, Outside };

/// An open region {[x] : x* a x < x* b x} of P^n_C, given by a
/// Hermitian pair with b positive definite. Closed under projective
/// images: the exact pushforward by g is the congruence by g^{-1}.
///
/// The pair is stored jointly scaled so ||b||_F = 1; membership only
/// depends on the difference form a - b, and two regions coincide when
/// their difference forms agree up to a positive factor.
class QuadricRegion {
public:
    static QuadricRegion from_forms(const Matrix& a, const Matrix& b);

    const Matrix& form_a() const { return a_; }
    const Matrix& form_b() const { return b_; }
    int ambient_dim() const { return static_cast<int>(a_.rows()) - 1; }

    Matrix difference_form() const { return a_ - b_; }

    /// x*(a-b)x for the unit representative (real; Hermitian form).
    double eval(const ProjPoint& p) const;
    double eval_raw(const Vector& x) const;

    Membership membership(const ProjPoint& p, double boundary_tol = tol::boundary) const;

    /// Signature of the difference form (counts with tolerance).
    struct Signature {
        int positive = 0, negative = 0, zero = 0;
    };
    Signature signature() const;

    /// The region is open with region == Int(closure) exactly when the
    /// difference form is indefinite.
    bool is_regular() const;

    /// Complement of the closure, {x*(a-b)x > 0}, as a quadric region.
    QuadricRegion closure_complement() const;

private:
    friend QuadricRegion region_image(const QuadricRegion&, const ProjMap&);
    QuadricRegion(Matrix a, Matrix b) : a_(std::move(a)), b_(std::move(b)) {}
    /// Hermitize + joint rescale only. Used for images, where positive
    /// definiteness of b is inherited from the congruence but its
    /// smallest eigenvalue may underflow for deep chains.
    static QuadricRegion from_forms_congruent(Matrix a, Matrix b);
    Matrix a_, b_;
};

/// Exact image g(region): the congruence pair (g^-* a g^-1, g^-* b g^-1),
/// re-Hermitized; membership(image, g x) == membership(region, x).
QuadricRegion region_image(const QuadricRegion& r, const ProjMap& g);

/// Outcome of the closure-disjointness test for two quadric regions.
///
/// Disjoint: some convex combination mu (a1-b1) + (1-mu)(a2-b2) of the
/// (normalized) difference forms is positive definite, so no point lies
/// in both closures. Overlap: an explicit point with both forms <= 0.
/// Unknown: neither a certificate nor a counterexample was found.
struct DisjointnessResult {
    enum class Kind { Disjoint, Overlap, Unknown } kind = Kind::Unknown;
    double mu = 0.0;           // certificate combination weight
    double min_eigenvalue = 0.0;
    std::optional<ProjPoint> witness;
    double witness_s1 = 0.0, witness_s2 = 0.0;
};

DisjointnessResult region_disjoint(const QuadricRegion& r1, const QuadricRegion& r2,
                                   int samples = 100000, std::uint64_t seed = 1);

}  // namespace schottky
