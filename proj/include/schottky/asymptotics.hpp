#pragma once

#include <vector>

#include "schottky/linalg.hpp"
#include "schottky/projective.hpp"
#include "schottky/psl.hpp"

namespace schottky {

/// Binomial coefficient C(m, l) as a double, computed multiplicatively;
/// exact for small arguments, overflow-free for m up to ~1e6 with small l.
/// Returns 0 for l > m.
double binom(long long m, long long l);
double log_binom(long long m, long long l);

/// Closed-form m-th power of a single size x size Jordan block with
/// eigenvalue lam: entry (i, j) = C(m, j-i) lam^(m-(j-i)).
Matrix jordan_block_power(Complex lam, int size, long long m);

struct KIndexReport {
    int k = 0;                // the binomial-normalization index
    Vector witness_limit;     // late normalized iterate, projected info in residual
    double residual = 0.0;    // Euclidean distance of the unit witness to the eigenvector span
};

/// The unique k such that C(m, k)^{-1} t^m v stays bounded and bounded
/// away from zero along a subsequence, with cluster points in the
/// eigenvector span. Requires a unit-modulus spectrum (within 1e-8) and
/// v != 0. The index is read off the generalized-eigenspace filtration:
/// for each eigenvalue component w of v, the smallest j with
/// (t - lambda)^j w = 0, maximized over components, minus one.
KIndexReport k_index(const Vector& v, const Matrix& t, int witness_steps = 2000);

struct DecayRow {
    long long m = 0;
    double norm = 0.0;
};

struct DecayTable {
    std::vector<DecayRow> rows;
    int burn_in_index = 0;    // argmax of the norm column; decay is monotone past it
    double final_norm = 0.0;
};

/// Tabulates ||lam^{-m} C(m, l) t^m v|| for m = 1..m_max, in log domain
/// so moduli far from 1 cannot overflow. Requires the spectral radius of
/// t to be below |lam| (margin 1e-10).
DecayTable verify_decay(const Matrix& t, Complex lam, long long l, const Vector& v, long long m_max);

struct OrbitRow {
    long long m = 0;
    double norm = 0.0;              // of C(m,k)^{-1} r_j0^{-m} lift^m v
    double distance_to_span = 0.0;  // sin of the angle to [Eve(gamma_j0)]
};

struct OrbitDiagnostics {
    int j0 = 0;                     // 1-based dominant modulus class of the start point
    int k = 0;                      // binomial index of the dominant component
    std::vector<OrbitRow> rows;
    std::vector<ProjPoint> points;  // projective orbit
    ProjSubspace limit_span;        // [Eve(gamma_j0)], i.e. L_{r_j0}
    double last_distance = 0.0;

    OrbitDiagnostics(ProjSubspace span) : limit_span(std::move(span)) {}
};

/// Iterates g on p, identifying the dominant modulus class j0 (largest
/// index with a nonzero component) and reporting the binomial-normalized
/// lift norms together with the distance to the predicted limit span.
OrbitDiagnostics normalized_orbit(const ProjMap& g, const ProjPoint& p, long long m_max);

}  // namespace schottky
