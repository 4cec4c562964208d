#pragma once

#include <cstdint>
#include <random>

#include "schottky/linalg.hpp"
#include "schottky/projective.hpp"

namespace schottky {

/// Deterministic sampler for quasi-uniform points on the unit sphere of
/// C^(n+1) and related random objects. Gaussian normal variates are
/// generated by a hand-rolled Box-Muller transform so a seed pins the
/// exact stream independent of the standard library.
class SphereSampler {
public:
    explicit SphereSampler(std::uint64_t seed) : rng_(seed) {}

    double normal();
    double uniform();                       // [0, 1)
    Complex complex_normal();
    Vector sphere_vector(int dim);          // unit vector in C^dim
    ProjPoint point(int ambient_dim);       // uniform point of P^n
    Matrix gaussian_matrix(int rows, int cols);
    Matrix unitary(int dim);                // Haar-ish via QR of a Gaussian
    ProjSubspace subspace(int ambient_dim, int proj_dim);

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace schottky
