#include "schottky/sampling.hpp"

#include <Eigen/QR>
#include <cmath>

namespace schottky {

double SphereSampler::uniform() {
    // 53-bit mantissa from the top bits of the generator
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double SphereSampler::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Complex SphereSampler::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im);
}

Vector SphereSampler::sphere_vector(int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = complex_normal();
    const double n = v.norm();
    if (n <= tol::zero_vector) return sphere_vector(dim);
    return v / n;
}

ProjPoint SphereSampler::point(int ambient_dim) {
    return canonicalize(sphere_vector(ambient_dim + 1));
}

Matrix SphereSampler::gaussian_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
}

Matrix SphereSampler::unitary(int dim) {
    const Matrix g = gaussian_matrix(dim, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    // fix column phases so the decomposition is unique-ish
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0) q.col(j) *= d / a;
    }
    return q;
}

ProjSubspace SphereSampler::subspace(int ambient_dim, int proj_dim) {
    const Matrix g = gaussian_matrix(ambient_dim + 1, proj_dim + 1);
    return ProjSubspace::from_span(g);
}

}  // namespace schottky
