#pragma once

#include <array>
#include <complex>
#include <vector>

#include "ceslab/errors.hpp"

namespace ceslab {

using Vector4 = std::array<double, 4>;
using Matrix4 = std::array<std::array<double, 4>, 4>;
using Eigenvalues4 = std::array<std::complex<double>, 4>;

/// Thrown when QR iteration exhausts its budget; keeps whatever eigenvalues
/// had already deflated.
class NoConvergence : public Error {
 public:
  NoConvergence(std::vector<std::complex<double>> partial, int iterations);
  const std::vector<std::complex<double>>& partial() const noexcept { return partial_; }
  int iterations() const noexcept { return iterations_; }

 private:
  std::vector<std::complex<double>> partial_;
  int iterations_;
};

/// All four eigenvalues of a real matrix, sorted by ascending real part
/// (ties by ascending imaginary part).
///
/// Householder reduction to upper Hessenberg form, then Francis double-shift
/// QR. A subdiagonal entry is treated as zero once it falls below
/// 1e-12 ||A|| or below machine precision relative to its diagonal
/// neighbours; trailing 1x1 and 2x2 blocks are solved in closed form.
/// Gives up after 100 n iterations with NoConvergence.
Eigenvalues4 eigen4(const Matrix4& a);

/// Same as eigen4 but also reports the iteration count.
Eigenvalues4 eigen4(const Matrix4& a, int& iterations);

/// Sorts by ascending real part, ties by imaginary part.
void sort_eigenvalues(Eigenvalues4& ev);

/// |det(A - lambda I)|.
double char_poly_residual(const Matrix4& a, std::complex<double> lambda);

double determinant(const Matrix4& a);
double trace(const Matrix4& a);
/// Max-abs-row-sum norm.
double norm_inf(const Matrix4& a);

/// Unit vector x with (A - lambda I) x ~ 0 for a real eigenvalue lambda,
/// by inverse iteration. Sign normalised so the largest component is positive.
Vector4 real_eigenvector(const Matrix4& a, double lambda);

}  // namespace ceslab
