#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace fidest {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Eigenvalues below this (relative to the largest magnitude) are treated as zero
// when taking square roots. Without it, roundoff of order 1e-17 turns into 3e-9
// after the square root.
inline constexpr double kZeroEigTol = 1e-13;

struct HermitianEig {
  RealVector values;  // descending
  Matrix vectors;     // columns match values
};

HermitianEig eig_hermitian(const Matrix& h);

double max_asymmetry(const Matrix& m);
Matrix hermitian_part(const Matrix& m);

// f applied to the eigenvalues of a Hermitian matrix.
Matrix spectral_apply(const Matrix& h, const std::function<double(double)>& f);

Matrix sqrt_psd(const Matrix& h);
double trace_sqrt_psd(const Matrix& h);

RealVector singular_values(const Matrix& m);
double trace_norm(const Matrix& m);
double op_norm(const Matrix& m);

// e^{-i t h} for Hermitian h.
Matrix expm_hermitian(const Matrix& h, double t);

// Unitary whose first column is the given unit vector.
Matrix unitary_with_first_column(const Vector& v);

}  // namespace fidest
