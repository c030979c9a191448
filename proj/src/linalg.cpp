#include "fidest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fidest {

HermitianEig eig_hermitian(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eig_hermitian: matrix is not square");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  const Eigen::Index n = h.rows();
  HermitianEig out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

double max_asymmetry(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

Matrix spectral_apply(const Matrix& h, const std::function<double(double)>& f) {
  const HermitianEig e = eig_hermitian(h);
  RealVector fv(e.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(e.values(i));
  return e.vectors * fv.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

namespace {

double zero_cutoff(const RealVector& values) {
  double scale = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) scale = std::max(scale, std::abs(values(i)));
  return kZeroEigTol * std::max(1.0, scale);
}

}  // namespace

Matrix sqrt_psd(const Matrix& h) {
  const HermitianEig e = eig_hermitian(h);
  const double cut = zero_cutoff(e.values);
  RealVector s(e.values.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = e.values(i) > cut ? std::sqrt(e.values(i)) : 0.0;
  return e.vectors * s.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

double trace_sqrt_psd(const Matrix& h) {
  const HermitianEig e = eig_hermitian(hermitian_part(h));
  const double cut = zero_cutoff(e.values);
  double total = 0.0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (e.values(i) > cut) total += std::sqrt(e.values(i));
  return total;
}

RealVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RealVector();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

double trace_norm(const Matrix& m) { return singular_values(m).sum(); }

double op_norm(const Matrix& m) {
  const RealVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

Matrix expm_hermitian(const Matrix& h, double t) {
  const HermitianEig e = eig_hermitian(hermitian_part(h));
  Vector phases(e.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(cplx(0.0, -t * e.values(i)));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

Matrix unitary_with_first_column(const Vector& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw std::invalid_argument("unitary_with_first_column: empty vector");
  const double nv = v.norm();
  if (std::abs(nv - 1.0) > 1e-9) throw std::invalid_argument("unitary_with_first_column: vector is not normalized");
  // Householder reflection taking phase*e_0 to v; the phase is folded back in below.
  Vector e0 = Vector::Zero(n);
  e0(0) = 1.0;
  const cplx phase = std::abs(v(0)) > 0 ? v(0) / std::abs(v(0)) : cplx(1.0, 0.0);
  Vector w = phase * e0 - v;
  const double wn = w.norm();
  Matrix u = Matrix::Identity(n, n);
  if (wn > 1e-15) {
    w /= wn;
    u -= 2.0 * w * w.adjoint();
  }
  u *= phase;
  return u;
}

}  // namespace fidest
