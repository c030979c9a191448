#include "fidest/dme.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fidest::dme {

namespace {

// Index i * d + j for register A index i and register B index j.
Matrix swap_operator(int d) {
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

Matrix partial_trace_b(const Matrix& m, int d) {
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) out(i, k) += m(i * d + j, k * d + j);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Matrix inf_swap_step(const Matrix& sigma, const Matrix& rho, double theta) {
  const int d = static_cast<int>(sigma.rows());
  const Matrix s = swap_operator(d);
  // S^2 = I, so e^{-i theta S} = cos(theta) I - i sin(theta) S.
  const Matrix u = std::cos(theta) * Matrix::Identity(d * d, d * d) - cplx(0.0, std::sin(theta)) * s;
  return partial_trace_b(u * kron(sigma, rho) * u.adjoint(), d);
}

states::DensityMatrix inf_swap_channel(const states::DensityMatrix& sigma, const states::DensityMatrix& rho, int k) {
  if (sigma.dim() != rho.dim()) throw std::invalid_argument("inf_swap_channel: dimension mismatch");
  if (k < 1) throw std::invalid_argument("inf_swap_channel: k must be positive");
  const double theta = 2.0 * std::numbers::pi / k;
  Matrix cur = sigma.matrix();
  for (int n = 0; n < k; ++n) cur = inf_swap_step(cur, rho.matrix(), theta);
  return states::DensityMatrix(hermitian_part(cur), 1e-10);
}

Matrix conjugation_target(const states::DensityMatrix& sigma, const states::DensityMatrix& rho) {
  const Matrix u = expm_hermitian(rho.matrix(), 2.0 * std::numbers::pi);
  return u * sigma.matrix() * u.adjoint();
}

SampleBudget dme_unitary_budget(double t, double delta, int qubits) {
  if (!(delta > 0.0)) throw std::invalid_argument("dme_unitary_budget: delta must be positive");
  SampleBudget b;
  b.copies_of_state = static_cast<std::int64_t>(std::ceil(kDmeConstant * t * t / delta));
  b.diamond_error = delta;
  b.gate_estimate = b.copies_of_state * kGatesPerSwapQubit * qubits;
  return b;
}

SampledEncoding samples_to_block_encoding(const states::DensityMatrix& rho, double delta, bool inject_noise,
                                          const std::string& label) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("samples_to_block_encoding: delta must lie in (0, 1/2)");
  const int d = rho.dim();
  const double log_term = std::log(1.0 / delta);
  SampledEncoding out;
  out.budget.copies_of_state = static_cast<std::int64_t>(std::ceil(kSamplingConstant * log_term * log_term / delta));
  out.budget.diamond_error = delta;
  out.budget.gate_estimate = out.budget.copies_of_state * kGatesPerSwapQubit * qsvt::qubits_for(d);
  Matrix logical = rho.matrix();
  if (inject_noise) logical = (1.0 - delta / 2) * logical + (delta / 2 / d) * Matrix::Identity(d, d);
  out.encoding = qsvt::oracle_encoding(logical, 4.0 / std::numbers::pi, 3, label, out.budget.gate_estimate);
  return out;
}

cplx sigma_offdiag_taylor(const states::DensityMatrix& sigma, const Vector& psi_i, const Vector& psi_j, double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("sigma_offdiag_taylor: t must lie in (0, 1)");
  const Matrix u = expm_hermitian(sigma.matrix(), t);
  const cplx overlap = psi_i.dot(psi_j);
  const cplx evolved = psi_i.dot(u * psi_j);
  return cplx(0.0, -1.0 / t) * (overlap - evolved);
}

nlohmann::json to_json(const SampleBudget& b) {
  return {{"copies_of_state", b.copies_of_state},
          {"diamond_error", b.diamond_error},
          {"gate_estimate", b.gate_estimate}};
}

}  // namespace fidest::dme
