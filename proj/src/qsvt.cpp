#include "fidest/qsvt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fidest::qsvt {

namespace {

constexpr double kNormSlack = 1e-9;

// Singular values of a block are allowed to exceed 1 by roundoff only.
void require_contraction(const Matrix& x, const char* who) {
  if (op_norm(x) > 1.0 + kNormSlack) throw std::domain_error(std::string(who) + ": block norm exceeds 1");
}

}  // namespace

// ---------------------------------------------------------------- costs

std::int64_t CostRecord::uses_of(const std::string& label) const {
  auto it = uses.find(label);
  return it == uses.end() ? 0 : it->second;
}

std::int64_t CostRecord::total_uses() const {
  std::int64_t total = 0;
  for (const auto& [label, n] : uses) total += n;
  return total;
}

CostRecord& CostRecord::operator+=(const CostRecord& other) {
  for (const auto& [label, n] : other.uses) uses[label] += n;
  gates += other.gates;
  return *this;
}

CostRecord CostRecord::times(std::int64_t factor) const {
  CostRecord out = *this;
  for (auto& [label, n] : out.uses) n *= factor;
  out.gates *= factor;
  return out;
}

nlohmann::json to_json(const CostRecord& c) {
  nlohmann::json uses = nlohmann::json::object();
  for (const auto& [label, n] : c.uses) uses[label] = n;
  return {{"uses_of_source_unitaries", uses}, {"two_qubit_gate_estimate", c.gates}};
}

int qubits_for(int dim) {
  int q = 0;
  while ((1 << q) < dim) ++q;
  return q;
}

// ---------------------------------------------------------------- constructors

BlockEncoding oracle_encoding(const Matrix& a, double alpha, int ancillas, const std::string& label,
                              std::int64_t gates) {
  if (!(alpha > 0.0)) throw std::invalid_argument("oracle_encoding: alpha must be positive");
  if (op_norm(a) > alpha * (1.0 + kNormSlack)) throw std::invalid_argument("oracle_encoding: ||A|| exceeds alpha");
  BlockEncoding b;
  b.logical = a;
  b.alpha = alpha;
  b.ancillas = ancillas;
  b.cost.uses[label] = 1;
  b.cost.gates = gates;
  return b;
}

BlockEncoding identity_encoding(int dim) {
  BlockEncoding b;
  b.logical = Matrix::Identity(dim, dim);
  return b;
}

BlockEncoding block_encode_density(const states::Purification& p, const std::string& label) {
  BlockEncoding b;
  b.logical = partial_trace_a(p);
  b.alpha = 1.0;
  b.ancillas = qubits_for(p.dim_a) + qubits_for(p.dim_b);
  b.eps = 0.0;
  b.cost.uses[label] = 1;
  b.cost.gates = 3 * qubits_for(p.dim_b);  // the register SWAP
  return b;
}

UnitaryDilation materialize_density_encoding(const states::Purification& p) {
  const int da = p.dim_a, db = p.dim_b, ds = p.dim_b;
  const int n = da * db * ds;
  const Matrix g = unitary_with_first_column(p.vector.normalized());
  // Index (a*db + b)*ds + s.
  Matrix g_full = Matrix::Zero(n, n);
  for (int s = 0; s < ds; ++s)
    for (int r = 0; r < da * db; ++r)
      for (int c = 0; c < da * db; ++c) g_full(r * ds + s, c * ds + s) = g(r, c);
  Matrix swap = Matrix::Zero(n, n);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int s = 0; s < ds; ++s) swap((a * db + s) * ds + b, (a * db + b) * ds + s) = 1.0;
  UnitaryDilation out;
  out.unitary = g_full.adjoint() * swap * g_full;
  out.block_rows = ds;
  out.block_cols = ds;
  return out;
}

// ---------------------------------------------------------------- arithmetic

BlockEncoding block_product(const BlockEncoding& u, const BlockEncoding& v) {
  if (u.logical.cols() != v.logical.rows()) throw std::invalid_argument("block_product: dimension mismatch");
  BlockEncoding out;
  out.logical = u.logical * v.logical;
  out.alpha = u.alpha * v.alpha;
  out.ancillas = u.ancillas + v.ancillas;
  out.eps = u.alpha * v.eps + v.alpha * u.eps;
  out.cost = u.cost;
  out.cost += v.cost;
  return out;
}

BlockEncoding block_adjoint(const BlockEncoding& u) {
  BlockEncoding out = u;
  out.logical = u.logical.adjoint();
  return out;
}

BlockEncoding rescale(const BlockEncoding& u, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("rescale: factor must be positive");
  BlockEncoding out = u;
  out.logical *= c;
  out.alpha *= c;
  out.eps *= c;
  return out;
}

std::int64_t amplification_degree(double factor, double eps) {
  if (factor <= 1.0) return 1;
  return 2 * static_cast<std::int64_t>(std::ceil(factor * std::log(2.0 / eps))) + 1;
}

BlockEncoding amplify(const BlockEncoding& u, double factor, double eps) {
  if (!(factor > 0.0)) throw std::invalid_argument("amplify: factor must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("amplify: eps must lie in (0, 1)");
  const double block_norm = op_norm(u.block());
  if (block_norm * factor > 1.0 + kNormSlack) throw std::domain_error("amplify: amplified block would exceed norm 1");
  const std::int64_t deg = amplification_degree(factor, eps);
  BlockEncoding out;
  out.logical = u.logical;
  out.alpha = u.alpha / factor;
  out.ancillas = u.ancillas + (factor > 1.0 ? 1 : 0);
  out.eps = factor > 1.0 ? out.alpha * (svt_eps_bound(static_cast<int>(deg), u.eps, u.alpha, block_norm) + eps) : u.eps;
  out.cost = u.cost.times(deg);
  if (factor > 1.0) out.cost.gates += kGatesPerAncillaStep * (u.ancillas + 1) * deg;
  return out;
}

// ---------------------------------------------------------------- SVT

Matrix svt_matrix(const poly::ApproxPolynomial& p, const Matrix& a) {
  if (p.parity() == poly::Parity::none) throw std::invalid_argument("svt: polynomial needs definite parity");
  require_contraction(a, "svt");
  auto pv = [&p](double s) { return eval_poly(p, std::min(s, 1.0)); };
  if (p.parity() == poly::Parity::odd) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    RealVector ps(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) ps(i) = pv(s(i));
    return svd.matrixU() * ps.asDiagonal() * svd.matrixV().adjoint();
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index n = a.cols();
  RealVector ps(n);
  for (Eigen::Index i = 0; i < n; ++i) ps(i) = pv(i < s.size() ? s(i) : 0.0);
  return svd.matrixV() * ps.asDiagonal() * svd.matrixV().adjoint();
}

double svt_eps_bound(int degree, double eps, double alpha, double block_norm) {
  if (eps <= 0.0) return 0.0;
  const double e = eps / alpha;
  double bound = 4.0 * degree * std::sqrt(e);
  const double m = block_norm + e / 2;
  if (m < 1.0 && e + m * m <= 1.0) bound = std::min(bound, degree * std::sqrt(2.0 / (1.0 - m * m)) * e);
  return bound;
}

BlockEncoding apply_svt(const poly::ApproxPolynomial& p, const BlockEncoding& u) {
  if (p.parity() == poly::Parity::none) throw std::invalid_argument("apply_svt: polynomial needs definite parity");
  if (p.sup_bound() > 1.0 + kNormSlack) throw std::invalid_argument("apply_svt: polynomial exceeds 1 on [-1, 1]");
  if (!(u.alpha > 0.0)) throw std::invalid_argument("apply_svt: alpha must be positive");
  const Matrix x = u.block();
  const int deg = p.degree();
  BlockEncoding out;
  out.logical = svt_matrix(p, x);
  out.alpha = 1.0;
  out.ancillas = u.ancillas + 1;
  out.eps = svt_eps_bound(deg, u.eps, u.alpha, op_norm(x));
  // ceil(deg/2) uses of U and floor(deg/2) of U^dagger.
  out.cost = u.cost.times(deg);
  out.cost.gates += kGatesPerAncillaStep * (u.ancillas + 1) * deg;
  return out;
}

double propagation_bound(const Matrix& a, const Matrix& a_tilde, std::int64_t uses) {
  if (a.rows() != a_tilde.rows() || a.cols() != a_tilde.cols())
    throw std::invalid_argument("propagation_bound: dimension mismatch");
  if (op_norm(a) > 1.0 + kNormSlack || op_norm(a_tilde) > 1.0 + kNormSlack)
    throw PreconditionViolation("propagation_bound: inputs must be contractions");
  const double diff = op_norm(a - a_tilde);
  const double mid = op_norm((a + a_tilde) / 2.0);
  if (diff + mid * mid > 1.0) throw PreconditionViolation("propagation_bound: ||A-B|| + ||(A+B)/2||^2 exceeds 1");
  if (diff == 0.0) return 0.0;
  return static_cast<double>(uses) * std::sqrt(2.0 / (1.0 - mid * mid)) * diff;
}

double robustness_gap(const Matrix& a, const Matrix& a_tilde, const poly::ApproxPolynomial& p) {
  return propagation_bound(a, a_tilde, p.degree());
}

// ---------------------------------------------------------------- dilation

double unitarity_defect(const Matrix& u) {
  return op_norm(u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()));
}

UnitaryDilation dilate_to_unitary(const BlockEncoding& b) {
  Matrix x = b.block();
  const double norm = op_norm(x);
  if (norm > 1.0 + kNormSlack) throw std::domain_error("dilate_to_unitary: block norm exceeds 1");
  if (norm > 1.0) x /= norm;
  const Eigen::Index m = x.rows(), n = x.cols();
  // One SVD for all four blocks: X = U S V^dagger, C = sqrt(1 - S^2). The
  // cross terms then cancel exactly, even for singular values at 1.
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector s = svd.singularValues();
  auto defect = [&s](Eigen::Index k) {
    RealVector c = RealVector::Ones(k);
    for (Eigen::Index i = 0; i < s.size(); ++i) c(i) = std::sqrt(std::max(0.0, (1.0 - s(i)) * (1.0 + s(i))));
    return c;
  };
  Matrix sig = Matrix::Zero(m, n);
  for (Eigen::Index i = 0; i < s.size(); ++i) sig(i, i) = s(i);
  const Matrix& uu = svd.matrixU();
  const Matrix& vv = svd.matrixV();
  UnitaryDilation out;
  out.unitary = Matrix::Zero(m + n, m + n);
  out.unitary.topLeftCorner(m, n) = uu * sig * vv.adjoint();
  out.unitary.topRightCorner(m, m) = uu * defect(m).asDiagonal() * uu.adjoint();
  out.unitary.bottomLeftCorner(n, n) = vv * defect(n).asDiagonal() * vv.adjoint();
  out.unitary.bottomRightCorner(n, m) = -vv * sig.adjoint() * uu.adjoint();
  out.block_rows = static_cast<int>(m);
  out.block_cols = static_cast<int>(n);
  return out;
}

// ---------------------------------------------------------------- logarithm

BlockEncoding unitary_log_block(const Matrix& u, double eps, const std::string& label) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary_log_block: matrix must be square");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("unitary_log_block: eps must lie in (0, 1)");
  if (unitarity_defect(u) > 1e-9) throw std::invalid_argument("unitary_log_block: input is not unitary");
  // U = cos H + i sin H with |phases| <= 1/2 < pi/2, so H = arcsin((U - U^dagger)/2i).
  const Matrix s = (u - u.adjoint()) / cplx(0.0, 2.0);
  const Matrix h = spectral_apply(hermitian_part(s), [](double v) { return std::asin(std::clamp(v, -1.0, 1.0)); });
  if (op_norm(h) > 0.5 + 1e-12 || op_norm(expm_hermitian(h, -1.0) - u) > 1e-8)
    throw PreconditionViolation("unitary_log_block: eigenphase outside [-1/2, 1/2]");
  BlockEncoding out;
  out.logical = h;
  out.alpha = 2.0 / std::numbers::pi;
  out.ancillas = 2;
  out.eps = eps;
  out.cost.uses[label] = static_cast<std::int64_t>(std::ceil(kLogUsesConstant * std::log(1.0 / eps)));
  return out;
}

}  // namespace fidest::qsvt
