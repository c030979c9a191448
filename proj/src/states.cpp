#include "fidest/states.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fidest::states {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kPsdTol = 1e-12;

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

DensityMatrix::DensityMatrix(const Matrix& entries, double trace_tolerance)
    : trace_tolerance_(trace_tolerance) {
  if (entries.rows() == 0 || entries.rows() != entries.cols())
    throw std::invalid_argument("DensityMatrix: expected a non-empty square matrix");
  if (max_asymmetry(entries) > kHermitianTol)
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  m_ = hermitian_part(entries);
  const HermitianEig e = eig_hermitian(m_);
  if (e.values(e.values.size() - 1) < -kPsdTol)
    throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
  const double tr = m_.trace().real();
  if (!(tr > 0.0) || tr > 1.0 + trace_tolerance_)
    throw std::invalid_argument("DensityMatrix: trace outside (0, 1]");
}

DensityMatrix DensityMatrix::zero(int dim) {
  if (dim <= 0) throw std::invalid_argument("DensityMatrix::zero: dim must be positive");
  DensityMatrix z;
  z.m_ = Matrix::Zero(dim, dim);
  return z;
}

int Spectrum::rank() const {
  int r = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) > 0.0) ++r;
  return r;
}

Spectrum spectrum(const DensityMatrix& rho) {
  HermitianEig e = eig_hermitian(rho.matrix());
  const double cut = kZeroEigTol * std::max(1.0, std::abs(e.values(0)));
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (e.values(i) <= cut) e.values(i) = 0.0;
  Spectrum s{e.values, e.vectors, 0.0};
  const int r = s.rank();
  double gap = r >= 2 ? std::numeric_limits<double>::infinity() : 0.0;
  for (int i = 0; i + 1 < r; ++i) gap = std::min(gap, s.eigenvalues(i) - s.eigenvalues(i + 1));
  s.gap = gap;
  return s;
}

double fidelity_exact(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "fidelity_exact");
  // Tr sqrt(sqrt(rho) sigma sqrt(rho)) = || sqrt(rho) sqrt(sigma) ||_1, and the
  // singular values avoid a second square root of near-zero eigenvalues.
  const double f = trace_norm(sqrt_psd(rho.matrix()) * sqrt_psd(sigma.matrix()));
  const double cap = std::sqrt(std::max(0.0, rho.trace()) * std::max(0.0, sigma.trace()));
  if (f > cap + 1e-9) throw std::runtime_error("fidelity_exact: result exceeds sqrt(Tr rho Tr sigma)");
  return f;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance");
  const HermitianEig e = eig_hermitian(rho.matrix() - sigma.matrix());
  return 0.5 * e.values.cwiseAbs().sum();
}

Matrix lambda_matrix(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "lambda_matrix");
  const Spectrum s = spectrum(rho);
  const int r = s.rank();
  const Matrix psi = s.eigenvectors.leftCols(r);
  RealVector root(r);
  for (int i = 0; i < r; ++i) root(i) = std::sqrt(s.eigenvalues(i));
  const Matrix d = root.cast<cplx>().asDiagonal();
  return hermitian_part(d * (psi.adjoint() * sigma.matrix() * psi) * d);
}

Matrix psd_projection(const Matrix& h) {
  if (max_asymmetry(h) > 1e-9) throw std::invalid_argument("psd_projection: matrix is not Hermitian");
  return spectral_apply(hermitian_part(h), [](double x) { return std::max(0.0, x); });
}

Matrix haar_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) z(r, c) = cplx(normal(rng), normal(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    const cplx ph = std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0, 0.0);
    q.col(i) *= ph;
  }
  return q;
}

DensityMatrix random_density(int dim, int rank, double min_gap, std::mt19937_64& rng) {
  if (dim <= 0 || rank <= 0 || rank > dim) throw std::invalid_argument("random_density: need 0 < rank <= dim");
  if (min_gap < 0.0) throw std::invalid_argument("random_density: negative gap");
  // rank distinct positive eigenvalues spaced by min_gap need more than
  // min_gap * rank * (rank - 1) / 2 of the unit trace.
  const double reserved = min_gap * rank * (rank - 1) / 2.0;
  if (reserved >= 1.0) throw std::invalid_argument("random_density: infeasible gap/rank combination");

  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(rank);
  for (auto& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x = x / total * (1.0 - reserved);
  std::sort(w.begin(), w.end(), std::greater<>());
  RealVector lam = RealVector::Zero(dim);
  for (int i = 0; i < rank; ++i) lam(i) = w[i] + min_gap * (rank - 1 - i);
  lam /= lam.sum();

  const Matrix u = haar_unitary(dim, rng);
  return DensityMatrix(hermitian_part(u * lam.cast<cplx>().asDiagonal() * u.adjoint()));
}

DensityMatrix random_density(int dim, int rank, double min_gap, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_density(dim, rank, min_gap, rng);
}

Purification purify(const DensityMatrix& rho) {
  if (!rho.is_normalized()) throw std::invalid_argument("purify: input must have unit trace");
  const Spectrum s = spectrum(rho);
  const int d = rho.dim();
  Purification p{Vector::Zero(d * d), d, d};
  for (int i = 0; i < d; ++i) {
    if (s.eigenvalues(i) <= 0.0) continue;
    p.vector.segment(i * d, d) = std::sqrt(s.eigenvalues(i)) * s.eigenvectors.col(i);
  }
  p.vector.normalize();
  return p;
}

Matrix partial_trace_a(const Purification& p) {
  if (p.vector.size() != static_cast<Eigen::Index>(p.dim_a) * p.dim_b)
    throw std::invalid_argument("partial_trace_a: vector size does not match dims");
  // Rows index system A, columns index system B.
  const Matrix psi = Eigen::Map<const Matrix>(p.vector.data(), p.dim_b, p.dim_a).transpose();
  return psi.transpose() * psi.conjugate();
}

Matrix spectral_projector(const DensityMatrix& rho, const Interval& window) {
  const Spectrum s = spectrum(rho);
  const int d = rho.dim();
  Matrix proj = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (window.contains(s.eigenvalues(i))) proj += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
  return proj;
}

DensityMatrix project_spectrum(const DensityMatrix& rho, const Interval& window) {
  if (window.lo < 0.0 || !(window.lo < window.hi)) throw std::invalid_argument("project_spectrum: need 0 <= a < b");
  const Spectrum s = spectrum(rho);
  const int d = rho.dim();
  Matrix out = Matrix::Zero(d, d);
  bool any = false;
  for (int i = 0; i < d; ++i) {
    if (s.eigenvalues(i) > 0.0 && window.contains(s.eigenvalues(i))) {
      out += s.eigenvalues(i) * s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
      any = true;
    }
  }
  if (!any) return DensityMatrix::zero(d);
  return DensityMatrix(hermitian_part(out), rho.trace_tolerance());
}

DensityMatrix diagonal_state(const RealVector& diag) {
  return DensityMatrix(diag.cast<cplx>().asDiagonal().toDenseMatrix());
}

DensityMatrix pure_state(const Vector& psi) {
  const Vector v = psi.normalized();
  return DensityMatrix(hermitian_part(v * v.adjoint()));
}

nlohmann::json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_to_json: expected a square matrix");
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const int d = j.at("dim").get<int>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (d <= 0 || re.size() != static_cast<size_t>(d) * d || im.size() != re.size())
    throw std::invalid_argument("matrix_from_json: inconsistent dim and entry lists");
  Matrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = cplx(re[r * d + c].get<double>(), im[r * d + c].get<double>());
  return m;
}

std::string eigenvalues_csv(const RealVector& values) {
  std::ostringstream os;
  os << "index,eigenvalue\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < values.size(); ++i) os << i << ',' << values(i) << '\n';
  return os.str();
}

}  // namespace fidest::states
