#pragma once

#include "fidest/linalg.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <random>
#include <string>

namespace fidest::states {

// Hermitian PSD matrix with trace in (0, 1]. Validated and symmetrized once on
// construction; immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& entries, double trace_tolerance = 1e-12);

  // The zero operator; only produced when a spectral projection selects nothing.
  static DensityMatrix zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }
  double trace_tolerance() const { return trace_tolerance_; }
  bool is_normalized(double tol = 1e-10) const { return std::abs(trace() - 1.0) <= tol; }

 private:
  DensityMatrix() = default;
  Matrix m_;
  double trace_tolerance_ = 1e-12;
};

struct Spectrum {
  RealVector eigenvalues;  // descending, clamped at 0
  Matrix eigenvectors;     // orthonormal columns
  double gap = 0.0;        // min spacing between consecutive nonzero eigenvalues
  int rank() const;
};

Spectrum spectrum(const DensityMatrix& rho);

struct Purification {
  Vector vector;  // index a * dim_b + b
  int dim_a = 0;
  int dim_b = 0;
};

// Eigenvalue window. lo is inclusive; hi is inclusive only when hi_closed.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool hi_closed = false;

  static Interval half_open(double a, double b) { return {a, b, false}; }
  static Interval closed(double a, double b) { return {a, b, true}; }
  static Interval at_least(double a) { return {a, std::numeric_limits<double>::infinity(), true}; }
  static Interval below(double b) { return {0.0, b, false}; }
  bool contains(double x) const { return x >= lo && (hi_closed ? x <= hi : x < hi); }
};

double fidelity_exact(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
Matrix lambda_matrix(const DensityMatrix& rho, const DensityMatrix& sigma);
Matrix psd_projection(const Matrix& h);

DensityMatrix random_density(int dim, int rank, double min_gap, std::uint64_t seed);
DensityMatrix random_density(int dim, int rank, double min_gap, std::mt19937_64& rng);
Matrix haar_unitary(int dim, std::mt19937_64& rng);

Purification purify(const DensityMatrix& rho);
Matrix partial_trace_a(const Purification& p);

// Orthogonal projector onto the eigenvectors of rho with eigenvalue in the window.
Matrix spectral_projector(const DensityMatrix& rho, const Interval& window);
DensityMatrix project_spectrum(const DensityMatrix& rho, const Interval& window);

DensityMatrix diagonal_state(const RealVector& diag);
DensityMatrix pure_state(const Vector& psi);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
std::string eigenvalues_csv(const RealVector& values);

}  // namespace fidest::states
