#pragma once

#include "fidest/states.hpp"

#include <functional>

namespace fidest::truncation {

inline constexpr double kBoundSlack = 1e-9;

struct GapBound {
  double gap = 0.0;
  double bound = 0.0;
  bool holds() const { return gap >= -kBoundSlack && gap <= bound + kBoundSlack; }
};

// F(A, B) for PSD A, B of any trace, including zero.
double fidelity_psd(const Matrix& a, const Matrix& b);

// gap = F(rho, sigma) - F(P rho P, sigma) with P the projector of rho onto the window.
GapBound hard_truncation_gap(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                             const states::Interval& window);

struct SoftBoundsReport {
  double hard_beta = 0.0;   // F(P_[beta,1) rho P_[beta,1), sigma)
  double soft = 0.0;        // F(f(rho) rho, sigma)
  double hard_alpha = 0.0;  // F(P_[alpha,1) rho P_[alpha,1), sigma)
  double full = 0.0;        // F(rho, sigma)
  double closeness_gap = 0.0;    // full - soft
  double closeness_bound = 0.0;  // sqrt Tr rho_[0,beta) * sqrt Tr P sigma P
  bool chain_holds() const;
};

// f must map into [0, 1], vanish below alpha and equal 1 from beta on.
SoftBoundsReport soft_bounds_check(const states::DensityMatrix& rho, const states::DensityMatrix& sigma,
                                   const std::function<double(double)>& f, double alpha, double beta);

// gap = F(P_alpha rho P_alpha, sigma) - F(P_beta rho P_beta, sigma) with
// P_x = P_[x, 1); bound uses the window [alpha, beta).
GapBound fine_guard_gap(const states::DensityMatrix& rho, const states::DensityMatrix& sigma, double alpha,
                        double beta);

// For commuting 0 <= A <= B that also commute with rho: gap = F(B rho B) - F(A rho A) >= 0.
GapBound monotonicity_gap(const Matrix& a, const Matrix& b, const states::DensityMatrix& rho,
                          const states::DensityMatrix& sigma);

// sqrt Tr[rho_[0,theta)] * sqrt Tr[P sigma P] with P the projector onto [0, theta).
double truncation_error_term(const states::DensityMatrix& rho, const states::DensityMatrix& sigma, double theta);

}  // namespace fidest::truncation
