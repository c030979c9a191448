#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace fidest::poly {

enum class Parity { odd, even, none };
enum class PowerKind { positive, negative };
enum class TargetKind { custom, sign, rect, power_positive, power_negative };

// What a polynomial approximates and where. Regions are closed subintervals of
// [-1, 1]; for rect, inner/outer regions carry the targets 1 and 0.
struct Target {
  TargetKind kind = TargetKind::custom;
  double delta = 0.0;
  double epsilon = 0.0;
  double t = 0.0;   // rect half-width
  double c = 0.0;   // power exponent
  bool majorated = false;

  double value(double x) const;  // target on its regions
  struct Region {
    double lo, hi;
  };
  std::vector<Region> regions() const;
  std::string describe() const;
};

class ApproxPolynomial {
 public:
  ApproxPolynomial() = default;
  ApproxPolynomial(std::vector<double> cheb_coeffs, Parity parity, Target target);

  const std::vector<double>& coeffs() const { return coeffs_; }
  Parity parity() const { return parity_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double sup_bound() const { return sup_bound_; }
  double apx_error() const { return apx_error_; }
  const Target& target() const { return target_; }

  double operator()(double x) const;

 private:
  friend struct Builder;
  std::vector<double> coeffs_;
  Parity parity_ = Parity::none;
  Target target_;
  double sup_bound_ = 0.0;
  double apx_error_ = 0.0;
};

inline constexpr int kGridNodes = 10000;
inline constexpr int kDegreeCap = 1 << 20;
inline constexpr double kCertSlack = 1.01;

// Degree-bound constants: degree <= C * log(1/eps) / delta (power: times max(1,c)).
inline constexpr double kSignDegreeConstant = 4.0;
inline constexpr double kRectDegreeConstant = 4.0;
inline constexpr double kPowerDegreeConstant = 16.0;

double clenshaw(const std::vector<double>& coeffs, double x);
double eval_poly(const ApproxPolynomial& p, double x);

// Values of a Chebyshev series at x_k = cos(pi k / m), k = 0..m.
std::vector<double> eval_on_lobatto(const std::vector<double>& coeffs, int m);
// Chebyshev coefficients of the degree-n interpolant at n+1 Lobatto points.
std::vector<double> lobatto_coefficients(const std::vector<double>& samples);

struct Certificate {
  double sup = 0.0;         // max |p| over [-1, 1]
  double apx_error = 0.0;   // max target deviation over the regions
  double majorant_excess = 0.0;  // max |p(x)| - f(|x|) - eps; <= 0 when majorated holds
  double range_violation = 0.0;  // rect: how far values leave [0, 1]
};
// grid_nodes = 0 picks max(kGridNodes, 4 (deg + 1)) so the grid resolves the
// polynomial's oscillations at any degree.
Certificate certify(const ApproxPolynomial& p, int grid_nodes = 0);
int default_grid_nodes(int degree);
bool passes(const Certificate& cert, const Target& target);

ApproxPolynomial approx_sign(double delta, double epsilon);
ApproxPolynomial approx_rect(double t, double delta, double epsilon);
ApproxPolynomial approx_power(double c, PowerKind kind, double delta, double epsilon, bool majorated = false,
                              Parity parity = Parity::even);

// Wraps explicit coefficients (wrong-parity entries must be zero) and fills in
// sup_bound from the grid.
ApproxPolynomial from_coefficients(std::vector<double> cheb_coeffs, Parity parity);

// scale * a(x) * b(x); parity follows the factors.
ApproxPolynomial multiply(const ApproxPolynomial& a, const ApproxPolynomial& b, double scale = 1.0);
// shift + scale * p(x); p must be even when shift != 0.
ApproxPolynomial affine(const ApproxPolynomial& p, double shift, double scale);
ApproxPolynomial identity_polynomial();

double degree_budget(const Target& target);

nlohmann::json to_json(const ApproxPolynomial& p);
std::string to_string(Parity p);

}  // namespace fidest::poly
