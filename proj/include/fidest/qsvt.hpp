#pragma once

#include "fidest/linalg.hpp"
#include "fidest/polyapprox.hpp"
#include "fidest/states.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace fidest::qsvt {

// Query counters. `uses` counts applications of each source unitary (U and
// U^dagger alike); gates is a coarse two-qubit gate estimate.
struct CostRecord {
  std::map<std::string, std::int64_t> uses;
  std::int64_t gates = 0;

  std::int64_t uses_of(const std::string& label) const;
  std::int64_t total_uses() const;
  CostRecord& operator+=(const CostRecord& other);
  CostRecord times(std::int64_t factor) const;
  bool operator==(const CostRecord&) const = default;
};

// (alpha, a, eps)-block-encoding. `logical` is the matrix the modeled circuit
// realizes; eps bounds its distance to the intended operator.
struct BlockEncoding {
  Matrix logical;
  double alpha = 1.0;
  int ancillas = 0;
  double eps = 0.0;
  CostRecord cost;

  Matrix block() const { return logical / alpha; }
};

struct UnitaryDilation {
  Matrix unitary;
  int block_rows = 0;  // A/alpha sits in rows [0, block_rows), cols [0, block_cols)
  int block_cols = 0;

  Matrix block() const { return unitary.topLeftCorner(block_rows, block_cols); }
};

// Two-qubit gates charged per ancilla qubit per SVT step (reflection plus
// controlled phase rotation).
inline constexpr std::int64_t kGatesPerAncillaStep = 2;
// Controlled-U uses of the logarithm block are ceil(kLogUsesConstant * log(1/eps)).
inline constexpr double kLogUsesConstant = 2.0;

class PreconditionViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

int qubits_for(int dim);

// Encoding of a matrix by a single call to an oracle called `label`.
BlockEncoding oracle_encoding(const Matrix& a, double alpha, int ancillas, const std::string& label,
                              std::int64_t gates = 0);
BlockEncoding identity_encoding(int dim);

BlockEncoding block_encode_density(const states::Purification& p, const std::string& label = "rho");
// (G^dagger x I)(I_A x SWAP_{B,S})(G x I) on A x B x S; the block is at ancilla index 0.
UnitaryDilation materialize_density_encoding(const states::Purification& p);

BlockEncoding block_product(const BlockEncoding& u, const BlockEncoding& v);
BlockEncoding block_adjoint(const BlockEncoding& u);
// Same circuit read as an encoding of c * A with normalization c * alpha.
BlockEncoding rescale(const BlockEncoding& u, double c);
// Uniform singular value amplification by `factor`: logical unchanged, alpha
// divided by factor, one extra ancilla.
BlockEncoding amplify(const BlockEncoding& u, double factor, double eps);
std::int64_t amplification_degree(double factor, double eps);

// SV^(p)(A): U p(S) V^dagger for odd p, V p(S) V^dagger for even p, with A = U S V^dagger.
Matrix svt_matrix(const poly::ApproxPolynomial& p, const Matrix& a);
BlockEncoding apply_svt(const poly::ApproxPolynomial& p, const BlockEncoding& u);
double svt_eps_bound(int degree, double eps, double alpha, double block_norm);

// T sqrt(2 / (1 - ||(A+B)/2||^2)) ||A - B||; throws PreconditionViolation
// unless ||A||, ||B|| <= 1 and ||A-B|| + ||(A+B)/2||^2 <= 1.
double propagation_bound(const Matrix& a, const Matrix& a_tilde, std::int64_t uses);
double robustness_gap(const Matrix& a, const Matrix& a_tilde, const poly::ApproxPolynomial& p);

UnitaryDilation dilate_to_unitary(const BlockEncoding& b);
double unitarity_defect(const Matrix& u);

// H with U = e^{iH}, encoded with alpha = 2/pi and two ancillas.
BlockEncoding unitary_log_block(const Matrix& u, double eps, const std::string& label = "U");

nlohmann::json to_json(const CostRecord& c);

}  // namespace fidest::qsvt
