#pragma once

#include "fidest/qsvt.hpp"
#include "fidest/states.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>

namespace fidest::dme {

// copies = ceil(kDmeConstant * t^2 / delta)
inline constexpr double kDmeConstant = 1.0;
// copies = ceil(kSamplingConstant * log^2(1/delta) / delta)
inline constexpr double kSamplingConstant = 1.0;
// Each partial SWAP on q-qubit registers costs 3q two-qubit gates.
inline constexpr std::int64_t kGatesPerSwapQubit = 3;

struct SampleBudget {
  std::int64_t copies_of_state = 0;
  double diamond_error = 0.0;
  std::int64_t gate_estimate = 0;
};

// sigma_{n+1} = Tr_B[e^{-2 pi i S/k} (sigma_n x rho) e^{2 pi i S/k}], applied k times.
states::DensityMatrix inf_swap_channel(const states::DensityMatrix& sigma, const states::DensityMatrix& rho, int k);
// One step with angle theta, on the explicit two-register space.
Matrix inf_swap_step(const Matrix& sigma, const Matrix& rho, double theta);
// e^{-2 pi i rho} sigma e^{2 pi i rho}
Matrix conjugation_target(const states::DensityMatrix& sigma, const states::DensityMatrix& rho);

SampleBudget dme_unitary_budget(double t, double delta, int qubits = 1);

struct SampledEncoding {
  qsvt::BlockEncoding encoding;
  SampleBudget budget;
};
// (4/pi, 3, 0)-encoding of rho from samples. With inject_noise the logical block
// is the depolarized (1 - delta/2) rho + (delta/2) I/d, a channel within diamond
// distance delta of the identity channel.
SampledEncoding samples_to_block_encoding(const states::DensityMatrix& rho, double delta, bool inject_noise = false,
                                          const std::string& label = "rho");

// (-i/t) (<psi_i|psi_j> - <psi_i| e^{-i sigma t} |psi_j>)
cplx sigma_offdiag_taylor(const states::DensityMatrix& sigma, const Vector& psi_i, const Vector& psi_j, double t);

nlohmann::json to_json(const SampleBudget& b);

}  // namespace fidest::dme
