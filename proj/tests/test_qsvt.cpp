#include <gtest/gtest.h>

#include "fidest/qsvt.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace fidest;
using namespace fidest::qsvt;

namespace {

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

Matrix random_contraction(int rows, int cols, std::mt19937_64& rng, double norm = 0.9) {
  Matrix m = random_matrix(rows, cols, rng);
  return m * (norm / op_norm(m));
}

// Exact embedding of a perturbed block: unitary dilation of A/alpha + E.
double max_entry_error(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

poly::ApproxPolynomial monomial3() { return poly::from_coefficients({0.0, 0.75, 0.0, 0.25}, poly::Parity::odd); }

}  // namespace

TEST(DensityEncoding, PureState) {
  Vector e0 = Vector::Zero(2);
  e0(0) = 1.0;
  auto b = block_encode_density(states::purify(states::pure_state(e0)));
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  EXPECT_LT(max_entry_error(b.logical, expected), 1e-12);
  EXPECT_EQ(b.alpha, 1.0);
  EXPECT_EQ(b.eps, 0.0);
  EXPECT_EQ(b.ancillas, 2);
}

TEST(DensityEncoding, MaximallyMixedQubitMaterialized) {
  RealVector diag(2);
  diag << 0.5, 0.5;
  const auto p = states::purify(states::diagonal_state(diag));
  const auto u = materialize_density_encoding(p);
  EXPECT_EQ(u.unitary.rows(), 8);
  EXPECT_LT(unitarity_defect(u.unitary), 1e-10);
  EXPECT_LT(max_entry_error(u.block(), Matrix::Identity(2, 2) * 0.5), 1e-10);
}

TEST(DensityEncoding, MaterializedBlockMatchesLogical) {
  std::mt19937_64 rng(3);
  for (int d : {2, 3, 4}) {
    const auto rho = states::random_density(d, d, 0.0, rng);
    const auto p = states::purify(rho);
    const auto u = materialize_density_encoding(p);
    EXPECT_LT(unitarity_defect(u.unitary), 1e-10);
    EXPECT_LT(op_norm(u.block() - rho.matrix()), 1e-10);
    EXPECT_LT(op_norm(block_encode_density(p).logical - rho.matrix()), 1e-10);
  }
}

TEST(BlockProduct, IdentityAndExactness) {
  std::mt19937_64 rng(4);
  auto a = oracle_encoding(random_contraction(3, 3, rng), 1.0, 1, "A");
  auto prod = block_product(a, identity_encoding(3));
  EXPECT_LT(op_norm(prod.logical - a.logical), 1e-14);
  EXPECT_EQ(prod.alpha, a.alpha);
  EXPECT_EQ(prod.eps, 0.0);
  EXPECT_THROW(block_product(a, identity_encoding(4)), std::invalid_argument);
}

TEST(BlockProduct, ErrorMetadataBoundsMeasuredError) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const double alpha = u(rng), beta = u(rng);
    const Matrix a = random_contraction(n, n, rng, 0.8 * alpha);
    const Matrix b = random_contraction(n, n, rng, 0.8 * beta);
    const double ea = 1e-3 * alpha, eb = 2e-3 * beta;
    BlockEncoding ua = oracle_encoding(a + random_contraction(n, n, rng, ea), alpha, 1, "A");
    ua.eps = ea;
    BlockEncoding ub = oracle_encoding(b + random_contraction(n, n, rng, eb), beta, 1, "B");
    ub.eps = eb;
    const auto prod = block_product(ua, ub);
    EXPECT_LE(op_norm(prod.logical - a * b), prod.eps + 1e-12);
    EXPECT_DOUBLE_EQ(prod.eps, alpha * eb + beta * ea);
  }
}

TEST(BlockProduct, Associative) {
  std::mt19937_64 rng(6);
  auto a = oracle_encoding(random_contraction(3, 4, rng), 1.0, 1, "A");
  auto b = oracle_encoding(random_contraction(4, 2, rng), 2.0, 1, "B");
  auto c = oracle_encoding(random_contraction(2, 3, rng), 1.5, 2, "C");
  a.eps = 0.01;
  b.eps = 0.02;
  auto left = block_product(block_product(a, b), c);
  auto right = block_product(a, block_product(b, c));
  EXPECT_LT(op_norm(left.logical - right.logical), 1e-10);
  EXPECT_NEAR(left.eps, right.eps, 1e-15);
  EXPECT_GE(left.eps, block_product(a, b).eps);
}

TEST(Svt, LinearOnDensityIsIdentity) {
  std::mt19937_64 rng(7);
  const auto rho = states::random_density(4, 3, 0.0, rng);
  auto x = poly::from_coefficients({0.0, 1.0}, poly::Parity::odd);
  auto out = apply_svt(x, block_encode_density(states::purify(rho)));
  EXPECT_LT(op_norm(out.logical - rho.matrix()), 1e-12);
}

TEST(Svt, CubeOnDensity) {
  std::mt19937_64 rng(8);
  const auto rho = states::random_density(4, 4, 0.0, rng);
  auto out = apply_svt(monomial3(), block_encode_density(states::purify(rho)));
  const Matrix cube = rho.matrix() * rho.matrix() * rho.matrix();
  EXPECT_LT(op_norm(out.logical - cube), 1e-9);
}

TEST(Svt, MatchesDirectSvdOracle) {
  std::mt19937_64 rng(9);
  const auto p = poly::approx_sign(0.2, 0.05);
  const auto q = poly::approx_power(0.5, poly::PowerKind::negative, 0.2, 0.05);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = 1 + trial % 6, cols = 1 + (trial / 6) % 6;
    const Matrix a = random_contraction(rows, cols, rng, 0.95);
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector s = svd.singularValues();
    // odd: U p(S) V^dagger over the full SVD; p(0) = 0 pads.
    Matrix ps = Matrix::Zero(rows, cols);
    for (Eigen::Index i = 0; i < s.size(); ++i) ps(i, i) = p(s(i));
    const Matrix odd = svd.matrixU() * ps * svd.matrixV().adjoint();
    EXPECT_LT(op_norm(apply_svt(p, oracle_encoding(a, 1.0, 0, "A")).logical - odd), 1e-9);
    // even: V q(S) V^dagger on the input space.
    Matrix qs = Matrix::Zero(cols, cols);
    for (int i = 0; i < cols; ++i) qs(i, i) = q(i < s.size() ? s(i) : 0.0);
    const Matrix even = svd.matrixV() * qs * svd.matrixV().adjoint();
    EXPECT_LT(op_norm(svt_matrix(q, a) - even), 1e-9);
  }
}

TEST(Svt, SingularValuesAreTransformed) {
  std::mt19937_64 rng(10);
  const auto p = poly::approx_sign(0.1, 0.01);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_contraction(5, 5, rng);
    RealVector s = singular_values(a);
    RealVector expected(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) expected(i) = std::abs(p(s(i)));
    std::sort(expected.data(), expected.data() + expected.size(), std::greater<>());
    RealVector got = singular_values(svt_matrix(p, a));
    for (Eigen::Index i = 0; i < s.size(); ++i) EXPECT_NEAR(got(i), expected(i), 1e-8);
  }
}

TEST(Svt, RejectsParityFreePolynomial) {
  auto p = poly::from_coefficients({0.1, 0.2}, poly::Parity::none);
  EXPECT_THROW(apply_svt(p, identity_encoding(2)), std::invalid_argument);
}

TEST(Svt, CounterArithmetic) {
  std::mt19937_64 rng(11);
  const auto rho = states::random_density(3, 3, 0.0, rng);
  const auto sig = states::random_density(3, 3, 0.0, rng);
  auto ur = block_encode_density(states::purify(rho), "rho");
  auto us = block_encode_density(states::purify(sig), "sigma");
  const auto p = poly::approx_sign(0.3, 0.1);
  const auto q = monomial3();
  auto a = apply_svt(p, ur);
  auto b = apply_svt(q, us);
  auto c = block_product(a, b);
  auto d = apply_svt(q, block_adjoint(c));
  EXPECT_EQ(a.cost.uses_of("rho"), p.degree());
  EXPECT_EQ(b.cost.uses_of("sigma"), 3);
  EXPECT_EQ(d.cost.uses_of("rho"), 3 * p.degree());
  EXPECT_EQ(d.cost.uses_of("sigma"), 9);
  EXPECT_EQ(d.cost.total_uses(), 3 * (p.degree() + 3));
  // (deg+1)/2 uses of U plus (deg-1)/2 of U^dagger for odd degree.
  EXPECT_EQ((p.degree() + 1) / 2 + (p.degree() - 1) / 2, a.cost.uses_of("rho"));
}

TEST(Amplify, KeepsLogicalDividesAlpha) {
  std::mt19937_64 rng(12);
  auto a = oracle_encoding(random_contraction(3, 3, rng, 0.2), 1.0, 1, "A");
  auto amp = amplify(a, 4.0, 1e-3);
  EXPECT_LT(op_norm(amp.logical - a.logical), 1e-15);
  EXPECT_DOUBLE_EQ(amp.alpha, 0.25);
  EXPECT_EQ(amp.ancillas, 2);
  EXPECT_EQ(amp.cost.uses_of("A"), amplification_degree(4.0, 1e-3));
  EXPECT_THROW(amplify(a, 6.0, 1e-3), std::domain_error);
  EXPECT_EQ(amplification_degree(1.0, 0.1), 1);
}

TEST(Robustness, EqualInputsGiveZero) {
  std::mt19937_64 rng(13);
  const Matrix a = random_contraction(3, 3, rng, 0.5);
  EXPECT_EQ(robustness_gap(a, a, monomial3()), 0.0);
}

TEST(Robustness, MeasuredGapBelowBound) {
  std::mt19937_64 rng(14);
  const auto p = poly::approx_sign(0.2, 0.05);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_contraction(4, 3, rng, 0.7);
    const Matrix at = a + random_contraction(4, 3, rng, 1e-3);
    const double bound = robustness_gap(a, at, p);
    EXPECT_LE(op_norm(svt_matrix(p, a) - svt_matrix(p, at)), bound);
  }
}

TEST(Robustness, PreconditionViolationIsDistinct) {
  Matrix a = Matrix::Identity(2, 2) * 0.9;
  Matrix b = -a;
  EXPECT_THROW(robustness_gap(a, b, monomial3()), PreconditionViolation);
  EXPECT_THROW(robustness_gap(a, Matrix::Identity(2, 2) * 1.5, monomial3()), PreconditionViolation);
}

TEST(Dilation, ZeroBlock) {
  BlockEncoding b;
  b.logical = Matrix::Zero(2, 2);
  auto u = dilate_to_unitary(b);
  EXPECT_LT(op_norm(u.block()), 1e-15);
  EXPECT_LT(op_norm(u.unitary.topRightCorner(2, 2) - Matrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(op_norm(u.unitary.bottomLeftCorner(2, 2) - Matrix::Identity(2, 2)), 1e-15);
}

TEST(Dilation, UnitaryBlockStaysExact) {
  std::mt19937_64 rng(15);
  BlockEncoding b;
  b.logical = 2.0 * states::haar_unitary(3, rng);
  b.alpha = 2.0;
  auto u = dilate_to_unitary(b);
  EXPECT_LT(op_norm(u.block() - b.block()), 1e-14);
  EXPECT_LT(unitarity_defect(u.unitary), 1e-10);
}

TEST(Dilation, RandomContractions) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    BlockEncoding b;
    b.logical = random_contraction(1 + trial % 4, 1 + trial % 3, rng, 1.0);
    auto u = dilate_to_unitary(b);
    EXPECT_LT(unitarity_defect(u.unitary), 1e-10);
    EXPECT_LT(op_norm(u.block() - b.block()), 1e-10);
  }
  BlockEncoding big;
  big.logical = Matrix::Identity(2, 2) * 1.1;
  EXPECT_THROW(dilate_to_unitary(big), std::domain_error);
}

TEST(UnitaryLog, Identity) {
  auto b = unitary_log_block(Matrix::Identity(3, 3), 1e-3);
  EXPECT_LT(op_norm(b.logical), 1e-15);
  EXPECT_DOUBLE_EQ(b.alpha, 2.0 / std::numbers::pi);
  EXPECT_EQ(b.ancillas, 2);
}

TEST(UnitaryLog, PauliZ) {
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  const Matrix u = expm_hermitian(z, -0.3);  // e^{0.3 i Z}
  auto b = unitary_log_block(u, 1e-4);
  EXPECT_LT(op_norm(b.logical - 0.3 * z), 1e-10);
  EXPECT_EQ(b.cost.uses_of("U"), static_cast<std::int64_t>(std::ceil(kLogUsesConstant * std::log(1e4))));
}

TEST(UnitaryLog, RandomRoundTrip) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix h = random_matrix(4, 4, rng);
    h = hermitian_part(h);
    h *= 0.49 / op_norm(h);
    auto b = unitary_log_block(expm_hermitian(h, -1.0), 1e-3);
    EXPECT_LT(op_norm(b.logical - h), 1e-9);
  }
}

TEST(UnitaryLog, PhaseOutOfRange) {
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  EXPECT_THROW(unitary_log_block(expm_hermitian(z, -0.8), 1e-3), PreconditionViolation);
  EXPECT_THROW(unitary_log_block(expm_hermitian(z, -2.0), 1e-3), PreconditionViolation);
}

TEST(CostJson, Shape) {
  CostRecord c;
  c.uses["rho"] = 5;
  c.gates = 7;
  auto j = to_json(c);
  EXPECT_EQ(j["uses_of_source_unitaries"]["rho"], 5);
  EXPECT_EQ(j["two_qubit_gate_estimate"], 7);
}
