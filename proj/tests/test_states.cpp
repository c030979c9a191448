#include "fidest/states.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace fidest;
using namespace fidest::states;

namespace {

RealVector vec(std::initializer_list<double> xs) {
  RealVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST(DensityMatrix, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  m(0, 1) = 1e-6;
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);
}

TEST(DensityMatrix, RejectsNegativeEigenvalueAndBadTrace) {
  EXPECT_THROW(diagonal_state(vec({1.2, -0.2})), std::invalid_argument);
  EXPECT_THROW(diagonal_state(vec({0.7, 0.4})), std::invalid_argument);
  EXPECT_THROW(diagonal_state(vec({0.0, 0.0})), std::invalid_argument);
}

TEST(DensityMatrix, RepairsTinyAsymmetry) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  m(0, 1) = cplx(0.1, 1e-13);
  m(1, 0) = cplx(0.1, 0.0);
  const DensityMatrix rho(m);
  EXPECT_EQ(max_asymmetry(rho.matrix()), 0.0);
}

TEST(Fidelity, IdenticalStates) {
  const auto rho = random_density(6, 3, 0.0, 11);
  EXPECT_NEAR(fidelity_exact(rho, rho), 1.0, 1e-10);
}

TEST(Fidelity, PointMassAgainstUniform) {
  const auto sigma = diagonal_state(vec({0.25, 0.25, 0.25, 0.25}));
  const auto rho = diagonal_state(vec({1.0, 0.0, 0.0, 0.0}));
  EXPECT_NEAR(fidelity_exact(sigma, rho), 0.5, 1e-12);
}

TEST(Fidelity, HalfEigenvalueExample) {
  const auto rho = diagonal_state(vec({0.8, 0.2}));
  const auto sigma = diagonal_state(vec({0.5, 0.5}));
  EXPECT_NEAR(fidelity_exact(rho, sigma), 0.9486832980505138, 1e-12);
}

TEST(Fidelity, PureStateReduction) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sigma = random_density(5, 1 + trial % 5, 0.0, rng);
    const Matrix u = haar_unitary(5, rng);
    const Vector psi = u.col(0);
    const double expected = std::sqrt((psi.adjoint() * sigma.matrix() * psi)(0, 0).real());
    EXPECT_NEAR(fidelity_exact(pure_state(psi), sigma), expected, 1e-9);
  }
}

TEST(Fidelity, SymmetryRangeAndFuchsVanDeGraaf) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 7;
    const auto rho = random_density(d, 1 + trial % d, 0.0, rng);
    const auto sigma = random_density(d, 1 + (trial / 3) % d, 0.0, rng);
    const double f = fidelity_exact(rho, sigma);
    EXPECT_NEAR(f, fidelity_exact(sigma, rho), 1e-9);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
    const double t = trace_distance(rho, sigma);
    EXPECT_LE(1.0 - f, t + 1e-12);
    EXPECT_LE(t, std::sqrt(std::max(0.0, 1.0 - f * f)) + 1e-9);
  }
}

TEST(Fidelity, SubnormalizedRange) {
  const auto rho = project_spectrum(diagonal_state(vec({0.7, 0.2, 0.1})), Interval::half_open(0.15, 1.0));
  const auto sigma = diagonal_state(vec({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  const double f = fidelity_exact(rho, sigma);
  EXPECT_LE(f, std::sqrt(rho.trace() * sigma.trace()) + 1e-9);
  // sqrt(0.7/3) + sqrt(0.2/3)
  EXPECT_NEAR(f, 0.741244781286809, 1e-12);
}

TEST(Fidelity, DimensionMismatchThrows) {
  EXPECT_THROW(fidelity_exact(random_density(2, 1, 0, 1), random_density(3, 1, 0, 1)), std::invalid_argument);
}

TEST(Fidelity, HalfEigenvalueInequality) {
  for (int i = 0; i <= 100; ++i) {
    const double e = i / 100.0;
    EXPECT_LE((std::sqrt(1 + e) + std::sqrt(1 - e)) / 2, 1 - e * e / 8 + 1e-15);
  }
}

TEST(TraceDistance, Basics) {
  const auto rho = random_density(4, 2, 0.0, 3);
  EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-14);
  EXPECT_NEAR(trace_distance(diagonal_state(vec({1, 0})), diagonal_state(vec({0, 1}))), 1.0, 1e-14);
}

TEST(LambdaMatrix, PureStateIsQuadraticForm) {
  std::mt19937_64 rng(8);
  const Vector psi = haar_unitary(4, rng).col(0);
  const auto sigma = random_density(4, 4, 0.0, rng);
  const Matrix lam = lambda_matrix(pure_state(psi), sigma);
  ASSERT_EQ(lam.rows(), 1);
  EXPECT_NEAR(lam(0, 0).real(), (psi.adjoint() * sigma.matrix() * psi)(0, 0).real(), 1e-12);
}

TEST(LambdaMatrix, DiagonalEqualStates) {
  const auto rho = diagonal_state(vec({0.5, 0.3, 0.2}));
  const Matrix lam = lambda_matrix(rho, rho);
  EXPECT_NEAR(lam(0, 0).real(), 0.25, 1e-12);
  EXPECT_NEAR(lam(1, 1).real(), 0.09, 1e-12);
  EXPECT_NEAR(lam(2, 2).real(), 0.04, 1e-12);
  EXPECT_NEAR(trace_sqrt_psd(lam), 1.0, 1e-12);
}

TEST(LambdaMatrix, TraceSqrtMatchesFidelity) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = random_density(4, 1 + trial % 4, 0.0, rng);
    const auto sigma = random_density(4, 1 + (trial / 4) % 4, 0.0, rng);
    EXPECT_NEAR(trace_sqrt_psd(lambda_matrix(rho, sigma)), fidelity_exact(rho, sigma), 1e-9);
  }
}

TEST(PsdProjection, FixedPointAndClamp) {
  const auto rho = random_density(5, 3, 0.0, 9);
  EXPECT_LT((psd_projection(rho.matrix()) - rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  const Matrix p = psd_projection(vec({1.0, -1.0}).cast<cplx>().asDiagonal().toDenseMatrix());
  EXPECT_NEAR(p(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(p(1, 1).real(), 0.0, 1e-15);
}

TEST(PsdProjection, NearestInTraceNorm) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix h(5, 5);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) h(r, c) = cplx(n(rng), n(rng));
  h = hermitian_part(h);
  const double best = trace_norm(h - psd_projection(h));
  for (int trial = 0; trial < 100; ++trial) {
    Matrix g(5, 5);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) g(r, c) = cplx(n(rng), n(rng));
    const Matrix x = g * g.adjoint() * (0.1 + trial / 50.0);
    EXPECT_LE(best, trace_norm(h - x) + 1e-12);
  }
}

TEST(RandomDensity, PureState) {
  const auto rho = random_density(4, 1, 0.0, 42);
  const Spectrum s = spectrum(rho);
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-12);
  EXPECT_EQ(s.rank(), 1);
}

TEST(RandomDensity, GapIsEnforced) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Spectrum s = spectrum(random_density(8, 3, 0.05, seed));
    EXPECT_EQ(s.rank(), 3);
    EXPECT_GE(s.gap, 0.05 - 1e-12);
  }
}

TEST(RandomDensity, DeterministicUnderSeed) {
  const auto a = random_density(6, 4, 0.02, 123);
  const auto b = random_density(6, 4, 0.02, 123);
  EXPECT_TRUE(a.matrix() == b.matrix());
}

TEST(RandomDensity, InfeasibleGapThrows) {
  EXPECT_THROW(random_density(8, 5, 0.1, 1), std::invalid_argument);
  EXPECT_THROW(random_density(3, 4, 0.0, 1), std::invalid_argument);
}

TEST(Spectrum, ReconstructionAndOrthonormality) {
  const auto rho = random_density(7, 5, 0.01, 17);
  const Spectrum s = spectrum(rho);
  const Matrix rec = s.eigenvectors * s.eigenvalues.cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();
  EXPECT_LT(op_norm(rec - rho.matrix()), 1e-10);
  EXPECT_LT(op_norm(s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(7, 7)), 1e-10);
  for (int i = 0; i + 1 < 7; ++i) EXPECT_GE(s.eigenvalues(i), s.eigenvalues(i + 1));
}

TEST(Purify, BasisState) {
  const auto p = purify(diagonal_state(vec({1.0, 0.0})));
  EXPECT_NEAR(std::abs(p.vector(0)), 1.0, 1e-12);
  EXPECT_NEAR(p.vector.norm(), 1.0, 1e-12);
}

TEST(Purify, MaximallyMixedQubit) {
  const auto p = purify(diagonal_state(vec({0.5, 0.5})));
  const Matrix psi = Eigen::Map<const Matrix>(p.vector.data(), 2, 2);
  const RealVector schmidt = singular_values(psi);
  EXPECT_NEAR(schmidt(0), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(schmidt(1), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Purify, PartialTraceRecoversState) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_density(5, 1 + seed % 5, 0.0, seed);
    const auto p = purify(rho);
    EXPECT_NEAR(p.vector.norm(), 1.0, 1e-12);
    EXPECT_LT(op_norm(partial_trace_a(p) - rho.matrix()), 1e-10);
  }
}

TEST(Purify, RejectsSubnormalized) {
  EXPECT_THROW(purify(diagonal_state(vec({0.5, 0.2}))), std::invalid_argument);
}

TEST(ProjectSpectrum, ClosedUnitIntervalKeepsState) {
  const auto rho = random_density(4, 1, 0.0, 4);
  const auto out = project_spectrum(rho, Interval::closed(0.0, 1.0));
  EXPECT_LT(op_norm(out.matrix() - rho.matrix()), 1e-12);
}

TEST(ProjectSpectrum, DiagonalWindow) {
  const auto out = project_spectrum(diagonal_state(vec({0.7, 0.2, 0.1})), Interval::half_open(0.15, 1.0));
  EXPECT_NEAR(out.matrix()(0, 0).real(), 0.7, 1e-12);
  EXPECT_NEAR(out.matrix()(1, 1).real(), 0.2, 1e-12);
  EXPECT_NEAR(out.matrix()(2, 2).real(), 0.0, 1e-12);
  EXPECT_NEAR(out.trace(), 0.9, 1e-12);
}

TEST(ProjectSpectrum, TraceIsSumOfSelectedEigenvalues) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_density(6, 6, 0.0, seed);
    const Spectrum s = spectrum(rho);
    const Interval w = Interval::half_open(0.1, 0.4);
    double expected = 0.0;
    for (int i = 0; i < 6; ++i)
      if (w.contains(s.eigenvalues(i))) expected += s.eigenvalues(i);
    EXPECT_NEAR(project_spectrum(rho, w).trace(), expected, 1e-10);
  }
}

TEST(ProjectSpectrum, EmptyWindowGivesZero) {
  const auto out = project_spectrum(diagonal_state(vec({0.7, 0.3})), Interval::half_open(0.8, 0.9));
  EXPECT_EQ(out.trace(), 0.0);
}

TEST(Serialization, JsonRoundTrip) {
  const auto rho = random_density(3, 2, 0.0, 10);
  const auto j = matrix_to_json(rho.matrix());
  EXPECT_EQ(j.at("dim").get<int>(), 3);
  EXPECT_EQ(j.at("re").size(), 9u);
  EXPECT_TRUE(matrix_from_json(j) == rho.matrix());
}

TEST(Serialization, EigenvalueCsv) {
  EXPECT_EQ(eigenvalues_csv(vec({0.75, 0.25})), "index,eigenvalue\n0,0.75\n1,0.25\n");
}
