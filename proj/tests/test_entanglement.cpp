#include <gtest/gtest.h>

#include <cmath>

#include "cutpaste/entanglement.hpp"
#include "cutpaste/errors.hpp"
#include "test_support.hpp"

using namespace cutpaste;
namespace t = cutpaste::testing;

namespace {

DensityMatrix bell() { return DensityMatrix::pure(omega_plus()); }

DensityMatrix local(const DensityMatrix& rho, const ComplexMatrix& u, const ComplexMatrix& v) {
  const ComplexMatrix uv = kron(u, v);
  return DensityMatrix(uv * rho.matrix() * uv.adjoint());
}

// Negativity straight from the eigenvalues of the partial transpose, written
// out by index instead of going through partial_transpose.
double negativity_reference(const ComplexMatrix& r) {
  ComplexMatrix pt(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = r(2 * a + d, 2 * c + b);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += std::max(0.0, -es.eigenvalues()(i));
  return s;
}

}  // namespace

TEST(Concurrence, BellIsOne) {
  const auto c = concurrence(bell());
  EXPECT_NEAR(c.value, 1.0, 1e-12);
  EXPECT_NEAR(concurrence(DensityMatrix::pure(singlet())).value, 1.0, 1e-12);
}

TEST(Concurrence, MaximallyMixed) {
  const auto c = concurrence(DensityMatrix::maximally_mixed(4));
  EXPECT_EQ(c.value, 0.0);
  EXPECT_NEAR(c.pre_clamp, -0.5, 1e-12);
}

TEST(Concurrence, ProductIsZero) {
  const ComplexVector a = t::random_pure(2), b = t::random_pure(2);
  const ComplexVector ab = kron(ComplexMatrix(a), ComplexMatrix(b)).col(0);
  EXPECT_NEAR(concurrence(DensityMatrix::pure(ab)).value, 0.0, 1e-7);
}

TEST(Concurrence, PureStateClosedForm) {
  // C = 2 |ad - bc| for a|00> + b|01> + c|10> + d|11>
  for (int i = 0; i < 50; ++i) {
    const ComplexVector psi = t::random_pure(4);
    const double ref = 2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2));
    EXPECT_NEAR(concurrence(DensityMatrix::pure(psi)).value, ref, 1e-9);
  }
}

TEST(Concurrence, WernerClosedForm) {
  for (double w : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 0.96, 1.0}) {
    const DensityMatrix rho = werner_state(w, bell());
    EXPECT_NEAR(concurrence(rho).value, std::max(0.0, (3.0 * w - 1.0) / 2.0), 1e-12) << w;
  }
}

TEST(Concurrence, RejectsWrongDimension) {
  try {
    concurrence(DensityMatrix::maximally_mixed(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadDimension);
  }
  EXPECT_THROW(negativity(DensityMatrix::maximally_mixed(3)), Error);
}

TEST(Concurrence, LocalUnitaryInvariance) {
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho(t::random_state(4, 1 + i % 4));
    const DensityMatrix moved = local(rho, t::random_unitary(2), t::random_unitary(2));
    EXPECT_LT(std::abs(concurrence(moved).value - concurrence(rho).value), 1e-10);
  }
}

TEST(Concurrence, Convexity) {
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix a = t::random_state(4, 1 + i % 3);
    const ComplexMatrix b = t::random_state(4, 1 + (i / 3) % 3);
    const double mix = concurrence(DensityMatrix(0.5 * (a + b))).value;
    EXPECT_LE(mix, 0.5 * concurrence(DensityMatrix(a)).value + 0.5 * concurrence(DensityMatrix(b)).value + 1e-10);
  }
}

TEST(Negativity, Examples) {
  EXPECT_NEAR(negativity(bell()), 0.5, 1e-12);
  EXPECT_NEAR(negativity_reference(bell().matrix()), 0.5, 1e-12);
  ComplexMatrix zero = ComplexMatrix::Zero(4, 4);
  zero(0, 0) = 1.0;
  EXPECT_NEAR(negativity(DensityMatrix(zero)), 0.0, 1e-15);
}

TEST(Negativity, WernerBoundary) {
  // Partial-transpose spectrum has (1 - 3W)/4, crossing zero at W = 1/3.
  EXPECT_NEAR(negativity(werner_state(1.0 / 3.0, bell())), 0.0, 1e-12);
  for (double w : {0.5, 0.9}) {
    EXPECT_NEAR(negativity(werner_state(w, bell())), (3.0 * w - 1.0) / 4.0, 1e-12);
  }
  EXPECT_NEAR(negativity(werner_state(0.2, bell())), 0.0, 1e-15);
}

TEST(Negativity, AgreesWithIndexReference) {
  for (int i = 0; i < 50; ++i) {
    const ComplexMatrix rho = t::random_state(4, 1 + i % 4);
    EXPECT_NEAR(negativity(DensityMatrix(rho)), negativity_reference(rho), 1e-12);
  }
}

TEST(Measures, VerdictAgreementOnRandomStates) {
  int disagreements = 0;
  for (int i = 0; i < 500; ++i) {
    const DensityMatrix rho(t::random_state(4, 1 + i % 4));
    const bool by_c = concurrence(rho).value > 1e-8;
    const bool by_n = negativity(rho) > 1e-8;
    if (by_c != by_n) {
      ++disagreements;
      ADD_FAILURE() << "C=" << concurrence(rho).value << " N=" << negativity(rho);
    }
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(Measures, ExactTwoQubitBounds) {
  for (int i = 0; i < 300; ++i) {
    const DensityMatrix rho(t::random_state(4, 1 + i % 4));
    const double c = concurrence(rho).value;
    const double n = negativity(rho);
    EXPECT_LE(n, c / 2.0 + 1e-9);
    EXPECT_GE(n, min_negativity_for_concurrence(c) - 1e-9);
  }
}

TEST(Werner, Limits) {
  EXPECT_LT((werner_state(1.0, bell()).matrix() - bell().matrix()).norm(), 1e-15);
  EXPECT_LT((werner_state(0.0, bell()).matrix() - ComplexMatrix::Identity(4, 4) / 4.0).norm(), 1e-15);
  EXPECT_NEAR(concurrence(werner_state(0.96, bell())).value, 0.94, 1e-12);
}

TEST(Werner, Validation) {
  EXPECT_THROW(werner_state(1.2, bell()), Error);
  const ComplexVector prod = (ComplexVector(4) << 1.0, 0.0, 0.0, 0.0).finished();
  EXPECT_THROW(werner_state(0.5, DensityMatrix::pure(prod)), Error);
}

TEST(DensityMatrix, Validation) {
  EXPECT_THROW(DensityMatrix(pauli::x()), Error);
  EXPECT_THROW(DensityMatrix(pauli::plus() + 0.5 * pauli::identity()), Error);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{neg}, Error);
}
