#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "twoatom/entanglement.hpp"
#include "twoatom/random.hpp"

using namespace twoatom;
using twoatom::testing::max_abs;
using twoatom::testing::oracle_pure_concurrence;

namespace {

DensityMatrix diag_state(double a, double b, double c, double d) {
  return make_density(Eigen::Vector4cd(a, b, c, d).asDiagonal());
}

}  // namespace

TEST(Concurrence, Examples) {
  EXPECT_NEAR(concurrence(pure_state(ket::a())), 1.0, 1e-12);
  Rng rng(3);
  for (int k = 0; k < 50; ++k) EXPECT_LT(concurrence(random_product(rng)), 1e-9);
}

TEST(Concurrence, WernerGrid) {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    for (Anchor a : {Anchor::a, Anchor::s, Anchor::plus, Anchor::minus})
      EXPECT_NEAR(concurrence(werner_state(p, a)), std::max(0.0, (3 * p - 1) / 2), 1e-9) << p;
    const double f = (3 * p + 1) / 4;  // p = (4F - 1)/3
    EXPECT_NEAR(concurrence(werner_state(p, Anchor::a)), std::max(0.0, 2 * f - 1), 1e-9);
  }
}

TEST(Concurrence, PureStateOracle) {
  Rng rng(17);
  for (int k = 0; k < 300; ++k) {
    const Vector4 psi = random_ket(rng);
    EXPECT_NEAR(concurrence(pure_state(psi)), oracle_pure_concurrence(psi), 1e-9);
  }
}

TEST(Concurrence, RangeAndInvalidInput) {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const double c = concurrence(random_family_state(rng, k));
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
  }
}

TEST(ConcurrenceSqrtForm, Examples) {
  EXPECT_NEAR(concurrence_sqrt_form(DensityMatrix::maximally_mixed()), 0.0, 1e-12);
  EXPECT_NEAR(concurrence_sqrt_form(pure_state(ket::s())), 1.0, 1e-9);
  EXPECT_NEAR(concurrence_sqrt_form(pure_state(ket::a())), 1.0, 1e-9);
}

TEST(ConcurrenceSqrtForm, AgreesWithPrimaryOnAllFamilies) {
  Rng rng(500);
  double worst = 0;
  for (int k = 0; k < 500; ++k) {
    const auto rho = random_family_state(rng, k);
    worst = std::max(worst, std::abs(concurrence(rho) - concurrence_sqrt_form(rho)));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(ConcurrenceSqrtForm, RootMatrixSquaresToInnerProduct) {
  Rng rng(8);
  for (int k = 0; k < 50; ++k) {
    const auto rho = random_density(rng);
    const Matrix4 root = sqrt_psd(rho.matrix());
    const Matrix4 inner = root * spin_flip(rho) * root;
    const Matrix4 hat = concurrence_root_matrix(rho);
    EXPECT_LT(max_abs(hat * hat - inner), 1e-12);
  }
}

TEST(SpinFlip, Examples) {
  const auto mixed = DensityMatrix::maximally_mixed();
  EXPECT_LT(max_abs(spin_flip(mixed) - mixed.matrix()), 1e-15);
  const auto singlet = pure_state(ket::a());
  EXPECT_LT(max_abs(spin_flip(singlet) - singlet.matrix()), 1e-15);
  EXPECT_LT(max_abs(spin_flip(diag_state(1, 0, 0, 0)) - diag_state(0, 0, 0, 1).matrix()), 1e-15);
}

TEST(SpinFlip, Involution) {
  Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    const auto rho = random_family_state(rng, k);
    EXPECT_LT(max_abs(spin_flip(spin_flip(rho)) - rho.matrix()), 1e-12);
  }
}

TEST(Fidelity, Examples) {
  EXPECT_NEAR(fidelity_singlet(pure_state(ket::a())), 1.0, 1e-15);
  EXPECT_NEAR(fidelity_singlet(bell_diagonal(0.4, 0.3, 0.2, 0.1)), 0.1, 1e-15);
  for (double p : {0.0, 0.3, 0.5, 1.0})
    EXPECT_NEAR(fidelity_singlet(werner_state(p, Anchor::s)), (1 - p) / 4, 1e-15);
}

TEST(Fidelity, MatchesOverlapWithSinglet) {
  Rng rng(4);
  const Vector4 a = ket::a();
  for (int k = 0; k < 100; ++k) {
    const auto rho = random_density(rng);
    EXPECT_NEAR(fidelity_singlet(rho), (a.adjoint() * rho.matrix() * a)(0).real(), 1e-14);
  }
}

TEST(Purity, Examples) {
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed()), 0.25, 1e-15);
  Rng rng(9);
  for (int k = 0; k < 20; ++k) EXPECT_NEAR(purity(random_pure(rng)), 1.0, 1e-12);

  Matrix4 w = Matrix4::Identity() / 8.0;
  const Vector4 a = ket::a();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w(i, j) += 0.5 * a(i) * std::conj(a(j));
  cplx tr = 0;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) tr += w(i, k) * w(k, i);
  EXPECT_NEAR(purity(werner_state(0.5, Anchor::a)), tr.real(), 1e-15);
  EXPECT_NEAR(purity(werner_state(0.5, Anchor::a)), 7.0 / 16.0, 1e-15);
}

TEST(LocalUnitary, AreUnitaryProducts) {
  for (LocalLabel l : {LocalLabel::Us, LocalLabel::Uplus, LocalLabel::Uminus}) {
    const auto u = LocalUnitary::make(l);
    EXPECT_EQ(u.label, l);
    EXPECT_LT(max_abs(u.u * u.u.adjoint() - Matrix4::Identity()), 1e-12);
  }
}

TEST(LocalUnitary, MapsWernerFamily) {
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    const auto wa = werner_state(p, Anchor::a);
    EXPECT_LT(max_abs(apply_local(LocalUnitary::make(LocalLabel::Us), wa).matrix() -
                      werner_state(p, Anchor::s).matrix()),
              1e-12);
    EXPECT_LT(max_abs(apply_local(LocalUnitary::make(LocalLabel::Uplus), wa).matrix() -
                      werner_state(p, Anchor::plus).matrix()),
              1e-12);
    EXPECT_LT(max_abs(apply_local(LocalUnitary::make(LocalLabel::Uminus), wa).matrix() -
                      werner_state(p, Anchor::minus).matrix()),
              1e-12);
  }
}

TEST(LocalUnitary, FlipsXStateCoherence) {
  const auto us = LocalUnitary::make(LocalLabel::Us);
  for (double r23 : {-0.4, -0.1, 0.0, 0.2, 0.45}) {
    const auto out = apply_local(us, x_initial(0.6, 0.4, r23));
    EXPECT_LT(max_abs(out.matrix() - x_initial(0.6, 0.4, -r23).matrix()), 1e-15);
  }
}

TEST(LocalUnitary, ConcurrenceInvariant) {
  Rng rng(200);
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const auto rho = random_family_state(rng, k);
    const double c = concurrence(rho);
    for (LocalLabel l : {LocalLabel::Us, LocalLabel::Uplus, LocalLabel::Uminus})
      worst = std::max(worst, std::abs(concurrence(apply_local(LocalUnitary::make(l), rho)) - c));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(XForm, ShortcutAgreesOnXStates) {
  Rng rng(30);
  for (int k = 0; k < 300; ++k) {
    // Generic X state: random diagonal and two anti-diagonal coherences.
    double d[4], sum = 0;
    for (double& x : d) sum += (x = uniform(rng, 0, 1));
    for (double& x : d) x /= sum;
    Matrix4 m = Matrix4::Zero();
    for (int i = 0; i < 4; ++i) m(i, i) = d[i];
    m(0, 3) = std::polar(uniform(rng, 0, 1) * std::sqrt(d[0] * d[3]), uniform(rng, 0, 6.28));
    m(1, 2) = std::polar(uniform(rng, 0, 1) * std::sqrt(d[1] * d[2]), uniform(rng, 0, 6.28));
    m(3, 0) = std::conj(m(0, 3));
    m(2, 1) = std::conj(m(1, 2));
    const auto rho = make_density(m);
    EXPECT_EQ(x_form_defect(rho.matrix()), 0.0);
    EXPECT_NEAR(concurrence_x_form(rho), concurrence(rho), 1e-9);
  }
  for (int k = 0; k < 100; ++k) {
    const auto rho = random_x_state(rng).density();
    EXPECT_NEAR(concurrence_x_form(rho), concurrence(rho), 1e-9);
  }
}

TEST(SeparableMixtures, FidelityAtMostOneHalf) {
  Rng rng(1000);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix4 acc = Matrix4::Zero();
    double total = 0;
    for (int k = 0; k < 1000; ++k) {
      const double w = uniform(rng, 0, 1);
      acc += w * random_product(rng).matrix();
      total += w;
    }
    EXPECT_LE(fidelity_singlet(make_density(acc / total)), 0.5 + 1e-9);
  }
  for (int k = 0; k < 1000; ++k) EXPECT_LE(fidelity_singlet(random_product(rng)), 0.5 + 1e-9);
}
