#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fovkit/errors.hpp"
#include "fovkit/numrange.hpp"
#include "fovkit/regions.hpp"
#include "fovkit/verify.hpp"
#include "oracles.hpp"

using namespace fov;

namespace {

ErrorCode drury_error(bool outer, double alpha, double theta) {
  try {
    outer ? drury_params_outer(alpha, theta) : drury_params_inner(alpha, theta);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected fov::Error";
  return ErrorCode::InvalidArgument;
}

// 2 I - e^{-i theta} X - e^{i theta} X*, the defect of Re(e^{-i theta} X) <= I.
CMatrix real_part_defect(const CMatrix& x, double theta, double level) {
  const std::size_t n = x.dim();
  return Complex(2.0 * level) * CMatrix::identity(n) - std::polar(1.0, -theta) * x -
         std::polar(1.0, theta) * x.adjoint();
}

}  // namespace

TEST(Teardrop, SupportFunction) {
  EXPECT_DOUBLE_EQ(teardrop_support(0.5, 0.0), 1.25);
  EXPECT_DOUBLE_EQ(teardrop_support(0.5, std::numbers::pi), 1.0);
  EXPECT_DOUBLE_EQ(teardrop_support(0.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(teardrop_support(1.0, 0.0), 1.0);
  EXPECT_THROW(teardrop_support(1.5, 0.0), Error);
}

TEST(Teardrop, MembershipOfBothDisksAndHull) {
  const Complex alpha(0.3, 0.4);
  const double r = 1.0 - std::norm(alpha);
  for (int k = 0; k < 24; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / 24;
    EXPECT_TRUE(teardrop_contains(alpha, std::polar(0.999, phi)));
    EXPECT_TRUE(teardrop_contains(alpha, alpha + std::polar(0.999 * r, phi)));
  }
  EXPECT_FALSE(teardrop_contains(alpha, 1.05 * (alpha + r * alpha / std::abs(alpha))));
  EXPECT_FALSE(teardrop_contains(alpha, Complex(-1.01, 0.0)));
  EXPECT_FALSE(teardrop_contains(0.5, Complex(0.0, 1.02)));
}

TEST(Teardrop, BoundaryPointsHaveZeroExcess) {
  for (Complex alpha : {Complex(0.5), Complex(0.0), Complex(-0.2, 0.7), Complex(0.0, 1.0)}) {
    const auto pts = teardrop_boundary(alpha, 360);
    EXPECT_GE(pts.size(), 360u);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      EXPECT_NEAR(teardrop_excess(alpha, pts[k].point), 0.0, 1e-6);
      EXPECT_NEAR((std::polar(1.0, -pts[k].phi) * pts[k].point).real(), teardrop_support(alpha, pts[k].phi), 1e-12);
      if (k > 0) EXPECT_LE(pts[k - 1].phi, pts[k].phi);
    }
  }
  EXPECT_EQ(teardrop_boundary(0.5, 360).size(), 364u);
}

TEST(RegionS, PiecewiseBoundaryIsContinuous) {
  EXPECT_DOUBLE_EQ(region_S_boundary(0.0), -0.25);
  EXPECT_DOUBLE_EQ(region_S_boundary(0.5), 0.0);
  EXPECT_DOUBLE_EQ(region_S_boundary(1.0), 1.0);
  EXPECT_DOUBLE_EQ(region_S_boundary(2.0), 4.0);
  EXPECT_NEAR(region_S_boundary(0.5 + 1e-12), 0.0, 1e-11);
  EXPECT_NEAR(region_S_boundary(1.0 + 1e-12), 1.0, 1e-11);
  EXPECT_TRUE(region_S_contains(0.75, 0.5));
  EXPECT_FALSE(region_S_contains(0.75, 0.49));
  try {
    region_S_contains(-0.1, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeT);
  }
}

TEST(RegionS, QFormDefinition) {
  const CMatrix t = oracle::random_matrix(4, 2);
  const CMatrix q = q_form(t, 0.3, -0.1);
  EXPECT_EQ(q, q.adjoint());
  const CMatrix ref = CMatrix::identity(4) + Complex(0.3) * (t + t.adjoint()) + Complex(-0.1) * (t.adjoint() * t);
  EXPECT_LT(max_abs_diff(q, ref), 1e-14);
}

TEST(RegionS, CaseOneCounterexampleDeterminant) {
  // Below the first branch: the Jordan block with w = 1 at t = 0.5, s = -0.01.
  const CMatrix t{{0.0, 2.0}, {0.0, 0.0}};
  const CMatrix q = q_form(t, 0.5, -0.01);
  const Complex det = q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0);
  EXPECT_NEAR(det.real(), -0.04, 1e-12);
  EXPECT_LT(is_psd(q).min_eigenvalue, 0.0);
}

TEST(DruryParams, GridIdentitiesAndSeamAgreement) {
  for (int i = 0; i < 50; ++i) {
    const double alpha = 0.98 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double c = -1.0 + 2.0 * j / 49.0;
      const double theta = std::acos(c);
      if (c <= alpha) {
        const auto p = drury_params_outer(alpha, theta);
        EXPECT_GE(p.t, 0.5 - 1e-12);
        EXPECT_LE(p.t, 1.0 + 1e-12);
        EXPECT_NEAR(p.s, 2.0 * p.t - 1.0, 1e-12);
        EXPECT_NEAR(std::abs(p.omega), 1.0, 1e-12);
      }
      if (c >= alpha) {
        const auto p = drury_params_inner(alpha, theta);
        EXPECT_GE(p.t, -1e-12);
        EXPECT_LE(p.t, 0.5 + 1e-12);
        EXPECT_NEAR(p.s, p.t * p.t - 0.25, 1e-12);
        EXPECT_NEAR(std::abs(p.omega), 1.0, 1e-12);
      }
    }
    const double seam = std::acos(alpha);
    const auto outer = drury_params_outer(alpha, seam);
    const auto inner = drury_params_inner(alpha, seam);
    EXPECT_NEAR(outer.t, 0.5, 1e-12);
    EXPECT_NEAR(inner.t, 0.5, 1e-12);
    EXPECT_NEAR(outer.s, inner.s, 1e-12);
  }
}

TEST(DruryParams, DomainErrors) {
  EXPECT_EQ(drury_error(true, 0.5, 0.0), ErrorCode::DomainError);
  EXPECT_EQ(drury_error(false, 0.5, std::numbers::pi), ErrorCode::DomainError);
  EXPECT_EQ(drury_error(true, 1.0, std::numbers::pi), ErrorCode::DomainError);
  EXPECT_EQ(drury_error(false, -0.1, 0.0), ErrorCode::DomainError);
}

TEST(DruryParams, DegenerateInnerPoint) {
  const auto p = drury_params_inner(0.5, 0.0);
  EXPECT_NEAR(p.t, 0.0, 1e-12);
  EXPECT_NEAR(p.s, -0.25, 1e-12);
  EXPECT_NEAR(std::abs(p.omega), 1.0, 1e-12);
}

TEST(DruryParams, OuterCongruenceIdentity) {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const CMatrix t = random_normalized(rng, 2, 5);
    const double alpha = rng.uniform(0.0, 0.95);
    const double c = rng.uniform(-1.0, alpha);
    const double theta = std::acos(c) * (trial % 2 == 0 ? 1.0 : -1.0);
    const auto p = drury_params_outer(alpha, theta);
    const std::size_t n = t.dim();
    const CMatrix id = CMatrix::identity(n);
    const CMatrix phi_t = solve(id + Complex(alpha) * t, Complex(alpha) * id + t);
    const CMatrix m = id + Complex(alpha) * t;
    // The outer map is stated for the rotation e^{+i theta}.
    const CMatrix lhs = m.adjoint() * real_part_defect(phi_t, -theta, 1.0) * m;
    const CMatrix rhs = Complex(2.0 * (1.0 - alpha * c)) * q_form(p.omega * t, p.t, p.s);
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-10) << "trial " << trial;
  }
}

TEST(DruryParams, InnerCongruenceIdentity) {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const CMatrix t = random_normalized(rng, 2, 5);
    const double alpha = rng.uniform(0.0, 0.95);
    const double c = rng.uniform(alpha, 1.0);
    const double theta = std::acos(c) * (trial % 2 == 0 ? 1.0 : -1.0);
    const auto p = drury_params_inner(alpha, theta);
    const std::size_t n = t.dim();
    const CMatrix id = CMatrix::identity(n);
    const CMatrix m = id + Complex(alpha) * t;
    // phi_alpha(T) - alpha = (1 - alpha^2) T (I + alpha T)^{-1}
    const CMatrix shifted = solve(m, Complex(1.0 - alpha * alpha) * t);
    const CMatrix defect = real_part_defect(shifted, theta, 1.0 - alpha * alpha);
    const CMatrix lhs = Complex(1.0 / (1.0 - alpha * alpha)) * (m.adjoint() * defect * m);
    const CMatrix rhs = Complex(2.0) * q_form(p.omega * t, p.t, p.s);
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-10) << "trial " << trial;
  }
}
