#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fovkit/calculus.hpp"
#include "fovkit/errors.hpp"
#include "fovkit/numrange.hpp"
#include "oracles.hpp"

using namespace fov;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected fov::Error";
  return ErrorCode::InvalidArgument;
}

const CMatrix& jordan() {
  static const CMatrix t{{0.0, 2.0}, {0.0, 0.0}};
  return t;
}

DiskFunction sample_blaschke() {
  return DiskFunction::blaschke(BlaschkeProduct(Complex(0.0, 1.0), {0.0, Complex(0.3, -0.4)}));
}

}  // namespace

TEST(EvalMatrix, PolynomialByHorner) {
  const CMatrix t = oracle::random_matrix(3, 4);
  const auto f = DiskFunction::polynomial({1.0, Complex(0.0, 2.0), -0.5});
  const CMatrix expected = CMatrix::identity(3) + Complex(0.0, 2.0) * t + Complex(-0.5) * (t * t);
  EXPECT_LT(max_abs_diff(eval_matrix(f, t), expected), 1e-14);
}

TEST(EvalMatrix, MobiusOnNilpotentBlockIsAffine) {
  // (1 - 2z)/(2 - z) = 1/2 - 3z/4 + O(z^2), and T^2 = 0.
  const auto f = DiskFunction::mobius(1.0, -2.0, 2.0, -1.0);
  const CMatrix expected = Complex(0.5) * CMatrix::identity(2) - Complex(0.75) * jordan();
  EXPECT_LT(max_abs_diff(eval_matrix(f, jordan()), expected), 1e-12);
  EXPECT_NEAR(numerical_radius(eval_matrix(f, jordan())), 1.25, 1e-9);
}

TEST(EvalMatrix, DiagonalInputMatchesScalarEvaluation) {
  const std::vector<Complex> d{Complex(0.2, 0.1), -0.7, Complex(0.0, 0.5)};
  const CMatrix t = CMatrix::diagonal(d);
  const std::vector<DiskFunction> fs{
      sample_blaschke(),
      DiskFunction::mobius(Complex(0.1, 0.2), 1.0, 1.0, Complex(0.1, -0.2)),
      DiskFunction::compose(sample_blaschke(), DiskFunction::polynomial({0.0, 0.5, 0.25})),
      DiskFunction::scale(0.8, sample_blaschke()),
  };
  for (const auto& f : fs) {
    const CMatrix ft = eval_matrix(f, t);
    for (std::size_t i = 0; i < d.size(); ++i) {
      EXPECT_LT(std::abs(ft(i, i) - eval_scalar(f, d[i])), 1e-13);
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (i != j) EXPECT_LT(std::abs(ft(i, j)), 1e-14);
      }
    }
  }
}

TEST(EvalMatrix, CompositionEvaluatesInnerFirst) {
  const CMatrix t = 0.3 * oracle::random_matrix(4, 9);
  const auto inner = DiskFunction::polynomial({Complex(0.1, 0.0), 0.5});
  const auto outer = sample_blaschke();
  const CMatrix direct = eval_matrix(DiskFunction::compose(outer, inner), t);
  EXPECT_LT(max_abs_diff(direct, eval_matrix(outer, eval_matrix(inner, t))), 1e-14);
  const CMatrix scaled = eval_matrix(DiskFunction::scale(0.5, outer), t);
  EXPECT_LT(max_abs_diff(scaled, eval_matrix(outer, Complex(0.5) * t)), 1e-14);
}

TEST(EvalMatrix, SimilarityCommutesWithCalculus) {
  // f(S D S^-1) = S f(D) S^-1 for diagonalizable input.
  const std::vector<Complex> d{Complex(0.3, 0.1), -0.4, Complex(0.1, -0.6)};
  const CMatrix s = oracle::random_matrix(3, 21) + Complex(2.0) * CMatrix::identity(3);
  const CMatrix s_inv = solve(s, CMatrix::identity(3));
  const CMatrix t = s * CMatrix::diagonal(d) * s_inv;
  const auto f = sample_blaschke();
  const CMatrix expected = s * eval_matrix(f, CMatrix::diagonal(d)) * s_inv;
  EXPECT_LT(max_abs_diff(eval_matrix(f, t), expected), 1e-11);
}

TEST(EvalMatrix, PolesOnTheSpectrumAreReported) {
  const auto f = DiskFunction::mobius(1.0, 0.0, 1.0, -1.0);
  EXPECT_EQ(code_of([&] { eval_matrix(f, CMatrix::identity(2)); }), ErrorCode::PolesNearSpectrum);
  EXPECT_EQ(code_of([&] { eval_scalar(f, 1.0); }), ErrorCode::PoleHit);
}

TEST(DiskFunction, ConstructionPreconditions) {
  EXPECT_EQ(code_of([] { DiskFunction::mobius(1.0, 1.0, 0.0, 0.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { DiskFunction::scale(1.5, DiskFunction::identity()); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { DiskFunction::scale(0.0, DiskFunction::identity()); }), ErrorCode::InvalidArgument);
  DiskFunction f = DiskFunction::identity();
  EXPECT_EQ(code_of([&] {
              for (int k = 0; k < 100; ++k) f = DiskFunction::compose(f, DiskFunction::identity());
            }),
            ErrorCode::InvalidArgument);
}

TEST(MobiusAutomorphism, InverseUndoesForwardMap) {
  const MobiusAutomorphism phi(Complex(0.4, -0.3));
  const auto round_trip = DiskFunction::compose(phi.inverse(), phi.function());
  for (Complex z : {Complex(0.0), Complex(0.5, 0.5), Complex(-0.9, 0.1)}) {
    EXPECT_LT(std::abs(eval_scalar(round_trip, z) - z), 1e-14);
    EXPECT_LT(std::abs(eval_scalar(phi.function(), z) - phi(z)), 1e-15);
  }
  EXPECT_LT(std::abs(phi(0.0) - phi.alpha()), 1e-16);
  EXPECT_THROW(MobiusAutomorphism(1.0), Error);
}

TEST(NormalizeThroughAutomorphism, ResultVanishesAtOrigin) {
  const auto f = DiskFunction::mobius(1.0, -2.0, 2.0, -1.0);
  const Complex alpha = eval_scalar(f, 0.0);
  const auto g = normalize_through_automorphism(f, alpha);
  EXPECT_LT(std::abs(eval_scalar(g, 0.0)), 1e-15);
  const MobiusAutomorphism phi(alpha);
  for (Complex z : {Complex(0.2, 0.3), Complex(-0.5)}) {
    EXPECT_LT(std::abs(phi(eval_scalar(g, z)) - eval_scalar(f, z)), 1e-14);
  }
  EXPECT_EQ(code_of([&] { normalize_through_automorphism(f, 0.1); }), ErrorCode::InvalidArgument);
  const auto constant = DiskFunction::polynomial({1.0});
  EXPECT_EQ(code_of([&] { normalize_through_automorphism(constant, 1.0); }), ErrorCode::AlphaOnCircle);
  const auto h = DiskFunction::polynomial({0.0, 0.5});
  EXPECT_LT(std::abs(eval_scalar(normalize_through_automorphism(h, 0.0), 0.3) - 0.15), 1e-16);
}

TEST(CircleSup, BlaschkeIsUnimodularAndPolynomialMatchesGrid) {
  EXPECT_NEAR(circle_sup(sample_blaschke(), 512), 1.0, 1e-13);
  const auto p = DiskFunction::polynomial({0.5, 0.25, Complex(0.0, 0.25)});
  double grid = 0.0;
  for (int k = 0; k < 512; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / 512);
    grid = std::max(grid, std::abs(0.5 + 0.25 * z + Complex(0.0, 0.25) * z * z));
  }
  EXPECT_NEAR(circle_sup(p, 512), grid, 1e-15);
}
