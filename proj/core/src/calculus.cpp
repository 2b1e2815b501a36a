#include "fovkit/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fovkit/errors.hpp"

namespace fov {

namespace {

constexpr double kDenominatorTol = 1e-13;
constexpr double kAlphaMargin = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

CMatrix guarded_solve(const CMatrix& a, const CMatrix& b) {
  try {
    return solve(a, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Singular) throw Error(ErrorCode::PolesNearSpectrum, e.what());
    throw;
  }
}

}  // namespace

DiskFunction DiskFunction::polynomial(std::vector<Complex> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  return {std::make_shared<const Node>(Polynomial{std::move(coefficients)}), 1};
}

DiskFunction DiskFunction::mobius(Complex a, Complex b, Complex c, Complex d) {
  if (std::abs(c) + std::abs(d) == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "Mobius denominator is identically zero");
  }
  return {std::make_shared<const Node>(Mobius{a, b, c, d}), 1};
}

DiskFunction DiskFunction::blaschke(BlaschkeProduct product) {
  return {std::make_shared<const Node>(Blaschke{std::move(product)}), 1};
}

DiskFunction DiskFunction::compose(DiskFunction outer, DiskFunction inner) {
  const std::size_t depth = 1 + std::max(outer.depth(), inner.depth());
  if (depth > kMaxDepth) throw Error(ErrorCode::InvalidArgument, "function tree too deep");
  return {std::make_shared<const Node>(Compose{std::move(outer), std::move(inner)}), depth};
}

DiskFunction DiskFunction::scale(double rho, DiskFunction inner) {
  if (!(rho > 0.0 && rho <= 1.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must lie in (0, 1]");
  const std::size_t depth = 1 + inner.depth();
  if (depth > kMaxDepth) throw Error(ErrorCode::InvalidArgument, "function tree too deep");
  return {std::make_shared<const Node>(Scale{rho, std::move(inner)}), depth};
}

MobiusAutomorphism::MobiusAutomorphism(Complex alpha) : alpha_(alpha) {
  if (!(std::abs(alpha) < 1.0)) throw Error(ErrorCode::InvalidArgument, "automorphism parameter must satisfy |alpha| < 1");
}

DiskFunction MobiusAutomorphism::function() const {
  return DiskFunction::mobius(alpha_, 1.0, 1.0, std::conj(alpha_));
}

DiskFunction MobiusAutomorphism::inverse() const {
  return DiskFunction::mobius(-alpha_, 1.0, 1.0, -std::conj(alpha_));
}

Complex eval_scalar(const DiskFunction& f, Complex z) {
  return std::visit(
      Overloaded{
          [&](const DiskFunction::Polynomial& p) {
            Complex acc = 0.0;
            for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) acc = acc * z + *it;
            return acc;
          },
          [&](const DiskFunction::Mobius& m) {
            const Complex den = m.c + m.d * z;
            if (std::abs(den) <= kDenominatorTol) throw Error(ErrorCode::PoleHit, "Mobius denominator vanishes");
            return (m.a + m.b * z) / den;
          },
          [&](const DiskFunction::Blaschke& b) { return eval(b.product, z); },
          [&](const DiskFunction::Compose& c) { return eval_scalar(c.outer, eval_scalar(c.inner, z)); },
          [&](const DiskFunction::Scale& s) { return eval_scalar(s.inner, s.rho * z); },
      },
      f.node());
}

CMatrix eval_matrix(const DiskFunction& f, const CMatrix& t) {
  const std::size_t n = t.dim();
  const CMatrix id = CMatrix::identity(n);
  return std::visit(
      Overloaded{
          [&](const DiskFunction::Polynomial& p) {
            CMatrix acc(n);
            for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
              acc = acc * t + *it * id;
            }
            return acc;
          },
          [&](const DiskFunction::Mobius& m) {
            return guarded_solve(m.c * id + m.d * t, m.a * id + m.b * t);
          },
          [&](const DiskFunction::Blaschke& b) {
            CMatrix acc = b.product.constant() * id;
            for (const auto& a : b.product.zeros()) {
              acc = acc * guarded_solve(id - std::conj(a) * t, a * id - t);
            }
            return acc;
          },
          [&](const DiskFunction::Compose& c) { return eval_matrix(c.outer, eval_matrix(c.inner, t)); },
          [&](const DiskFunction::Scale& s) { return eval_matrix(s.inner, s.rho * t); },
      },
      f.node());
}

DiskFunction normalize_through_automorphism(const DiskFunction& f, Complex alpha) {
  if (std::abs(alpha) >= 1.0 - kAlphaMargin) {
    throw Error(ErrorCode::AlphaOnCircle, "|f(0)| = 1, the function is constant on the disk");
  }
  const Complex at_zero = eval_scalar(f, 0.0);
  if (std::abs(at_zero - alpha) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "alpha must equal f(0)");
  }
  if (alpha == Complex{}) return f;
  return DiskFunction::compose(MobiusAutomorphism(alpha).inverse(), f);
}

double circle_sup(const DiskFunction& f, std::size_t n) {
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    best = std::max(best, std::abs(eval_scalar(f, std::polar(1.0, t))));
  }
  return best;
}

}  // namespace fov
