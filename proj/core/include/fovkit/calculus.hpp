#pragma once

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "fovkit/blaschke.hpp"
#include "fovkit/linalg.hpp"

namespace fov {

/**
 * Closed-form disk-algebra function, stored as an immutable expression tree.
 *
 * Leaves are polynomials, Möbius maps z -> (a + b z) / (c + d z) and finite
 * Blaschke products; interior nodes are composition and the dilation
 * z -> inner(rho z). Copies share the tree.
 */
class DiskFunction {
 public:
  struct Polynomial {
    std::vector<Complex> coefficients;  // constant term first
  };
  struct Mobius {
    Complex a, b, c, d;
  };
  struct Blaschke {
    BlaschkeProduct product;
  };
  struct Compose;
  struct Scale;
  struct Node;

  static constexpr std::size_t kMaxDepth = 64;

  static DiskFunction polynomial(std::vector<Complex> coefficients);
  static DiskFunction mobius(Complex a, Complex b, Complex c, Complex d);
  static DiskFunction blaschke(BlaschkeProduct product);
  static DiskFunction compose(DiskFunction outer, DiskFunction inner);
  static DiskFunction scale(double rho, DiskFunction inner);
  static DiskFunction identity() { return polynomial({0.0, 1.0}); }

  const Node& node() const noexcept;
  std::size_t depth() const noexcept { return depth_; }

 private:
  DiskFunction(std::shared_ptr<const Node> node, std::size_t depth) : node_(std::move(node)), depth_(depth) {}

  std::shared_ptr<const Node> node_;
  std::size_t depth_ = 1;
};

struct DiskFunction::Compose {
  DiskFunction outer;
  DiskFunction inner;
};

struct DiskFunction::Scale {
  double rho;
  DiskFunction inner;
};

struct DiskFunction::Node : std::variant<Polynomial, Mobius, Blaschke, Compose, Scale> {
  using variant::variant;
};

inline const DiskFunction::Node& DiskFunction::node() const noexcept { return *node_; }

/// Disk automorphism z -> (alpha + z) / (1 + conj(alpha) z), |alpha| < 1.
class MobiusAutomorphism {
 public:
  explicit MobiusAutomorphism(Complex alpha);

  Complex alpha() const noexcept { return alpha_; }
  Complex operator()(Complex z) const { return (alpha_ + z) / (1.0 + std::conj(alpha_) * z); }

  DiskFunction function() const;
  DiskFunction inverse() const;

 private:
  Complex alpha_;
};

/// Throws PoleHit when a Möbius denominator |c + d z| <= 1e-13.
Complex eval_scalar(const DiskFunction& f, Complex z);

/// Holomorphic functional calculus on the closed-form tree: Horner for
/// polynomials, one linear solve per Möbius node and per Blaschke factor,
/// inner-first for compositions. Throws PolesNearSpectrum when a required
/// solve is singular.
CMatrix eval_matrix(const DiskFunction& f, const CMatrix& t);

/// g = phi_alpha^{-1} o f, which vanishes at the origin when alpha = f(0).
/// Throws AlphaOnCircle if |alpha| >= 1 - 1e-12.
DiskFunction normalize_through_automorphism(const DiskFunction& f, Complex alpha);

/// max |f| over n equally spaced points of the unit circle.
double circle_sup(const DiskFunction& f, std::size_t n);

}  // namespace fov
