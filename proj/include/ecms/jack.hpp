#pragma once

#include <shared_mutex>
#include <span>
#include <string>

#include "ecms/sympoly.hpp"

namespace ecms {

/// Image of a W-invariant polynomial under the gauge-transformed trigonometric
/// Hamiltonian sum (z_i d_i)^2 + beta sum_{i<j} (z_i+z_j)/(z_i-z_j)(z_i d_i - z_j d_j),
/// acting on mean-shifted exponents, plus the constant (rho|rho) - e0. With
/// this normalization Jacobi polynomials are eigenfunctions with eigenvalue
/// trig_eigenvalue(lambda).
SymPoly h0_apply(const SymPoly& f, const Coupling& c);

struct JackPolynomial {
  Weight label;
  Rat beta;
  SymPoly expansion;  // monic on m_label, support strictly below in dominance
  Rat eigenvalue;
};

/// Coordinates of a polynomial in the Jacobi basis.
struct JackExpansion {
  std::map<Weight, Rat> coeffs;
  Rat beta;
};

/// Per-(N, beta) construction cache. Single writer, many readers: completed
/// entries are immutable map nodes, construction takes the exclusive lock.
class JackEngine {
 public:
  explicit JackEngine(Coupling c) : c_(std::move(c)) {}

  const Coupling& coupling() const { return c_; }

  /// Triangular solve along dominance order, cached.
  const JackPolynomial& jack(const Weight& lam);

  void ensure(std::span<const Weight> labels);

  /// Back-substitution along the global order; inverse of the triangular
  /// change of basis.
  JackExpansion jack_expand(const SymPoly& f);

  /// ||J_lam||^2 / ||J_mu||^2 as an exact rational: every Gamma-factor ratio
  /// telescopes over an integer shift.
  Rat norm_sq_ratio(const Weight& lam, const Weight& mu) const;

 private:
  const JackPolynomial& build_locked(const Weight& lam);
  const SymPoly& h0_column_locked(const Weight& kappa);

  Coupling c_;
  std::map<Weight, JackPolynomial> cache_;
  std::map<Weight, SymPoly> h0_cols_;
  std::shared_mutex mu_;
};

/// j_lambda = prod over cells of (a + beta*l + 1)/(a + beta*l + beta); the
/// full partition matters (trailing equal parts change arm/leg statistics).
Rat j_factor(const std::vector<int>& partition, const Coupling& c);

struct CauchyReport {
  bool ok = true;
  int checked_degree = 0;
  std::string mismatch;  // empty when ok
};

/// Expands both sides of the product-form kernel identity
/// prod (1 - kappa X_i Y_j)^(-beta) = sum over partitions of
/// kappa^|lambda| J*_lambda(X) J*_lambda(Y) / j_lambda
/// to total kappa-degree <= degree_cap, exactly, and compares.
CauchyReport cauchy_check(const Coupling& c, int degree_cap);

}  // namespace ecms
