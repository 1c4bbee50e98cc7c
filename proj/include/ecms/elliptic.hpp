#pragma once

#include <complex>
#include <vector>

#include "ecms/sympoly.hpp"

namespace ecms {

struct Nome {
  double p = 0.0;
  Nome() = default;
  explicit Nome(double pp);
  /// tau with p = exp(2 pi i tau) (purely imaginary logarithm for real p > 0).
  std::complex<double> tau() const;
};

/// Cosine expansion of t_k: list of (j, -2j) over divisors j of k, so that
/// t_k(x) = sum -2j (cos jx - 1).
std::vector<std::pair<int, long>> t_k_cos_series(int k);

/// Order-k multiplication operator in the m-basis:
/// beta(beta-1) * (-sum_{j|k} j (m_{j theta} - N(N-1))). poly carries the
/// constant as its m_0 term; constant repeats it for convenience.
struct PotentialOrder {
  int k = 0;
  SymPoly poly;
  Rat constant;
};
PotentialOrder potential_order(int k, const Coupling& c);

struct WpEval {
  std::complex<double> value;
  double tail_bound = 0.0;  // valid for real x
};

/// q-expansion evaluation: 1/(4 sin^2(x/2)) - 1/12 - 2 sum n p^n/(1-p^n)(cos nx - 1).
WpEval wp_qseries(std::complex<double> x, const Nome& nome, int terms);

/// Lattice-sum evaluation over periods (2pi, 2pi tau), used only as an
/// oracle. Rows m in Z are summed in closed form and |n| <= cutoff rows kept,
/// which converges geometrically (a plain |m|,|n| box stalls at O(cutoff^-2)).
std::complex<double> wp_lattice(std::complex<double> x, std::complex<double> tau, int cutoff);

struct ThetaEval {
  std::complex<double> value;       // theta_1(x)
  std::complex<double> normalized;  // theta_1(x) / theta_1'(0)
  double dtheta0 = 0.0;             // theta_1'(0)
};

/// theta_1(x) = 2 sum (-1)^(n-1) exp(tau pi i (n-1/2)^2) sin (2n-1) pi x,
/// parametrized by nome_root = sqrt(p).
ThetaEval theta1(std::complex<double> x, double nome_root, int terms);

/// W_max(p) = 4 sum n|p|^n/(1-|p|^n) * N(N-1) beta(beta-1), summed to
/// relative tail 1e-14.
double w_max(const Nome& nome, const Coupling& c);

/// Solves W_max(p0) = 1/(4 n k_den) by bisection (n from the fundamental
/// weight Gram denominators); unique by strict monotonicity.
double p0_solve(const Coupling& c);

}  // namespace ecms
