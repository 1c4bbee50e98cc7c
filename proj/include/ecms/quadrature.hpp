#pragma once

#include <complex>
#include <vector>

#include "ecms/parallel.hpp"
#include "ecms/sympoly.hpp"

namespace ecms {

/// Periodic trapezoid grid over the fundamental torus, N in {2, 3}.
/// N = 2: single coordinate u in [0, 4pi), Haar measure du/(4pi).
/// N = 3: simple-root coordinates (s, t) in [0, 1)^2, uniform measure.
/// The weight function is delta^2 = prod |sin(<alpha,h>/2)|^(2 beta).
struct QuadratureGrid {
  Coupling c;
  int points_per_dim;
  std::vector<double> delta2;   // pointwise weight, flattened
  std::vector<double> weights;  // Haar weights, sum exactly 1

  QuadratureGrid(const Coupling& coupling, int points);
  int size() const { return static_cast<int>(delta2.size()); }
};

/// Pointwise values of a SymPoly over the grid.
std::vector<std::complex<double>> tabulate(const SymPoly& f, const QuadratureGrid& g,
                                           Exec exec = Exec::Serial);

/// (f, g)_delta = integral of conj(f) g delta^2 d(haar), by the grid rule.
std::complex<double> quad_inner(const SymPoly& f, const SymPoly& g, const QuadratureGrid& grid);
std::complex<double> quad_inner(const std::vector<std::complex<double>>& fv,
                                const std::vector<std::complex<double>>& gv,
                                const QuadratureGrid& grid);

}  // namespace ecms
