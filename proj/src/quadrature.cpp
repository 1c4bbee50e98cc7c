#include "ecms/quadrature.hpp"

#include <cmath>

namespace ecms {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

QuadratureGrid::QuadratureGrid(const Coupling& coupling, int points)
    : c(coupling), points_per_dim(points) {
  if (c.N != 2 && c.N != 3) throw config_error("quadrature supports N = 2 and 3 only");
  if (points < 4) throw config_error("grid too small");
  const double two_beta = 2.0 * c.beta.get_d();
  if (c.N == 2) {
    delta2.resize(points);
    weights.assign(points, 1.0 / points);
    for (int i = 0; i < points; ++i) {
      double u = 4.0 * kPi * i / points;
      delta2[i] = std::pow(std::fabs(std::sin(u / 2.0)), two_beta);
    }
  } else {
    delta2.resize(static_cast<size_t>(points) * points);
    weights.assign(delta2.size(), 1.0 / static_cast<double>(delta2.size()));
    for (int i = 0; i < points; ++i) {
      double s = static_cast<double>(i) / points;
      for (int j = 0; j < points; ++j) {
        double t = static_cast<double>(j) / points;
        // root arguments: x1-x2 = 2pi(2s-t), x2-x3 = 2pi(2t-s), x1-x3 = 2pi(s+t)
        double d = std::pow(std::fabs(std::sin(kPi * (2 * s - t))), two_beta) *
                   std::pow(std::fabs(std::sin(kPi * (2 * t - s))), two_beta) *
                   std::pow(std::fabs(std::sin(kPi * (s + t))), two_beta);
        delta2[static_cast<size_t>(i) * points + j] = d;
      }
    }
  }
}

std::vector<std::complex<double>> tabulate(const SymPoly& f, const QuadratureGrid& g, Exec exec) {
  if (f.n() != g.c.N) throw config_error("rank mismatch");
  const int P = g.points_per_dim;
  std::vector<std::complex<double>> out(g.size());
  // collect orbit frequency data once: per term, the integer frequencies of
  // each orbit exponential in the torus coordinates
  struct Harmonic {
    double c1, c2;  // frequency pair (c2 unused for N = 2)
    double coeff;
  };
  std::vector<Harmonic> harmonics;
  for (const auto& [w, q] : f.terms()) {
    double coeff = q.get_d();
    std::vector<int> p = w.parts();
    std::sort(p.begin(), p.end());
    do {
      if (g.c.N == 2) {
        harmonics.push_back({(p[0] - p[1]) / 2.0, 0.0, coeff});
      } else {
        harmonics.push_back({static_cast<double>(p[0] - p[1]), static_cast<double>(p[1] - p[2]),
                             coeff});
      }
    } while (std::next_permutation(p.begin(), p.end()));
  }
  parallel_for(exec, g.size(), [&](std::ptrdiff_t idx) {
    std::complex<double> acc(0, 0);
    if (g.c.N == 2) {
      double u = 4.0 * kPi * static_cast<double>(idx) / P;
      for (const auto& h : harmonics) acc += h.coeff * std::polar(1.0, h.c1 * u);
    } else {
      double s = static_cast<double>(idx / P) / P;
      double t = static_cast<double>(idx % P) / P;
      for (const auto& h : harmonics)
        acc += h.coeff * std::polar(1.0, 2.0 * kPi * (h.c1 * s + h.c2 * t));
    }
    out[idx] = acc;
  });
  return out;
}

std::complex<double> quad_inner(const std::vector<std::complex<double>>& fv,
                                const std::vector<std::complex<double>>& gv,
                                const QuadratureGrid& grid) {
  if (fv.size() != gv.size() || static_cast<int>(fv.size()) != grid.size())
    throw config_error("tabulation size mismatch");
  std::complex<double> acc(0, 0);
  for (int i = 0; i < grid.size(); ++i)
    acc += std::conj(fv[i]) * gv[i] * grid.delta2[i] * grid.weights[i];
  return acc;
}

std::complex<double> quad_inner(const SymPoly& f, const SymPoly& g, const QuadratureGrid& grid) {
  return quad_inner(tabulate(f, grid), tabulate(g, grid), grid);
}

}  // namespace ecms
