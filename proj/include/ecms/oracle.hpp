#pragma once

#include <vector>

#include "ecms/assembly.hpp"
#include "ecms/perturb.hpp"

namespace ecms {

struct SpectralReport {
  int dim = 0;
  int window_cutoff = 0;
  int order = 0;
  double p = 0;
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residuals;    // ||(T - e) v|| per pair
};

/// Dense symmetric eigendecomposition of the truncated operator. Exact
/// symmetry of every order block is verified first; violations abort with
/// consistency_error (assembly bug, exit code 4 at the CLI).
SpectralReport diag_truncated(const TruncatedOperator& t);

/// Number of Galerkin eigenvalues strictly inside |z - center| < radius.
/// Errors out when an eigenvalue sits within the guard band of the circle.
int projection_rank(const SpectralReport& rep, double center, double radius,
                    double guard = 1e-9);

struct ProbeReport {
  bool exact = false;  // all errors at rounding level (free case)
  double fitted_exponent = 0;
  std::vector<double> p_values;
  std::vector<double> errors;
  bool pass = false;
};

/// Fits |series(p) - oracle(p)| against p^(K+1) over a geometric p list;
/// passes when the fitted exponent reaches K + 1/2.
ProbeReport convergence_probe(const SeriesCoeffs& series, const BasisWindow& oracle_win,
                              int oracle_K, JackEngine& engine,
                              const std::vector<double>& p_list);

/// Oracle eigenvalue matched to a series prediction: nearest eigenvalue to
/// the evaluated series energy.
double matched_eigenvalue(const SpectralReport& rep, double series_energy);

}  // namespace ecms
