#include "ecms/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace ecms {

SpectralReport diag_truncated(const TruncatedOperator& t) {
  for (const auto& m : t.orders) check_order_matrix(m);
  const int d = t.win.dim();
  std::vector<double> dense = t.dense();
  Eigen::Map<const Eigen::MatrixXd> a(dense.data(), d, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw consistency_error("eigensolver failed");
  SpectralReport rep;
  rep.dim = d;
  rep.window_cutoff = t.win.L;
  rep.order = t.K;
  rep.p = t.p;
  rep.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
  rep.residuals.resize(d);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd r = a * solver.eigenvectors().col(i) -
                        solver.eigenvalues()[i] * solver.eigenvectors().col(i);
    rep.residuals[i] = r.norm();
  }
  return rep;
}

int projection_rank(const SpectralReport& rep, double center, double radius, double guard) {
  int count = 0;
  for (double e : rep.eigenvalues) {
    double d = std::abs(e - center);
    if (std::abs(d - radius) < guard)
      throw config_error("circle touches the spectrum near " + fmt17(e));
    if (d < radius) ++count;
  }
  return count;
}

double matched_eigenvalue(const SpectralReport& rep, double series_energy) {
  double best = rep.eigenvalues.at(0);
  for (double e : rep.eigenvalues)
    if (std::abs(e - series_energy) < std::abs(best - series_energy)) best = e;
  return best;
}

ProbeReport convergence_probe(const SeriesCoeffs& series, const BasisWindow& oracle_win,
                              int oracle_K, JackEngine& engine,
                              const std::vector<double>& p_list) {
  ProbeReport rep;
  rep.p_values = p_list;
  for (double p : p_list) {
    TruncatedOperator t = t_matrix(p, oracle_win, oracle_K, engine);
    SpectralReport sr = diag_truncated(t);
    double se = series_eval(series, p).energy;
    rep.errors.push_back(std::abs(se - matched_eigenvalue(sr, se)));
  }
  double maxerr = 0;
  for (double e : rep.errors) maxerr = std::max(maxerr, e);
  if (maxerr < 1e-13) {
    rep.exact = true;
    rep.pass = true;
    return rep;
  }
  // least-squares slope of log(err) vs log(p)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(p_list.size());
  for (int i = 0; i < n; ++i) {
    double x = std::log(p_list[i]);
    double y = std::log(std::max(rep.errors[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.pass = rep.fitted_exponent >= series.K + 0.5;
  return rep;
}

}  // namespace ecms
