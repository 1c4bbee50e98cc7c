#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ecms/oracle.hpp"
#include "ecms/quadrature.hpp"

using namespace ecms;

TEST_CASE("quadrature grid basics") {
  Coupling c(2, Rat(1));
  QuadratureGrid grid(c, 512);
  double wsum = 0;
  for (double w : grid.weights) wsum += w;
  CHECK(std::abs(wsum - 1.0) < 1e-13);
  for (double d : grid.delta2) CHECK(d >= 0);
  // (1,1) at beta = 1: the elementary integral (1/4pi) int sin^2(u/2) du = 1/2
  SymPoly one = SymPoly::mono(Weight(2, {0, 0}));
  CHECK(std::abs(quad_inner(one, one, grid).real() - 0.5) < 1e-13);
  // grid doubling moves the value by almost nothing (spectral accuracy)
  QuadratureGrid fine(c, 1024);
  CHECK(std::abs(quad_inner(one, one, grid).real() - quad_inner(one, one, fine).real()) < 1e-13);
}

TEST_CASE("serial and parallel tabulation agree exactly") {
  Coupling c(3, Rat(2));
  JackEngine engine(c);
  QuadratureGrid grid(c, 48);
  const SymPoly& f = engine.jack(Weight(3, {2, 1, 0})).expansion;
  auto a = tabulate(f, grid, Exec::Serial);
  auto b = tabulate(f, grid, Exec::Parallel);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("diagonalization at p = 0 returns the bare spectrum") {
  Coupling c(2, Rat(2));
  JackEngine engine(c);
  BasisWindow win(c, 8);
  SpectralReport rep = diag_truncated(t_matrix(0.0, win, 3, engine));
  REQUIRE(rep.dim == win.dim());
  std::vector<double> expect;
  for (const auto& w : win.labels) expect.push_back(trig_eigenvalue(w, c).get_d());
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < rep.dim; ++i) {
    CHECK(rep.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-15));
    CHECK(rep.residuals[i] < 1e-10);
  }
  // beta = 1 at any p: same as p = 0
  Coupling cf(2, Rat(1));
  JackEngine ef(cf);
  BasisWindow winf(cf, 8);
  SpectralReport repf = diag_truncated(t_matrix(0.3, winf, 3, ef));
  for (int i = 0; i < repf.dim; ++i)
    CHECK(repf.eigenvalues[i] ==
          doctest::Approx(trig_eigenvalue(winf.labels[i], cf).get_d()).epsilon(1e-14));
}

TEST_CASE("galerkin stability of the low spectrum") {
  Coupling c(2, Rat(2));
  JackEngine engine(c);
  const double p = 0.01;
  BasisWindow w8(c, 8), w10(c, 10);
  SpectralReport r8 = diag_truncated(t_matrix(p, w8, 6, engine));
  SpectralReport r10 = diag_truncated(t_matrix(p, w10, 6, engine));
  for (int i = 0; i < 5; ++i)
    CHECK(std::abs(r8.eigenvalues[i] - r10.eigenvalues[i]) < 1e-9);
}

TEST_CASE("projection ranks") {
  Coupling c(2, Rat(2));
  JackEngine engine(c);
  BasisWindow win(c, 8);
  SpectralReport rep = diag_truncated(t_matrix(0.0, win, 2, engine));
  double e0 = trig_eigenvalue(Weight(2, {0, 0}), c).get_d();
  double eh = trig_eigenvalue(Weight(2, {1, 0}), c).get_d();
  double e1 = trig_eigenvalue(Weight(2, {2, 0}), c).get_d();
  CHECK(projection_rank(rep, e1, 2.0) == 1);
  // a circle covering the two lowest levels counts both and no more
  CHECK(projection_rank(rep, 0.5 * (e0 + eh), 0.5 * (eh - e0) + 0.5) == 2);
  // rank stays 1 under small p
  for (double p : {0.005, 0.01}) {
    SpectralReport r = diag_truncated(t_matrix(p, win, 4, engine));
    CHECK(projection_rank(r, e1, 2.0) == 1);
  }
  // guard band trips when the circle grazes an eigenvalue
  CHECK_THROWS_AS(projection_rank(rep, e1, 0.0, 1e-6), config_error);
}

TEST_CASE("series matches the diagonalization oracle") {
  Coupling c(2, Rat(2));
  JackEngine engine(c);
  BasisWindow swin(c, 10);
  std::vector<OrderKMatrix> orders;
  for (int k = 1; k <= 3; ++k) orders.push_back(wk_matrix(k, swin, engine));
  SeriesCoeffs s = rs_series(Weight(2, {2, 0}), 3, swin, orders);
  BasisWindow owin(c, 10);
  const double p = 0.01;
  SpectralReport rep = diag_truncated(t_matrix(p, owin, 3, engine));
  double se = series_eval(s, p).energy;
  CHECK(std::abs(se - matched_eigenvalue(rep, se)) < 1e-7);
}

TEST_CASE("convergence probe fits the truncation order") {
  Coupling c(2, Rat(2));
  JackEngine engine(c);
  BasisWindow swin(c, 10);
  std::vector<OrderKMatrix> orders;
  for (int k = 1; k <= 2; ++k) orders.push_back(wk_matrix(k, swin, engine));
  SeriesCoeffs s = rs_series(Weight(2, {2, 0}), 2, swin, orders);
  BasisWindow owin(c, 10);
  ProbeReport rep = convergence_probe(s, owin, 2, engine, {0.02, 0.01, 0.005});
  CHECK(rep.pass);
  CHECK(rep.fitted_exponent >= 2.5);
  // free case: exact at every p
  Coupling cf(2, Rat(1));
  JackEngine ef(cf);
  BasisWindow winf(cf, 8);
  std::vector<OrderKMatrix> ordersf;
  for (int k = 1; k <= 2; ++k) ordersf.push_back(wk_matrix(k, winf, ef));
  SeriesCoeffs sf = rs_series(Weight(2, {2, 0}), 2, winf, ordersf);
  ProbeReport repf = convergence_probe(sf, winf, 2, ef, {0.02, 0.01});
  CHECK(repf.exact);
}
