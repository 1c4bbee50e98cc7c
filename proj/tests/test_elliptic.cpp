#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>

#include "ecms/elliptic.hpp"

using namespace ecms;

TEST_CASE("cosine series of the interaction orders") {
  using P = std::pair<int, long>;
  CHECK(t_k_cos_series(1) == std::vector<P>{{1, -2}});
  CHECK(t_k_cos_series(2) == std::vector<P>{{1, -2}, {2, -4}});
  CHECK(t_k_cos_series(4) == std::vector<P>{{1, -2}, {2, -4}, {4, -8}});
  CHECK_THROWS_AS(t_k_cos_series(0), config_error);
  // |t_k| <= 4 sigma(k) <= 4 k^2 on the real line
  for (int k = 1; k <= 12; ++k) {
    long sigma = 0;
    for (auto [j, w] : t_k_cos_series(k)) sigma += j;
    CHECK(4 * sigma <= 4 * k * k);
    for (double x : {0.3, 1.7, 3.0}) {
      double tk = 0;
      for (auto [j, w] : t_k_cos_series(k)) tk += w * (std::cos(j * x) - 1);
      CHECK(std::abs(tk) <= 4.0 * sigma + 1e-12);
    }
  }
}

TEST_CASE("potential orders in the orbit-sum basis") {
  // N=2, beta=2, k=1: -2 m_theta + 4
  PotentialOrder p1 = potential_order(1, Coupling(2, Rat(2)));
  CHECK(p1.poly.coeff(Weight(2, {2, 0})) == -2);
  CHECK(p1.poly.coeff(Weight(2, {0, 0})) == 4);
  CHECK(p1.constant == 4);
  // beta = 1: zero operator at every order
  for (int k = 1; k <= 4; ++k) CHECK(potential_order(k, Coupling(3, Rat(1))).poly.is_zero());
  // N=3, beta=2, k=2: -2[(m_theta - 6) + 2(m_2theta - 6)]
  PotentialOrder p2 = potential_order(2, Coupling(3, Rat(2)));
  CHECK(p2.poly.coeff(Weight(3, {2, 1, 0})) == -2);
  CHECK(p2.poly.coeff(Weight(3, {4, 2, 0})) == -4);
  CHECK(p2.poly.coeff(Weight(3, {0, 0, 0})) == 36);
  // support is multiples of the highest root plus the constant
  for (const auto& [w, q] : p2.poly.terms()) {
    bool ok = w.is_zero() || w == theta_multiple(3, 1) || w == theta_multiple(3, 2);
    CHECK(ok);
  }
}

TEST_CASE("potential matches the direct root sum numerically") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(0, 6.28);
  for (int n : {2, 3, 4}) {
    Coupling c(n, Rat(5, 2));
    double bb = Rat(c.beta * (c.beta - 1)).get_d();
    for (int k = 1; k <= 6; ++k) {
      PotentialOrder pot = potential_order(k, c);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> x(n);
        double mean = 0;
        for (auto& xi : x) {
          xi = uni(rng);
          mean += xi;
        }
        for (auto& xi : x) xi -= mean / n;
        std::vector<std::complex<double>> z(n);
        for (int i = 0; i < n; ++i) z[i] = std::polar(1.0, x[i]);
        double direct = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            double tk = 0;
            for (auto [dj, w] : t_k_cos_series(k)) tk += w * (std::cos(dj * (x[i] - x[j])) - 1);
            direct += bb * tk;
          }
        CHECK(std::abs(pot.poly.eval_numeric(z) - std::complex<double>(direct, 0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("q-series evaluation") {
  // p = 0, x = pi: 1/4 - 1/12 = 1/6
  WpEval v = wp_qseries({3.14159265358979323846, 0.0}, Nome(0.0), 1);
  CHECK(std::abs(v.value.real() - 1.0 / 6.0) < 1e-15);
  // evenness
  Nome nome(0.05);
  auto a = wp_qseries({1.3, 0.0}, nome, 200);
  auto b = wp_qseries({-1.3, 0.0}, nome, 200);
  CHECK(std::abs(a.value - b.value) == 0.0);
  // tail bound decreases with more terms and is honest
  auto rough = wp_qseries({1.0, 0.0}, nome, 5);
  auto fine = wp_qseries({1.0, 0.0}, nome, 200);
  CHECK(std::abs(rough.value - fine.value) <= rough.tail_bound);
  CHECK(fine.tail_bound < rough.tail_bound);
  CHECK_THROWS_AS(wp_qseries({0.0, 0.0}, nome, 10), config_error);
}

TEST_CASE("lattice evaluation agrees with the q-series") {
  for (double p : {0.01, 0.05, 0.1}) {
    Nome nome(p);
    for (double x : {0.5, 1.0, 2.0, 3.1}) {
      auto q = wp_qseries({x, 0.0}, nome, 400);
      auto l = wp_lattice({x, 0.0}, nome.tau(), 60);
      CHECK(std::abs(q.value - l) < 1e-10);
    }
  }
  // evenness and the double pole at the origin
  Nome nome(0.05);
  CHECK(std::abs(wp_lattice({1.1, 0}, nome.tau(), 40) - wp_lattice({-1.1, 0}, nome.tau(), 40)) <
        1e-12);
  std::complex<double> near = wp_lattice({1e-3, 0.0}, nome.tau(), 40);
  CHECK(std::abs(near * 1e-6 - std::complex<double>(1, 0)) < 1e-5);
}

TEST_CASE("theta function") {
  double root_p = std::sqrt(0.05);
  ThetaEval at0 = theta1({0.0, 0.0}, root_p, 30);
  CHECK(std::abs(at0.value) == 0.0);
  ThetaEval a = theta1({0.37, 0.0}, root_p, 30);
  ThetaEval b = theta1({-0.37, 0.0}, root_p, 30);
  CHECK(std::abs(a.value + b.value) < 1e-15);
  // normalized theta behaves like x near zero
  ThetaEval small = theta1({1e-4, 0.0}, root_p, 30);
  CHECK(std::abs(small.normalized / 1e-4 - 1.0) < 1e-6);
}

TEST_CASE("norm bound of the perturbation") {
  Coupling c(2, Rat(2));
  CHECK(w_max(Nome(0.0), c) == 0.0);
  CHECK(w_max(Nome(0.05), c) < w_max(Nome(0.1), c));
  // N=2, beta=2: 16 sum n p^n/(1-p^n); first terms at p = 0.1
  double w = w_max(Nome(0.1), c);
  double ref = 0;
  for (int n = 1; n <= 200; ++n) ref += n * std::pow(0.1, n) / (1 - std::pow(0.1, n));
  CHECK(std::abs(w - 16 * ref) < 1e-12);
}

TEST_CASE("separation scale p0") {
  Coupling c(2, Rat(2));
  double p0 = p0_solve(c);
  CHECK(std::abs(w_max(Nome(p0), c) - 0.125) < 1e-12);
  CHECK(std::abs(p0 - 7.8e-3) < 2e-4);  // near the 16 S(p) = 1/8 root
  // half-integer coupling doubles k_den and moves the target to 1/16
  Coupling ch(2, Rat(3, 2));
  double p0h = p0_solve(ch);
  CHECK(std::abs(w_max(Nome(p0h), ch) - 1.0 / 16.0) < 1e-12);
  CHECK(p0h > p0);  // weaker coupling strength dominates the smaller target
  // near-free coupling: tiny strength and large k_den balance out
  Coupling cn(2, rat_parse("10001/10000"));
  double p0n = p0_solve(cn);
  CHECK(std::abs(w_max(Nome(p0n), cn) - 1.0 / (8.0 * 10000.0)) < 1e-12);
  CHECK(std::abs(p0n - 0.0154) < 5e-4);
  CHECK_THROWS_AS(p0_solve(Coupling(2, Rat(1))), config_error);
}
