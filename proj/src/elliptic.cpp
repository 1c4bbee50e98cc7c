#include "ecms/elliptic.hpp"

#include <cmath>

namespace ecms {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Nome::Nome(double pp) : p(pp) {
  if (!(std::abs(p) < 1.0)) throw config_error("|p| must be < 1");
}

std::complex<double> Nome::tau() const {
  if (p == 0.0) throw config_error("tau undefined at p = 0");
  if (p > 0.0) return {0.0, -std::log(p) / (2 * kPi)};
  return {0.5, -std::log(-p) / (2 * kPi)};
}

std::vector<std::pair<int, long>> t_k_cos_series(int k) {
  if (k <= 0) throw config_error("t_k order must be >= 1");
  std::vector<std::pair<int, long>> out;
  for (int j = 1; j <= k; ++j)
    if (k % j == 0) out.emplace_back(j, -2L * j);
  return out;
}

PotentialOrder potential_order(int k, const Coupling& c) {
  PotentialOrder out{k, SymPoly(c.N), Rat(0)};
  Rat prefac = c.beta * (c.beta - 1);
  if (sgn(prefac) == 0) return out;  // free case: zero multiplication operator
  const long pairs2 = static_cast<long>(c.N) * (c.N - 1);  // = #roots, both signs
  for (auto [j, wgt] : t_k_cos_series(k)) {
    // -2j (cos j<alpha,h> - 1) summed over positive roots:
    // cos-part gives -(j) m_{j theta}, the constant gives +j N(N-1)
    out.poly.add_term(theta_multiple(c.N, j), prefac * Rat(wgt / 2));
    out.constant += prefac * Rat(-(wgt / 2) * pairs2);
  }
  out.poly.add_term(Weight(c.N, std::vector<int>(c.N, 0)), out.constant);
  return out;
}

WpEval wp_qseries(std::complex<double> x, const Nome& nome, int terms) {
  if (terms < 1) throw config_error("need at least one term");
  std::complex<double> s = std::sin(x / 2.0);
  if (std::abs(s) < 1e-300) throw config_error("pole of wp at lattice point");
  WpEval out;
  out.value = 1.0 / (4.0 * s * s) - 1.0 / 12.0;
  const double p = nome.p;
  double pn = 1.0;
  for (int n = 1; n <= terms; ++n) {
    pn *= p;
    out.value -= 2.0 * n * pn / (1.0 - pn) * (std::cos(static_cast<double>(n) * x) - 1.0);
  }
  // tail <= 8 sum_{n>terms} n |p|^n / (1-|p|) for real x
  const double q = std::abs(p);
  if (q > 0) {
    double t = static_cast<double>(terms);
    double tail_np = std::pow(q, t + 1) * ((t + 1) - t * q) / ((1 - q) * (1 - q));
    out.tail_bound = 8.0 * tail_np / (1 - q);
  }
  return out;
}

std::complex<double> wp_lattice(std::complex<double> x, std::complex<double> tau, int cutoff) {
  if (tau.imag() <= 0) throw config_error("Im tau must be > 0");
  auto inv4sin2 = [](std::complex<double> u) {
    std::complex<double> s = std::sin(u / 2.0);
    if (std::abs(s) < 1e-300) throw config_error("pole of wp at lattice point");
    return 1.0 / (4.0 * s * s);
  };
  // row n = 0 of the lattice sum: 1/x^2 + sum_{m != 0} pairs = 1/(4sin^2) - 1/12
  std::complex<double> total = inv4sin2(x) - 1.0 / 12.0;
  for (int n = 1; n <= cutoff; ++n) {
    std::complex<double> off = 2.0 * kPi * tau * static_cast<double>(n);
    total += inv4sin2(x + off) + inv4sin2(x - off) - 2.0 * inv4sin2(off);
  }
  return total;
}

ThetaEval theta1(std::complex<double> x, double nome_root, int terms) {
  if (!(std::abs(nome_root) < 1.0)) throw config_error("|sqrt p| must be < 1");
  ThetaEval out{};
  const double p8 = std::pow(std::abs(nome_root), 0.25);  // p^(1/8)
  std::complex<double> v(0.0, 0.0);
  double d0 = 0.0;
  double qpow = 1.0;  // nome_root^(n(n-1))
  double sign = 1.0;
  for (int n = 1; n <= terms; ++n) {
    if (n > 1) {
      for (int t = 0; t < 2 * (n - 1); ++t) qpow *= nome_root;
      sign = -sign;
    }
    v += sign * qpow * std::sin(static_cast<double>(2 * n - 1) * kPi * x);
    d0 += sign * qpow * (2 * n - 1) * kPi;
  }
  out.value = 2.0 * p8 * v;
  out.dtheta0 = 2.0 * p8 * d0;
  out.normalized = out.value / out.dtheta0;
  return out;
}

namespace {

// S(q) = sum n q^n / (1 - q^n), relative tail below 1e-15
double nome_weight_sum(double q) {
  if (!(q >= 0 && q < 1)) throw config_error("|p| must be < 1");
  if (q == 0) return 0.0;
  double s = 0.0;
  double qn = 1.0;
  for (long n = 1;; ++n) {
    qn *= q;
    double term = n * qn / (1.0 - qn);
    s += term;
    if (n > 8 && term < 1e-16 * s) break;
    if (n > 100000000L) break;  // q extremely close to 1; callers bracket away
  }
  return s;
}

}  // namespace

double w_max(const Nome& nome, const Coupling& c) {
  Rat coupling_sum = Rat(static_cast<long>(c.N) * (c.N - 1)) * c.beta * (c.beta - 1);
  return 4.0 * nome_weight_sum(std::abs(nome.p)) * coupling_sum.get_d();
}

double p0_solve(const Coupling& c) {
  Rat strength = c.beta * (c.beta - 1);
  if (sgn(strength) == 0)
    throw config_error("W_max vanishes identically at beta = 1; p0 undefined");
  const long n = weight_gram_denominator(c.N);
  const double target = 1.0 / (4.0 * static_cast<double>(n) * static_cast<double>(c.k_den));
  auto f = [&](double p) { return w_max(Nome(p), c) - target; };
  double lo = 0.0, hi = 0.5;
  while (f(hi) < 0 && hi < 1.0 - 1e-9) hi = 0.5 * (1.0 + hi);
  if (f(hi) < 0) return hi;  // target beyond reach of double bracketing
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (std::abs(fm) <= 1e-13 && hi - lo <= 1e-12) return mid;
    (fm < 0 ? lo : hi) = mid;
    if (hi - lo < 1e-17) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ecms
