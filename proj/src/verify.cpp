#include "ecms/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "ecms/elliptic.hpp"
#include "ecms/oracle.hpp"
#include "ecms/quadrature.hpp"

namespace ecms {

namespace {

constexpr double kPi = 3.14159265358979323846;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

CheckResult make_result(const std::string& name, bool pass, std::string detail, const Timer& t) {
  return {name, pass, std::move(detail), t.seconds()};
}

Weight zero_weight(int n) { return Weight(n, std::vector<int>(n, 0)); }

std::vector<double> random_torus_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  std::vector<double> x(n);
  double mean = 0;
  for (auto& xi : x) {
    xi = uni(rng);
    mean += xi;
  }
  mean /= n;
  for (auto& xi : x) xi -= mean;
  return x;
}

}  // namespace

Suite verify_jack(bool full) {
  Suite suite;
  Timer t;
  const int max_total = full ? 8 : 5;
  const std::vector<int> ns = full ? std::vector<int>{2, 3, 4} : std::vector<int>{2, 3};
  const std::vector<Rat> betas = {Rat(3, 2), Rat(2), Rat(5, 2)};
  long checked = 0;
  std::string fail;
  bool bound_ok = true;
  double bound_margin = 1e300;
  for (int n : ns) {
    for (const auto& beta : betas) {
      Coupling c(n, beta);
      JackEngine engine(c);
      // evaluation bound constant: smallest A with c_m < A^2 C0^(2m), C0 = 2
      const double bn2 = beta.get_d() * n * n;
      double a_sq = 0;
      double log_cm = 0;  // log of binomial-type coefficient
      for (int m = 0; m <= 200; ++m) {
        if (m > 0) log_cm += std::log((bn2 + m) / m);
        a_sq = std::max(a_sq, std::exp(log_cm - 2 * m * std::log(2.0)));
      }
      const double a_const = std::sqrt(a_sq) * (1 + 1e-9);
      for (const auto& lam : weights_up_to(n, max_total)) {
        const JackPolynomial& jp = engine.jack(lam);
        SymPoly lhs = h0_apply(jp.expansion, c);
        SymPoly rhs = jp.expansion.scaled(jp.eigenvalue);
        if (!(lhs == rhs)) {
          fail = "eigen-identity fails at N=" + std::to_string(n) + " beta=" + rat_str(beta) +
                 " lambda=(" + lam.str() + ")";
          break;
        }
        if (jp.eigenvalue != trig_eigenvalue(lam, c)) {
          fail = "eigenvalue mismatch at (" + lam.str() + ")";
          break;
        }
        // triangularity, monic leading term, coefficient positivity
        for (const auto& [w, u] : jp.expansion.terms()) {
          if (w == lam) {
            if (u != 1) fail = "leading coefficient not 1 at (" + lam.str() + ")";
          } else if (!dominance_leq(w, lam) || w == lam) {
            fail = "support not strictly below (" + lam.str() + ")";
          } else if (sgn(u) <= 0) {
            fail = "non-positive coefficient at (" + lam.str() + ")";
          }
          if (!fail.empty()) break;
        }
        if (!fail.empty()) break;
        double val = jp.expansion.eval_at_one().get_d();
        double bound =
            a_const * std::pow(2.0, (n - 1) * std::sqrt(2.0 * weight_inner(lam, lam).get_d()));
        bound_margin = std::min(bound_margin, bound / std::max(val, 1e-300));
        if (!(std::abs(val) < bound)) bound_ok = false;
        ++checked;
      }
      if (!fail.empty()) break;
    }
    if (!fail.empty()) break;
  }
  suite.push_back(make_result(
      "eigen-identity", fail.empty(),
      fail.empty() ? std::to_string(checked) + " states, exact equality" : fail, t));
  Timer t2;
  suite.push_back(make_result("evaluation-bound", bound_ok,
                              "min bound/value = " + fmt17(bound_margin), t2));
  return suite;
}

Suite verify_cauchy(bool full) {
  Suite suite;
  const int cap = full ? 5 : 3;
  for (int n : {2, 3}) {
    for (long bnum : {1L, 2L}) {
      Timer t;
      CauchyReport rep = cauchy_check(Coupling(n, Rat(bnum)), cap);
      suite.push_back(make_result(
          "cauchy-N" + std::to_string(n) + "-beta" + std::to_string(bnum), rep.ok,
          rep.ok ? "exact through degree " + std::to_string(cap) : rep.mismatch, t));
    }
  }
  return suite;
}

Suite verify_norms(bool full) {
  Suite suite;
  Timer t;
  Coupling c(2, Rat(2));
  JackEngine engine(c);
  const int max_total = full ? 4 : 3;
  auto labels = weights_up_to(2, max_total);
  QuadratureGrid grid(c, full ? 2048 : 512);
  std::vector<std::vector<std::complex<double>>> tabs;
  for (const auto& w : labels) tabs.push_back(tabulate(engine.jack(w).expansion, grid, Exec::Parallel));
  double worst_offdiag = 0, worst_ratio = 0;
  std::vector<double> diag(labels.size());
  for (size_t i = 0; i < labels.size(); ++i)
    diag[i] = quad_inner(tabs[i], tabs[i], grid).real();
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j) {
      double g = std::abs(quad_inner(tabs[i], tabs[j], grid));
      worst_offdiag = std::max(worst_offdiag, g / std::sqrt(diag[i] * diag[j]));
    }
  for (size_t i = 0; i < labels.size(); ++i) {
    double want = engine.norm_sq_ratio(labels[i], zero_weight(2)).get_d();
    worst_ratio = std::max(worst_ratio, std::abs(diag[i] / diag[0] - want) / want);
  }
  bool pass = worst_offdiag <= 1e-8 && worst_ratio <= 1e-8;
  suite.push_back(make_result("norm-ratios-N2",
                              pass,
                              "max offdiag " + fmt17(worst_offdiag) + ", max ratio err " +
                                  fmt17(worst_ratio),
                              t));
  // N = 3 orthogonality
  Timer t3;
  Coupling c3(3, Rat(2));
  JackEngine engine3(c3);
  auto labels3 = weights_up_to(3, 3);
  QuadratureGrid grid3(c3, full ? 64 : 32);
  std::vector<std::vector<std::complex<double>>> tabs3;
  for (const auto& w : labels3) tabs3.push_back(tabulate(engine3.jack(w).expansion, grid3, Exec::Parallel));
  double worst3 = 0;
  for (size_t i = 0; i < labels3.size(); ++i)
    for (size_t j = i + 1; j < labels3.size(); ++j) {
      double gii = quad_inner(tabs3[i], tabs3[i], grid3).real();
      double gjj = quad_inner(tabs3[j], tabs3[j], grid3).real();
      double g = std::abs(quad_inner(tabs3[i], tabs3[j], grid3));
      worst3 = std::max(worst3, g / std::sqrt(gii * gjj));
    }
  suite.push_back(
      make_result("orthogonality-N3", worst3 <= 1e-8, "max offdiag " + fmt17(worst3), t3));
  return suite;
}

Suite verify_wp(bool full) {
  Suite suite;
  {
    Timer t;
    double worst = 0;
    const int cutoff = 60;
    for (int i = 0; i < 5; ++i) {
      double x = 0.5 + (kPi - 0.5) * i / 4.0;
      for (int j = 0; j < 5; ++j) {
        double p = 0.01 + (0.1 - 0.01) * j / 4.0;
        Nome nome(p);
        auto q = wp_qseries({x, 0.0}, nome, 400);
        auto l = wp_lattice({x, 0.0}, nome.tau(), cutoff);
        worst = std::max(worst, std::abs(q.value - l));
      }
    }
    suite.push_back(
        make_result("wp-dual-grid", worst <= 1e-10, "max |qseries - lattice| " + fmt17(worst), t));
  }
  {
    Timer t;
    std::mt19937_64 rng(20250810);
    double worst = 0;
    const int kmax = full ? 6 : 3;
    const int nmax = full ? 4 : 3;
    for (int n = 2; n <= nmax; ++n) {
      for (const Rat& beta : {Rat(2), Rat(5, 2)}) {
        Coupling c(n, beta);
        double bb = Rat(beta * (beta - 1)).get_d();
        for (int k = 1; k <= kmax; ++k) {
          PotentialOrder pot = potential_order(k, c);
          auto series = t_k_cos_series(k);
          for (int pt = 0; pt < 20; ++pt) {
            auto x = random_torus_point(n, rng);
            std::vector<std::complex<double>> z(n);
            for (int i = 0; i < n; ++i) z[i] = std::polar(1.0, x[i]);
            double direct = 0;
            for (int i = 0; i < n; ++i)
              for (int j = i + 1; j < n; ++j) {
                double y = x[i] - x[j];
                double tk = 0;
                for (auto [dj, wgt] : series) tk += wgt * (std::cos(dj * y) - 1.0);
                direct += bb * tk;
              }
            std::complex<double> via_poly = pot.poly.eval_numeric(z);
            worst = std::max(worst, std::abs(via_poly - std::complex<double>(direct, 0.0)));
          }
        }
      }
    }
    suite.push_back(make_result("potential-rederivation", worst <= 1e-12,
                                "max |poly - direct| " + fmt17(worst), t));
  }
  {
    Timer t;
    bool pass = true;
    std::string detail;
    double prev = 0;
    for (double p : {0.01, 0.03, 0.05, 0.1, 0.2}) {
      double w = w_max(Nome(p), Coupling(2, Rat(2)));
      if (w <= prev) pass = false;
      prev = w;
    }
    struct Case {
      int n;
      Rat beta;
    };
    double worst = 0;
    for (const auto& [n, beta] : {Case{2, Rat(2)}, Case{3, Rat(2)}, Case{2, Rat(3, 2)}}) {
      Coupling c(n, beta);
      double p0 = p0_solve(c);
      double target = 1.0 / (4.0 * weight_gram_denominator(n) * c.k_den);
      double resid = std::abs(w_max(Nome(p0), c) - target);
      worst = std::max(worst, resid);
      if (resid > 1e-12) pass = false;
      detail += "p0(" + std::to_string(n) + "," + rat_str(beta) + ")=" + fmt17(p0) + " ";
    }
    suite.push_back(make_result("bounds-p0", pass, detail + "max residual " + fmt17(worst), t));
  }
  return suite;
}

Suite verify_symmetry(bool full) {
  Suite suite;
  const int kmax = full ? 6 : 3;
  const int L = full ? 8 : 6;
  for (int n : {2, 3}) {
    for (const Rat& beta : {Rat(2), Rat(3, 2)}) {
      Timer t;
      Coupling c(n, beta);
      JackEngine engine(c);
      BasisWindow win(c, L);
      std::string fail;
      for (int k = 1; k <= kmax && fail.empty(); ++k) {
        OrderKMatrix m = wk_matrix(k, win, engine, Exec::Parallel);
        try {
          check_order_matrix(m);
        } catch (const consistency_error& e) {
          fail = e.what();
        }
      }
      suite.push_back(make_result(
          "matrix-exactness-N" + std::to_string(n) + "-beta" + rat_str(beta), fail.empty(),
          fail.empty() ? "symmetry and support bound exact, k <= " + std::to_string(kmax) : fail,
          t));
    }
  }
  {
    // truncation ledger shrinks on the shared rows as the window grows
    Timer t;
    Coupling c(2, Rat(2));
    JackEngine engine(c);
    BasisWindow small(c, 6), big(c, 8);
    OrderKMatrix ms = wk_matrix(2, small, engine);
    OrderKMatrix mb = wk_matrix(2, big, engine);
    double mass_small = 0, mass_big = 0;
    for (int col = 0; col < small.dim(); ++col) {
      mass_small += ms.truncated_mass[col];
      mass_big += mb.truncated_mass[big.find(small.labels[col])];
    }
    bool pass = mass_big < mass_small;
    suite.push_back(make_result("truncation-ledger-monotone", pass,
                                fmt17(mass_small) + " -> " + fmt17(mass_big), t));
  }
  return suite;
}

Suite verify_perturbation(bool full) {
  Suite suite;
  Coupling c(2, Rat(2));
  JackEngine engine(c);
  const int K = 4;
  // shared series window: covers the coupling balls of all three states
  BasisWindow series_win(c, full ? 12 : 10);
  std::vector<OrderKMatrix> orders;
  for (int k = 1; k <= K; ++k) orders.push_back(wk_matrix(k, series_win, engine, Exec::Parallel));
  BasisWindow oracle_win(c, 10);

  const std::vector<Weight> states = full
                                         ? std::vector<Weight>{Weight(2, {0, 0}), Weight(2, {2, 0}),
                                                               Weight(2, {4, 0})}
                                         : std::vector<Weight>{Weight(2, {0, 0}), Weight(2, {2, 0})};
  for (const auto& lam : states) {
    Timer t;
    std::string fail;
    bool pass = true;
    double exponent = 0, err001 = 0;
    try {
      SeriesCoeffs s = rs_series(lam, K, series_win, orders);
      check_series_identity(s, series_win, orders);
      check_series_normalization(s);
      // window independence
      if (full) {
        BasisWindow bigger(c, 14);
        std::vector<OrderKMatrix> orders2;
        for (int k = 1; k <= K; ++k) orders2.push_back(wk_matrix(k, bigger, engine, Exec::Parallel));
        SeriesCoeffs s2 = rs_series(lam, K, bigger, orders2);
        if (s2.energy != s.energy) fail = "energy series depends on the window";
        for (int k = 0; k <= K && fail.empty(); ++k) {
          if (s.vectors[k].size() != s2.vectors[k].size()) fail = "vector support changed";
          for (const auto& [w, v] : s.vectors[k])
            if (!rv_equal(v, s2.vectors[k].at(w))) {
              fail = "vector coefficient changed with the window";
              break;
            }
        }
      }
      ProbeReport probe =
          convergence_probe(s, oracle_win, K, engine, {0.02, 0.01, 0.005});
      exponent = probe.fitted_exponent;
      err001 = probe.errors[1];
      if (!probe.exact && !probe.pass) pass = false;
      if (err001 > 1e-8) pass = false;
    } catch (const std::exception& e) {
      pass = false;
      fail = e.what();
    }
    if (!fail.empty()) pass = false;
    suite.push_back(make_result(
        "series-oracle-(" + lam.str() + ")", pass,
        !fail.empty() ? fail
                      : "exponent " + fmt17(exponent) + ", |err(0.01)| " + fmt17(err001),
        t));
  }

  // degenerate dual pair {2 Lambda_1, 2 Lambda_2}, N = 3. The two states sit
  // in different root-lattice cosets, so no order ever couples them: the
  // duality protects the degeneracy and the block reports "not split" while
  // both branch energies track the doubly degenerate oracle level.
  {
    Timer t;
    bool pass = true;
    std::string detail;
    try {
      Coupling c3(3, Rat(2));
      JackEngine engine3(c3);
      DegenerateBlock block{{Weight(3, {2, 0, 0}), Weight(3, {2, 2, 0})}};
      BasisWindow win3(c3, 16);
      std::vector<OrderKMatrix> orders3;
      for (int k = 1; k <= K; ++k) orders3.push_back(wk_matrix(k, win3, engine3, Exec::Parallel));
      BlockSeriesResult res = degenerate_block_series(block, K, win3, orders3, engine3);
      if (res.branches.size() != 2) throw consistency_error("expected two branches");
      for (const auto& b : res.branches) {
        check_series_identity(b, win3, orders3);
        check_series_normalization(b);
      }
      // order-1 energies equal the 2x2 block eigenvalues exactly
      const int ia = win3.find(block.members[0]);
      const int ib = win3.find(block.members[1]);
      const RatioVal* d_ab = orders3[0].entry(ia, ib);
      Rat m11 = orders3[0].entry(ia, ia) ? rv_rational(*orders3[0].entry(ia, ia)) : Rat(0);
      Rat m22 = orders3[0].entry(ib, ib) ? rv_rational(*orders3[0].entry(ib, ib)) : Rat(0);
      Rat off = d_ab ? rv_rational(*d_ab) : Rat(0);
      if (m11 != m22) throw consistency_error("dual pair diagonals differ at order 1");
      std::vector<Rat> block_eigs{Rat(m11 + abs(off)), Rat(m11 - abs(off))};
      std::vector<Rat> branch_e1{res.branches[0].energy[1], res.branches[1].energy[1]};
      std::sort(block_eigs.begin(), block_eigs.end());
      std::sort(branch_e1.begin(), branch_e1.end());
      if (block_eigs != branch_e1) throw consistency_error("order-1 energies differ from block");
      // branch evaluations vs the oracle eigenvalues inside the circle
      const double p = 0.005;
      BasisWindow owin(c3, 10);
      SpectralReport sr = diag_truncated(t_matrix(p, owin, K, engine3));
      double center = trig_eigenvalue(block.members[0], c3).get_d();
      double radius = 0.5;  // nearest foreign level sits 2/3 away at p = 0
      std::vector<double> inside;
      for (double e : sr.eigenvalues)
        if (std::abs(e - center) < radius) inside.push_back(e);
      if (inside.size() != 2) throw consistency_error("expected rank 2 inside the circle");
      std::vector<double> branch_vals{series_eval(res.branches[0], p).energy,
                                      series_eval(res.branches[1], p).energy};
      std::sort(branch_vals.begin(), branch_vals.end());
      std::sort(inside.begin(), inside.end());
      double worst = std::max(std::abs(branch_vals[0] - inside[0]),
                              std::abs(branch_vals[1] - inside[1]));
      if (worst > 1e-8) throw consistency_error("branch vs oracle " + fmt17(worst));
      detail = (res.resolved ? std::string("split") : "protected degeneracy reported") +
               ", |branch - oracle| " + fmt17(worst);
    } catch (const std::exception& e) {
      pass = false;
      detail = e.what();
    }
    suite.push_back(make_result("degenerate-block-N3", pass, detail, t));
  }
  return suite;
}

Suite verify_rank(bool full) {
  Suite suite;
  Timer t;
  (void)full;
  Coupling c(2, Rat(2));
  JackEngine engine(c);
  BasisWindow win(c, 8);
  const double center = trig_eigenvalue(Weight(2, {2, 0}), c).get_d();
  bool pass = true;
  std::string detail = "ranks";
  for (double p : {0.0, 0.005, 0.01}) {
    SpectralReport rep = diag_truncated(t_matrix(p, win, 4, engine));
    int rank = projection_rank(rep, center, 2.0);
    detail += " " + std::to_string(rank);
    if (rank != 1) pass = false;
  }
  suite.push_back(make_result("rank-stability", pass, detail, t));
  return suite;
}

Suite run_suite(const std::string& name, bool full) {
  if (name == "jack") return verify_jack(full);
  if (name == "cauchy") return verify_cauchy(full);
  if (name == "norms") return verify_norms(full);
  if (name == "wp") return verify_wp(full);
  if (name == "symmetry") return verify_symmetry(full);
  if (name == "perturbation") return verify_perturbation(full);
  if (name == "rank") return verify_rank(full);
  throw config_error("unknown suite: " + name);
}

bool suite_passed(const Suite& s) {
  for (const auto& c : s)
    if (!c.pass) return false;
  return true;
}

nlohmann::ordered_json suite_to_json(const Suite& s) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : s) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["detail"] = c.detail;
    j["seconds"] = fmt17(c.seconds);
    checks.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["pass"] = suite_passed(s);
  out["checks"] = std::move(checks);
  return out;
}

}  // namespace ecms
