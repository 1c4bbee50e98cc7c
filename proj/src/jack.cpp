#include "ecms/jack.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace ecms {

SymPoly h0_apply(const SymPoly& f, const Coupling& c) {
  if (f.n() != c.N) throw config_error("rank mismatch");
  const int n = c.N;
  // constants map to E_0 * constants: absorb the affine normalization here
  const Rat const_term = trig_eigenvalue(Weight(n, std::vector<int>(n, 0)), c);
  SymPoly out(n);
  for (const auto& [kappa, coeff] : f.terms()) {
    // diagonal part sum (z_i d_i)^2: |kappa|^2 on every orbit exponential
    out.add_term(kappa, coeff * weight_inner(kappa, kappa));
    // cross part: for each orbit member v and pair i<j with v_i > v_j,
    // (z_i+z_j)/(z_i-z_j)(z_i d_i - z_j d_j) on e^v + e^(swap v) gives
    // d (e^v + e^(swap) + 2 sum_{r=1}^{d-1} e^(v - r(e_i - e_j))), d = v_i - v_j.
    // Only dominant targets are collected; the image is W-invariant, so its
    // m-coefficients are read off the dominant exponents.
    for (const auto& v : weyl_orbit(kappa)) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (v[i] <= v[j]) continue;
          long d = (v[i] - v[j]) / n;  // coordinate difference, an integer
          Rat w = coeff * c.beta * Rat(d);
          auto emit = [&](const std::vector<long>& t, const Rat& cc) {
            if (std::is_sorted(t.begin(), t.end(), std::greater<>()))
              out.add_term(weight_from_coord_nums(n, t), cc);
          };
          emit(v, w);
          std::vector<long> t(v);
          std::swap(t[i], t[j]);
          emit(t, w);
          t = v;
          for (long r = 1; r < d; ++r) {
            t[i] -= n;
            t[j] += n;
            emit(t, 2 * w);
          }
        }
      }
    }
  }
  out += f.scaled(const_term);
  return out;
}

const SymPoly& JackEngine::h0_column_locked(const Weight& kappa) {
  auto it = h0_cols_.find(kappa);
  if (it != h0_cols_.end()) return it->second;
  SymPoly col = h0_apply(SymPoly::mono(kappa), c_);
  return h0_cols_.emplace(kappa, std::move(col)).first->second;
}

const JackPolynomial& JackEngine::build_locked(const Weight& lam) {
  auto it = cache_.find(lam);
  if (it != cache_.end()) return it->second;

  const Rat e_lam = trig_eigenvalue(lam, c_);
  std::vector<Weight> ball = dominated_by(lam);  // global order, lam last
  std::map<Weight, Rat> u;
  u.emplace(lam, Rat(1));
  for (auto nu_it = ball.rbegin(); nu_it != ball.rend(); ++nu_it) {
    const Weight& nu = *nu_it;
    if (nu == lam) continue;
    Rat num(0);
    for (const auto& [kappa, uk] : u) {
      if (kappa == nu) continue;
      num += uk * h0_column_locked(kappa).coeff(nu);
    }
    if (sgn(num) == 0) continue;
    Rat den = e_lam - trig_eigenvalue(nu, c_);
    if (sgn(den) == 0)
      throw consistency_error("vanishing triangular denominator at (" + lam.str() + ") vs (" +
                              nu.str() + ")");
    Rat val = num / den;
    val.canonicalize();
    u.emplace(nu, std::move(val));
  }
  SymPoly expansion(c_.N);
  for (const auto& [w, q] : u) expansion.add_term(w, q);
  JackPolynomial jp{lam, c_.beta, std::move(expansion), e_lam};
  return cache_.emplace(lam, std::move(jp)).first->second;
}

const JackPolynomial& JackEngine::jack(const Weight& lam) {
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(lam);
    if (it != cache_.end()) return it->second;
  }
  std::unique_lock lock(mu_);
  return build_locked(lam);
}

void JackEngine::ensure(std::span<const Weight> labels) {
  std::unique_lock lock(mu_);
  for (const auto& w : labels) build_locked(w);
}

JackExpansion JackEngine::jack_expand(const SymPoly& f) {
  JackExpansion out;
  out.beta = c_.beta;
  SymPoly rest = f;
  while (!rest.is_zero()) {
    // largest key in the global order is dominance-maximal in the support
    const Weight top = rest.terms().rbegin()->first;
    Rat c = rest.terms().rbegin()->second;
    rest -= jack(top).expansion.scaled(c);
    out.coeffs.emplace(top, std::move(c));
  }
  return out;
}

namespace {

// Gamma(base + m) / Gamma(base) for integer m, as a rational function of base.
Rat gamma_shift_ratio(const Rat& base, long m) {
  Rat r(1);
  if (m >= 0) {
    for (long t = 0; t < m; ++t) r *= base + t;
  } else {
    for (long t = 1; t <= -m; ++t) r /= base - t;
  }
  return r;
}

}  // namespace

Rat JackEngine::norm_sq_ratio(const Weight& lam, const Weight& mu) const {
  if (lam.n() != c_.N || mu.n() != c_.N) throw config_error("rank mismatch");
  if (sgn(c_.beta) <= 0) throw config_error("norm ratio needs beta > 0");
  const auto& lp = lam.parts();
  const auto& mp = mu.parts();
  // xi_i = parts_i + beta (N - i); pairwise differences shift by integers
  // between lam and mu, so each Gamma ratio telescopes to a rational.
  Rat ratio(1);
  for (int i = 0; i < c_.N; ++i) {
    for (int j = i + 1; j < c_.N; ++j) {
      Rat d_mu = Rat(mp[i] - mp[j]) + c_.beta * (j - i);
      long shift = (lp[i] - lp[j]) - (mp[i] - mp[j]);
      ratio *= gamma_shift_ratio(d_mu + c_.beta, shift);
      ratio *= gamma_shift_ratio(d_mu - c_.beta + 1, shift);
      ratio /= gamma_shift_ratio(d_mu, shift);
      ratio /= gamma_shift_ratio(d_mu + 1, shift);
    }
  }
  ratio.canonicalize();
  return ratio;
}

Rat j_factor(const std::vector<int>& partition, const Coupling& c) {
  for (size_t i = 0; i + 1 < partition.size(); ++i)
    if (partition[i] < partition[i + 1]) throw config_error("not a partition");
  Rat j(1);
  const int rows = static_cast<int>(partition.size());
  for (int i = 0; i < rows; ++i) {
    for (int col = 1; col <= partition[i]; ++col) {
      int arm = partition[i] - col;
      int leg = 0;
      for (int r = i + 1; r < rows; ++r)
        if (partition[r] >= col) ++leg;
      j *= (Rat(arm + 1) + c.beta * leg) / (Rat(arm) + c.beta * (leg + 1));
    }
  }
  j.canonicalize();
  return j;
}

namespace {

// kappa-graded element of SymPoly(X) (x) SymPoly(Y): per degree, a sparse map
// on pairs of traceless keys. The grade tracks the total partition degree, so
// fixed-degree partitions are recoverable when needed.
using TensorGrade = std::map<std::pair<Weight, Weight>, Rat>;

void tensor_accumulate(TensorGrade& g, const SymPoly& fx, const SymPoly& fy, const Rat& scale) {
  for (const auto& [wx, cx] : fx.terms())
    for (const auto& [wy, cy] : fy.terms()) {
      Rat& slot = g[{wx, wy}];
      slot += cx * cy * scale;
      if (sgn(slot) == 0) g.erase({wx, wy});
    }
}

std::vector<std::vector<int>> partitions_of(int n, int max_parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_first, int parts_left) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    if (parts_left == 0) return;
    for (int f = std::min(max_first, remaining); f >= 1; --f) {
      cur.push_back(f);
      self(self, remaining - f, f, parts_left - 1);
      cur.pop_back();
    }
  };
  rec(rec, n, n, max_parts);
  return out;
}

}  // namespace

CauchyReport cauchy_check(const Coupling& c, int degree_cap) {
  CauchyReport rep;
  rep.checked_degree = degree_cap;
  const int n = c.N;
  const Weight zero(n, std::vector<int>(n, 0));

  // LHS: exp(beta sum_m kappa^m p_m(X) p_m(Y) / m) expanded gradewise, where
  // p_m = m_(m,0,...,0) is the power sum.
  std::vector<TensorGrade> lhs(degree_cap + 1);
  lhs[0][{zero, zero}] = 1;
  for (int m = 1; m <= degree_cap; ++m) {
    std::vector<int> pm_parts(n, 0);
    pm_parts[0] = m;
    SymPoly pm = SymPoly::mono(Weight(n, pm_parts));
    // factor exp(beta kappa^m p_m p_m / m) truncated at power floor(cap/m)
    std::vector<TensorGrade> factor(degree_cap + 1);
    factor[0][{zero, zero}] = 1;
    SymPoly px(n), py(n);
    px = SymPoly::mono(zero);
    py = SymPoly::mono(zero);
    Rat coef(1);
    for (int pow = 1; pow * m <= degree_cap; ++pow) {
      px = px * pm;
      py = py * pm;
      coef *= c.beta / Rat(m) / Rat(pow);
      tensor_accumulate(factor[pow * m], px, py, coef);
    }
    // lhs <- lhs * factor (graded convolution)
    std::vector<TensorGrade> next(degree_cap + 1);
    for (int ga = 0; ga <= degree_cap; ++ga) {
      if (lhs[ga].empty()) continue;
      for (int gb = 0; ga + gb <= degree_cap; ++gb) {
        if (factor[gb].empty()) continue;
        for (const auto& [ka, va] : lhs[ga])
          for (const auto& [kb, vb] : factor[gb]) {
            SymPoly mx = mono_mul(ka.first, kb.first).scaled(va * vb);
            SymPoly my = mono_mul(ka.second, kb.second);
            tensor_accumulate(next[ga + gb], mx, my, Rat(1));
          }
      }
    }
    lhs = std::move(next);
  }

  // RHS: per degree, sum over partitions lambda of that size with at most N
  // parts of J*(X) J*(Y) / j_lambda.
  JackEngine engine(c);
  for (int deg = 0; deg <= degree_cap; ++deg) {
    TensorGrade rhs;
    std::vector<std::vector<int>> parts_list;
    if (deg == 0)
      parts_list.push_back({});
    else
      parts_list = partitions_of(deg, n);
    for (auto& p : parts_list) {
      p.resize(n, 0);
      Rat jw = j_factor(p, c);
      const SymPoly& e = engine.jack(Weight(n, p)).expansion;
      tensor_accumulate(rhs, e, e, 1 / jw);
    }
    if (rhs != lhs[deg]) {
      rep.ok = false;
      rep.mismatch = "kappa-degree " + std::to_string(deg);
      // name one offending key
      for (const auto& [k, v] : lhs[deg]) {
        auto it = rhs.find(k);
        if (it == rhs.end() || it->second != v) {
          rep.mismatch += " at key (" + k.first.str() + ")x(" + k.second.str() + ")";
          break;
        }
      }
      return rep;
    }
  }
  return rep;
}

}  // namespace ecms
