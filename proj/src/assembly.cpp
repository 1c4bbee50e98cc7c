#include "ecms/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "ecms/elliptic.hpp"

namespace ecms {

BasisWindow::BasisWindow(Coupling coupling, int cutoff) : c(std::move(coupling)), L(cutoff) {
  if (L < 0) throw config_error("window cutoff must be >= 0");
  labels = weights_up_to(c.N, L);
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) index.emplace(labels[i], i);
}

int BasisWindow::find(const Weight& w) const {
  auto it = index.find(w);
  return it == index.end() ? -1 : it->second;
}

const RatioVal* OrderKMatrix::entry(int row, int col) const {
  const auto& column = columns[col];
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const auto& e, int r) { return e.first < r; });
  if (it == column.end() || it->first != row) return nullptr;
  return &it->second;
}

double OrderKMatrix::truncated_total() const {
  double t = 0;
  for (double m : truncated_mass) t += m;
  return t;
}

OrderKMatrix wk_matrix(int k, const BasisWindow& win, JackEngine& engine, Exec exec) {
  if (k < 1) throw config_error("order must be >= 1");
  if (win.dim() == 0) throw config_error("empty window");
  OrderKMatrix m;
  m.k = k;
  m.win = &win;
  m.columns.resize(win.dim());
  m.truncated_mass.assign(win.dim(), 0.0);

  PotentialOrder pot = potential_order(k, win.c);
  if (pot.poly.is_zero()) return m;  // beta = 1

  // prebuild every Jack expansion any column can touch, then fill columns in
  // parallel against the immutable cache
  {
    std::vector<Weight> reach = weights_up_to(win.c.N, win.L + win.c.N * k);
    engine.ensure(reach);
  }
  parallel_for(exec, win.dim(), [&](std::ptrdiff_t col) {
    const Weight& lam = win.labels[col];
    SymPoly image = pot.poly * engine.jack(lam).expansion;
    JackExpansion coords = engine.jack_expand(image);
    auto& column = m.columns[col];
    for (const auto& [mu, a] : coords.coeffs) {
      Rat s = engine.norm_sq_ratio(mu, lam);
      int row = win.find(mu);
      if (row < 0) {
        m.truncated_mass[col] += std::abs(a.get_d()) * std::sqrt(s.get_d());
        continue;
      }
      column.emplace_back(row, RatioVal{a, std::move(s)});
    }
    std::sort(column.begin(), column.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  });
  return m;
}

void check_order_matrix(const OrderKMatrix& m) {
  const BasisWindow& win = *m.win;
  const Rat bound(2L * m.k * m.k);
  for (int col = 0; col < win.dim(); ++col) {
    for (const auto& [row, e] : m.columns[col]) {
      if (weight_dist2(win.labels[row], win.labels[col]) > bound)
        throw consistency_error("support bound violated at (" + win.labels[row].str() + ";" +
                                win.labels[col].str() + ") order " + std::to_string(m.k));
      const RatioVal* t = m.entry(col, row);
      if (t == nullptr || !rv_equal(*t, e))
        throw consistency_error("asymmetric entry at (" + win.labels[row].str() + ";" +
                                win.labels[col].str() + ") order " + std::to_string(m.k));
    }
  }
}

std::map<Rat, double> decay_profile(const OrderKMatrix& m) {
  std::map<Rat, double> prof;
  for (int col = 0; col < m.win->dim(); ++col)
    for (const auto& [row, e] : m.columns[col]) {
      Rat d2 = weight_dist2(m.win->labels[row], m.win->labels[col]);
      double v = std::abs(e.value());
      auto [it, fresh] = prof.emplace(std::move(d2), v);
      if (!fresh && it->second < v) it->second = v;
    }
  return prof;
}

namespace {

TruncatedOperator assemble(double p, const Rat* p_exact, const BasisWindow& win, int K,
                           JackEngine& engine, Exec exec) {
  if (!(std::abs(p) < 1.0)) throw config_error("|p| must be < 1");
  if (K < 0) throw config_error("order must be >= 0");
  TruncatedOperator t{win, K, p, Rat(0), false, {}, {}};
  if (p_exact != nullptr) {
    t.p_exact = *p_exact;
    t.has_exact_p = true;
  }
  t.diag.reserve(win.dim());
  for (const auto& w : win.labels) t.diag.push_back(trig_eigenvalue(w, win.c));
  for (int k = 1; k <= K; ++k) t.orders.push_back(wk_matrix(k, win, engine, exec));
  return t;
}

}  // namespace

TruncatedOperator t_matrix(double p, const BasisWindow& win, int K, JackEngine& engine,
                           Exec exec) {
  return assemble(p, nullptr, win, K, engine, exec);
}

TruncatedOperator t_matrix_exact(const Rat& p, const BasisWindow& win, int K, JackEngine& engine,
                                 Exec exec) {
  return assemble(p.get_d(), &p, win, K, engine, exec);
}

RatioVal TruncatedOperator::exact_entry(int row, int col) const {
  if (!has_exact_p) throw config_error("operator built without exact p");
  RatioVal out{Rat(0), Rat(1)};
  if (row == col) out.q = diag[row];
  Rat pk(1);
  for (int k = 1; k <= K; ++k) {
    pk *= p_exact;
    if (const RatioVal* e = orders[k - 1].entry(row, col)) {
      out.s = e->s;  // shared ratio for the position across orders
      out.q += pk * e->q;
    }
  }
  return out;
}

std::vector<double> TruncatedOperator::dense() const {
  const int d = win.dim();
  std::vector<double> a(static_cast<size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) a[static_cast<size_t>(i) * d + i] = diag[i].get_d();
  double pk = 1.0;
  for (int k = 1; k <= K; ++k) {
    pk *= p;
    const auto& m = orders[k - 1];
    for (int col = 0; col < d; ++col)
      for (const auto& [row, e] : m.columns[col])
        if (row <= col) a[static_cast<size_t>(row) * d + col] += pk * e.value();
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) a[static_cast<size_t>(i) * d + j] = a[static_cast<size_t>(j) * d + i];
  return a;
}

std::string export_coordinate_list(const OrderKMatrix& m) {
  std::string out;
  for (int col = 0; col < m.win->dim(); ++col)
    for (const auto& [row, e] : m.columns[col]) {
      out += m.win->labels[row].str();
      out += ' ';
      out += m.win->labels[col].str();
      out += ' ';
      out += rat_str(e.q);
      out += ' ';
      out += rat_str(e.s);
      out += '\n';
    }
  return out;
}

}  // namespace ecms
