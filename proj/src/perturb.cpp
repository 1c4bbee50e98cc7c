#include "ecms/perturb.hpp"

#include <algorithm>
#include <cmath>

namespace ecms {

std::vector<Weight> coupling_ball(const Weight& lam, int K, const Coupling& c) {
  if (K < 0) throw config_error("order must be >= 0");
  const Rat bound(2L * K * K);
  std::vector<Weight> out;
  for (const auto& mu : weights_up_to(c.N, static_cast<int>(lam.total()) + c.N * K)) {
    if (!in_root_lattice(mu, lam)) continue;
    if (weight_dist2(mu, lam) > bound) continue;
    out.push_back(mu);
  }
  return out;
}

DegenerateBlock degeneracy_scan(const Weight& lam, int K, const Coupling& c) {
  DegenerateBlock block;
  const Rat e = trig_eigenvalue(lam, c);
  for (const auto& mu : coupling_ball(lam, K, c))
    if (trig_eigenvalue(mu, c) == e) block.members.push_back(mu);
  return block;
}

WindowOperator::WindowOperator(const BasisWindow& win, std::span<const OrderKMatrix> orders)
    : win_(&win), orders_(orders) {
  diag_.reserve(win.dim());
  for (const auto& w : win.labels) diag_.push_back(trig_eigenvalue(w, win.c));
}

int WindowOperator::states() const { return win_->dim(); }

Rat WindowOperator::e0(int state) const { return diag_[state]; }

const std::vector<std::pair<int, RatioVal>>& WindowOperator::column(int k, int state) const {
  if (k < 1 || k > static_cast<int>(orders_.size()))
    throw config_error("order matrix " + std::to_string(k) + " not assembled");
  return orders_[k - 1].columns[state];
}

std::string WindowOperator::state_name(int state) const { return win_->labels[state].str(); }

RsResult rs_core(std::span<const OperatorData* const> ops, int start, int K) {
  if (ops.empty()) throw config_error("need at least one operator");
  const OperatorData& primary = *ops[0];
  RsResult r;
  r.vectors.resize(K + 1);
  r.vectors[0].emplace(start, RatioVal::of(Rat(1)));
  r.energies.resize(ops.size());
  for (size_t i = 0; i < ops.size(); ++i) {
    r.energies[i].assign(K + 1, Rat(0));
    r.energies[i][0] = ops[i]->e0(start);
  }
  const Rat e0_start = primary.e0(start);

  for (int k = 1; k <= K; ++k) {
    // acc[j'] = sum_{k'=1..k} sum_{j''} c^{k-k'}_{j''} d^{k'}_{j',j''}
    std::map<int, RatioVal> acc;
    for (int kp = 1; kp <= k; ++kp) {
      for (const auto& [jpp, cval] : r.vectors[k - kp]) {
        for (const auto& [row, d] : primary.column(kp, jpp)) rv_add(acc[row], rv_mul(cval, d));
      }
    }
    // energy coefficients, one series per operator off the shared vectors
    for (size_t i = 0; i < ops.size(); ++i) {
      RatioVal eacc = RatioVal::zero();
      if (i == 0) {
        auto it = acc.find(start);
        if (it != acc.end()) eacc = it->second;
      } else {
        for (int kp = 1; kp <= k; ++kp)
          for (const auto& [jpp, cval] : r.vectors[k - kp])
            for (const auto& [row, d] : ops[i]->column(kp, jpp))
              if (row == start) rv_add(eacc, rv_mul(cval, d));
      }
      for (int kp = 1; kp <= k - 1; ++kp) {
        auto it = r.vectors[k - kp].find(start);
        if (it != r.vectors[k - kp].end())
          rv_add(eacc, rv_scale(it->second, -r.energies[i][kp]));
      }
      r.energies[i][k] = rv_rational(eacc);  // asserts the radical collapse
    }
    // off-diagonal coefficients
    std::map<int, RatioVal> next = std::move(acc);
    next.erase(start);
    for (int kp = 1; kp <= k - 1; ++kp)
      for (const auto& [jp, cval] : r.vectors[k - kp]) {
        if (jp == start) continue;
        rv_add(next[jp], rv_scale(cval, -r.energies[0][kp]));
      }
    for (auto it = next.begin(); it != next.end();) {
      if (it->second.is_zero()) {
        it = next.erase(it);
        continue;
      }
      Rat den = e0_start - primary.e0(it->first);
      if (sgn(den) == 0)
        throw degeneracy_error("degenerate pair (" + primary.state_name(start) + ") vs (" +
                               primary.state_name(it->first) + ") reached by the recursion");
      it->second = rv_scale(it->second, 1 / den);
      ++it;
    }
    // diagonal from the gradewise normalization
    RatioVal diag = RatioVal::zero();
    for (int kp = 1; kp <= k - 1; ++kp)
      for (const auto& [jp, v1] : r.vectors[kp]) {
        auto it = r.vectors[k - kp].find(jp);
        if (it != r.vectors[k - kp].end()) rv_add(diag, rv_mul(v1, it->second));
      }
    if (!diag.is_zero()) next[start] = rv_scale(diag, Rat(-1, 2));
    r.vectors[k] = std::move(next);
  }
  return r;
}

namespace {

SeriesCoeffs translate(const RsResult& res, const std::vector<Weight>& names, const Weight& lam,
                       int K, std::string branch) {
  SeriesCoeffs s;
  s.label = lam;
  s.K = K;
  s.energy = res.energies[0];
  s.vectors.resize(K + 1);
  for (int k = 0; k <= K; ++k)
    for (const auto& [id, v] : res.vectors[k]) s.vectors[k].emplace(names[id], v);
  s.branch = std::move(branch);
  return s;
}

}  // namespace

SeriesCoeffs rs_series(const Weight& lam, int K, const BasisWindow& win,
                       std::span<const OrderKMatrix> orders) {
  for (const auto& mu : coupling_ball(lam, K, win.c))
    if (win.find(mu) < 0)
      throw config_error("window too small for the series at (" + lam.str() + "): missing (" +
                         mu.str() + ")");
  if (static_cast<int>(orders.size()) < K)
    throw config_error("need order matrices through k = " + std::to_string(K));
  DegenerateBlock block = degeneracy_scan(lam, K, win.c);
  if (block.members.size() > 1) {
    std::string names;
    for (const auto& m : block.members) names += " (" + m.str() + ")";
    throw degeneracy_error("state (" + lam.str() + ") is degenerate within its coupling ball:" +
                           names + "; use the degenerate block path");
  }
  WindowOperator op(win, orders);
  const OperatorData* ops[] = {&op};
  RsResult res = rs_core(ops, win.find(lam), K);
  return translate(res, win.labels, lam, K, "");
}

namespace {

/// Sector of the lattice-duality involution over a dual-closed state set.
/// States are pair representatives (and self-dual weights in the even
/// sector); matrix elements come from the window-assembled orders.
class SectorOperator : public OperatorData {
 public:
  SectorOperator(const BasisWindow& win, std::span<const OrderKMatrix> orders,
                 const std::vector<Weight>& closed_set, int sigma)
      : win_(&win), orders_(orders), sigma_(sigma) {
    for (const auto& w : closed_set) {
      Weight d = w.dual();
      if (sigma_ < 0 && d == w) continue;  // self-duals live in the even sector
      if (d < w) continue;                 // keep the smaller representative
      reps_.push_back(w);
      duals_.push_back(d);
    }
    for (int i = 0; i < static_cast<int>(reps_.size()); ++i) {
      rep_index_.emplace(reps_[i], i);
      e0_.push_back(trig_eigenvalue(reps_[i], win.c));
      rep_win_.push_back(win.find(reps_[i]));
      dual_win_.push_back(win.find(duals_[i]));
      if (rep_win_.back() < 0 || dual_win_.back() < 0)
        throw config_error("window too small for the dual-closed set: missing (" +
                           (rep_win_.back() < 0 ? reps_[i] : duals_[i]).str() + ")");
    }
  }

  int states() const override { return static_cast<int>(reps_.size()); }
  Rat e0(int state) const override { return e0_[state]; }
  std::string state_name(int state) const override {
    return reps_[state].str() + (sigma_ > 0 ? "+" : "-");
  }
  int index_of(const Weight& w) const {
    auto it = rep_index_.find(w);
    return it == rep_index_.end() ? -1 : it->second;
  }
  const Weight& rep(int i) const { return reps_[i]; }
  const Weight& dual_of(int i) const { return duals_[i]; }
  bool self_dual(int i) const { return reps_[i] == duals_[i]; }

  const std::vector<std::pair<int, RatioVal>>& column(int k, int state) const override {
    auto key = std::make_pair(k, state);
    auto hit = cache_.find(key);
    if (hit != cache_.end()) return hit->second;
    const OrderKMatrix& m = orders_[k - 1];
    const RatioVal half{Rat(1), Rat(1, 2)};
    std::vector<std::pair<int, RatioVal>> col;
    for (int i = 0; i < states(); ++i) {
      RatioVal val = RatioVal::zero();
      auto add = [&](int wrow, int wcol, int sign, bool halve) {
        if (const RatioVal* e = m.entry(wrow, wcol)) {
          RatioVal t = sign < 0 ? rv_scale(*e, Rat(-1)) : *e;
          if (halve) t = rv_mul(t, half);
          rv_add(val, t);
        }
      };
      const bool self_i = self_dual(i);
      const bool self_j = self_dual(state);
      if (!self_i && !self_j) {
        add(rep_win_[i], rep_win_[state], +1, false);
        add(rep_win_[i], dual_win_[state], sigma_, false);
      } else if (self_i && !self_j) {
        add(rep_win_[i], rep_win_[state], +1, true);
        add(rep_win_[i], dual_win_[state], sigma_, true);
      } else if (!self_i && self_j) {
        add(rep_win_[i], rep_win_[state], +1, true);
        add(dual_win_[i], rep_win_[state], sigma_, true);
      } else {
        add(rep_win_[i], rep_win_[state], +1, false);
      }
      if (!val.is_zero()) col.emplace_back(i, std::move(val));
    }
    return cache_.emplace(std::move(key), std::move(col)).first->second;
  }

 private:
  const BasisWindow* win_;
  std::span<const OrderKMatrix> orders_;
  int sigma_;
  std::vector<Weight> reps_, duals_;
  std::map<Weight, int> rep_index_;
  std::vector<Rat> e0_;
  std::vector<int> rep_win_, dual_win_;
  mutable std::map<std::pair<int, int>, std::vector<std::pair<int, RatioVal>>> cache_;
};

}  // namespace

BlockSeriesResult degenerate_block_series(const DegenerateBlock& block, int K,
                                          const BasisWindow& win,
                                          std::span<const OrderKMatrix> orders,
                                          JackEngine& engine) {
  BlockSeriesResult out;
  out.residual = block;
  if (block.members.empty()) throw config_error("empty block");
  if (block.members.size() == 1) {
    out.resolved = true;
    out.branches.push_back(rs_series(block.members[0], K, win, orders));
    return out;
  }
  if (block.members.size() != 2 || block.members[0].dual() != block.members[1]) {
    out.note = "block is not a dual pair; no exact rotation available";
    return out;
  }
  const Weight& a = block.members[0];
  const Weight& b = block.members[1];
  if (engine.norm_sq_ratio(a, b) != 1) {
    out.note = "dual pair with unequal norms; sector rotation unavailable";
    return out;
  }
  // dual-closed exact reach of both members
  std::vector<Weight> closed = coupling_ball(a, K, win.c);
  {
    auto more = coupling_ball(b, K, win.c);
    closed.insert(closed.end(), more.begin(), more.end());
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
  }
  for (const auto& w : closed)
    if (win.find(w) < 0)
      throw config_error("window too small for the block at (" + a.str() + "): missing (" +
                         w.str() + ")");

  const RatioVal half{Rat(1), Rat(1, 2)};
  const char* tags[2] = {"symmetric", "antisymmetric"};
  std::vector<SeriesCoeffs> branches;
  for (int side = 0; side < 2; ++side) {
    const int sigma = side == 0 ? 1 : -1;
    SectorOperator op(win, orders, closed, sigma);
    int start = op.index_of(std::min(a, b));
    if (start < 0) throw consistency_error("block member missing from its own sector");
    const OperatorData* ops[] = {&op};
    RsResult res;
    try {
      res = rs_core(ops, start, K);
    } catch (const degeneracy_error& e) {
      out.note = std::string("sector recursion hit a further degeneracy: ") + e.what();
      return out;
    }
    SeriesCoeffs s;
    s.label = block.members[side];
    s.K = K;
    s.branch = tags[side];
    s.energy = res.energies[0];
    s.vectors.resize(K + 1);
    for (int k = 0; k <= K; ++k) {
      for (const auto& [id, v] : res.vectors[k]) {
        if (op.self_dual(id)) {
          s.vectors[k].emplace(op.rep(id), v);
        } else {
          RatioVal component = rv_mul(v, half);
          s.vectors[k].emplace(op.rep(id), component);
          s.vectors[k].emplace(op.dual_of(id), rv_scale(component, Rat(sigma)));
        }
      }
    }
    branches.push_back(std::move(s));
  }
  out.branches = std::move(branches);
  out.resolved = out.branches[0].energy != out.branches[1].energy;
  if (!out.resolved) out.note = "block not split through order " + std::to_string(K);
  return out;
}

SeriesEval series_eval(const SeriesCoeffs& s, double p) {
  SeriesEval out;
  double e = 0;
  for (int k = s.K; k >= 0; --k) e = e * p + s.energy[k].get_d();
  out.energy = e;
  for (int k = 0; k <= s.K; ++k) {
    double pk = std::pow(p, k);
    for (const auto& [w, v] : s.vectors[k]) out.vector[w] += pk * v.value();
  }
  if (s.K >= 1) {
    double last = std::abs(s.energy[s.K].get_d()) * std::pow(std::abs(p), s.K);
    double prev = std::abs(s.energy[s.K - 1].get_d());
    double ratio = prev > 0 ? std::abs(s.energy[s.K].get_d()) / prev : 0.0;
    double x = std::abs(p) * ratio;
    out.tail_estimate = x < 1 ? last * x / (1 - x) : std::numeric_limits<double>::infinity();
  }
  return out;
}

void check_series_identity(const SeriesCoeffs& s, const BasisWindow& win,
                           std::span<const OrderKMatrix> orders) {
  std::vector<Rat> diag;
  diag.reserve(win.dim());
  for (const auto& w : win.labels) diag.push_back(trig_eigenvalue(w, win.c));
  for (int k = 0; k <= s.K; ++k) {
    std::map<Weight, RatioVal> lhs, rhs;
    for (const auto& [mu, cval] : s.vectors[k]) {
      int idx = win.find(mu);
      if (idx < 0) throw config_error("series support leaves the window at (" + mu.str() + ")");
      rv_add(lhs[mu], rv_scale(cval, diag[idx]));
    }
    for (int kp = 1; kp <= std::min<int>(k, static_cast<int>(orders.size())); ++kp)
      for (const auto& [nu, cval] : s.vectors[k - kp]) {
        int col = win.find(nu);
        if (col < 0) throw config_error("series support leaves the window at (" + nu.str() + ")");
        for (const auto& [row, d] : orders[kp - 1].columns[col])
          rv_add(lhs[win.labels[row]], rv_mul(cval, d));
      }
    for (int kp = 0; kp <= k; ++kp)
      for (const auto& [mu, cval] : s.vectors[k - kp]) rv_add(rhs[mu], rv_scale(cval, s.energy[kp]));
    auto prune = [](std::map<Weight, RatioVal>& m) {
      for (auto it = m.begin(); it != m.end();)
        it = it->second.is_zero() ? m.erase(it) : std::next(it);
    };
    prune(lhs);
    prune(rhs);
    if (lhs.size() != rhs.size())
      throw consistency_error("graded eigen-equation support mismatch at order " +
                              std::to_string(k));
    for (const auto& [mu, v] : lhs) {
      auto it = rhs.find(mu);
      if (it == rhs.end() || !rv_equal(v, it->second))
        throw consistency_error("graded eigen-equation fails at order " + std::to_string(k) +
                                ", row (" + mu.str() + ")");
    }
  }
}

void check_series_normalization(const SeriesCoeffs& s) {
  for (int k = 0; k <= s.K; ++k) {
    RatioVal acc = RatioVal::zero();
    for (int kp = 0; kp <= k; ++kp)
      for (const auto& [mu, v1] : s.vectors[kp]) {
        auto it = s.vectors[k - kp].find(mu);
        if (it != s.vectors[k - kp].end()) rv_add(acc, rv_mul(v1, it->second));
      }
    Rat val = rv_rational(acc);
    if (val != Rat(k == 0 ? 1 : 0))
      throw consistency_error("graded normalization fails at order " + std::to_string(k));
  }
}

}  // namespace ecms
