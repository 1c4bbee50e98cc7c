#pragma once

#include <functional>
#include <memory>
#include <span>
#include <variant>

#include "ecms/assembly.hpp"

namespace ecms {

/// Unresolvable degenerate input where a unique series does not exist.
struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Order-by-order expansion of one eigenpair: energies E^0..E^K (exact
/// rationals) and vector coefficients c^0..c^K on normalized Jacobi basis
/// elements, c^0 the unit vector at the label.
struct SeriesCoeffs {
  Weight label;
  int K = 0;
  std::vector<Rat> energy;
  std::vector<std::map<Weight, RatioVal>> vectors;
  std::string branch;  // "" when non-degenerate; sector tag for block output
};

/// All mu in P+ congruent to lam mod the root lattice with
/// |mu - lam|^2 <= 2 K^2: the exact closure of K-fold products of the
/// per-order coupling supports.
std::vector<Weight> coupling_ball(const Weight& lam, int K, const Coupling& c);

struct DegenerateBlock {
  std::vector<Weight> members;  // equal unperturbed energy, sorted
};

/// Members of the coupling ball sharing trig_eigenvalue(lam) exactly;
/// size one means non-degenerate.
DegenerateBlock degeneracy_scan(const Weight& lam, int K, const Coupling& c);

/// Abstract order-graded operator data: H(p) = diag(E0) + sum_k p^k d^k over
/// integer state ids. Columns are symmetric sparse lists including the
/// diagonal. The recursion consumes a list of these sharing one basis; only
/// the first drives the vector coefficients, each contributes its own energy
/// series.
class OperatorData {
 public:
  virtual ~OperatorData() = default;
  virtual int states() const = 0;
  virtual Rat e0(int state) const = 0;
  virtual const std::vector<std::pair<int, RatioVal>>& column(int k, int state) const = 0;
  virtual std::string state_name(int state) const = 0;
};

/// Window-backed operator data over pre-assembled order matrices.
class WindowOperator : public OperatorData {
 public:
  WindowOperator(const BasisWindow& win, std::span<const OrderKMatrix> orders);
  int states() const override;
  Rat e0(int state) const override;
  const std::vector<std::pair<int, RatioVal>>& column(int k, int state) const override;
  std::string state_name(int state) const override;
  const BasisWindow& window() const { return *win_; }

 private:
  const BasisWindow* win_;
  std::span<const OrderKMatrix> orders_;
  std::vector<Rat> diag_;
  std::vector<std::pair<int, RatioVal>> empty_;
};

struct RsResult {
  std::vector<std::vector<Rat>> energies;  // per operator
  std::vector<std::map<int, RatioVal>> vectors;
};

/// The recursion: c and E determined order by order from the spectral data;
/// unique once c^0 is the unit vector and (v, v) = 1 holds gradewise.
RsResult rs_core(std::span<const OperatorData* const> ops, int start, int K);

/// Non-degenerate series for lam from window-assembled operator data.
/// Preconditions: coupling_ball(lam, K) inside the window (error names the
/// first missing weight) and degeneracy_scan trivial.
SeriesCoeffs rs_series(const Weight& lam, int K, const BasisWindow& win,
                       std::span<const OrderKMatrix> orders);

struct BlockSeriesResult {
  bool resolved = false;
  std::vector<SeriesCoeffs> branches;
  DegenerateBlock residual;  // the unsplit block when !resolved
  std::string note;
};

/// Degenerate blocks: a singleton reduces to rs_series; a dual pair
/// {lam, lam*} is rotated into the symmetric/antisymmetric sectors of the
/// lattice duality (which commutes with every order) and each sector runs
/// the non-degenerate recursion; anything else is reported unresolved.
BlockSeriesResult degenerate_block_series(const DegenerateBlock& block, int K,
                                          const BasisWindow& win,
                                          std::span<const OrderKMatrix> orders,
                                          JackEngine& engine);

struct SeriesEval {
  double energy = 0;
  std::map<Weight, double> vector;
  double tail_estimate = 0;  // last-term ratio heuristic, not rigorous
};

SeriesEval series_eval(const SeriesCoeffs& s, double p);

/// Exact checks used by tests and the verify suites: the graded
/// eigen-equation (H0 + sum d^k p^k)(sum c^k p^k) = (sum E^k p^k)(sum c^k p^k)
/// and the graded normalization (v, v) = 1, both through order K.
void check_series_identity(const SeriesCoeffs& s, const BasisWindow& win,
                           std::span<const OrderKMatrix> orders);
void check_series_normalization(const SeriesCoeffs& s);

}  // namespace ecms
