#pragma once

#include <map>
#include <vector>

#include "ecms/jack.hpp"
#include "ecms/parallel.hpp"
#include "ecms/ratioval.hpp"

namespace ecms {

/// Graded basis window: all dominant weights with |lambda|* <= L in the
/// global order. A full degree ball, so order-k couplings inside it are
/// closed under the support rule automatically.
struct BasisWindow {
  Coupling c;
  int L = 0;
  std::vector<Weight> labels;
  std::map<Weight, int> index;

  BasisWindow(Coupling coupling, int cutoff);
  int find(const Weight& w) const;  // -1 when outside
  int dim() const { return static_cast<int>(labels.size()); }
};

/// Order-k block of the perturbation in the normalized Jacobi basis. An
/// entry is q * sqrt(s): the rational Jack-basis coefficient q with the
/// squared norm ratio s = ||J_row||^2 / ||J_col||^2 kept separately so
/// exactness survives the normalization.
struct OrderKMatrix {
  int k = 0;
  const BasisWindow* win = nullptr;
  // columns[j]: sparse list of (row index, entry), sorted by row
  std::vector<std::vector<std::pair<int, RatioVal>>> columns;
  // per-column float mass of couplings falling outside the window
  std::vector<double> truncated_mass;

  const RatioVal* entry(int row, int col) const;
  double truncated_total() const;
};

/// Assembles <T^(k) J~_col, J~_row> column by column: multiply the order-k
/// potential into J_col, re-expand in the Jack basis, attach norm ratios.
OrderKMatrix wk_matrix(int k, const BasisWindow& win, JackEngine& engine,
                       Exec exec = Exec::Serial);

/// Exact symmetry (a^2 s match and sign agreement) and the support bound
/// |row - col|^2 <= 2 k^2. Throws consistency_error on violation.
void check_order_matrix(const OrderKMatrix& m);

/// Largest |entry| per squared distance, for decay diagnostics.
std::map<Rat, double> decay_profile(const OrderKMatrix& m);

/// T(p) = diag(trig eigenvalues) + sum_{k<=K} p^k W_k on the window.
struct TruncatedOperator {
  BasisWindow win;
  int K = 0;
  double p = 0.0;
  Rat p_exact;       // exact p when representable (always set from CLI input)
  bool has_exact_p = false;
  std::vector<Rat> diag;
  std::vector<OrderKMatrix> orders;  // orders[k-1] holds W_k

  /// Exact entry sum_k p^k q_k * sqrt(s_ij) (common ratio per position);
  /// requires has_exact_p.
  RatioVal exact_entry(int row, int col) const;
  /// Dense symmetric float matrix, mirrored from the upper triangle.
  std::vector<double> dense() const;  // row-major dim x dim
};

TruncatedOperator t_matrix(double p, const BasisWindow& win, int K, JackEngine& engine,
                           Exec exec = Exec::Serial);
TruncatedOperator t_matrix_exact(const Rat& p, const BasisWindow& win, int K, JackEngine& engine,
                                 Exec exec = Exec::Serial);

/// Stable coordinate-list text export: one line per stored entry,
/// "row_partition col_partition a_num/a_den s_num/s_den", sorted.
std::string export_coordinate_list(const OrderKMatrix& m);

}  // namespace ecms
