#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "ecms/rational.hpp"

namespace ecms {

/// Coupling data for the A_{N-1} model: one rational constant beta > 0 for
/// the single root orbit.
struct Coupling {
  int N;
  Rat beta;
  long k_num = 0;  // beta = k_num / k_den in lowest terms
  long k_den = 1;

  Coupling(int n, Rat b);
};

/// Dominant weight of A_{N-1}, stored as its canonical partition form:
/// weakly decreasing nonnegative integers with last part 0. The traceless
/// coordinates are coord(i) = parts[i] - total/N; all N coordinates share
/// denominator N, with integer numerators N*parts[i] - total.
class Weight {
 public:
  Weight() = default;
  /// From any weakly decreasing nonnegative integer partition with exactly
  /// n parts (trailing zeros allowed); normalizes to last part 0.
  Weight(int n, std::vector<int> partition);

  int n() const { return N_; }
  const std::vector<int>& parts() const { return parts_; }
  /// |lambda|* of the canonical partition form.
  long total() const { return total_; }
  /// N * coord(i), an integer.
  long coord_num(int i) const { return static_cast<long>(N_) * parts_[i] - total_; }
  std::vector<long> coord_nums() const;

  bool is_zero() const { return total_ == 0; }

  /// Global basis order: graded by |lambda|*, ties broken lexicographically
  /// on parts (dominated partitions first, refining the dominance order).
  std::strong_ordering operator<=>(const Weight& o) const;
  bool operator==(const Weight& o) const = default;

  /// The image under the lattice duality x -> -x (dual partition).
  Weight dual() const;

  std::string str() const;  // "2,1,0"

 private:
  int N_ = 0;
  std::vector<int> parts_;
  long total_ = 0;
};

/// Weight from raw traceless coordinate numerators (denominator N); sorts to
/// the dominant representative.
Weight weight_from_coord_nums(int n, std::vector<long> nums);

/// nu <= mu in dominance: mu - nu is a nonnegative integer combination of
/// simple roots.
bool dominance_leq(const Weight& nu, const Weight& mu);

/// mu - nu in the root lattice Q (integer coordinates, any sign).
bool in_root_lattice(const Weight& nu, const Weight& mu);

/// Exact inner product of traceless coordinates.
Rat weight_inner(const Weight& a, const Weight& b);
/// |a - b|^2, exact.
Rat weight_dist2(const Weight& a, const Weight& b);

/// rho(k) = (beta/2) sum of positive roots, as exact coordinates.
std::vector<Rat> rho_coords(const Coupling& c);
/// e0 = (1/12) sum over positive roots of beta(beta-1)|alpha|^2
///    = N(N-1) beta(beta-1) / 12.
Rat e0_constant(const Coupling& c);

/// E_lambda = (lambda + rho | lambda + rho) - e0, exact.
Rat trig_eigenvalue(const Weight& lam, const Coupling& c);

/// Orbit of lam under S_N as coordinate-numerator vectors (denominator N),
/// each distinct permutation once.
std::vector<std::vector<long>> weyl_orbit(const Weight& lam);
/// Orbit size N!/|stabilizer|.
long weyl_orbit_size(const Weight& lam);

/// Highest root theta = e_1 - e_N scaled by j, as a Weight.
Weight theta_multiple(int n, int j);

/// All canonical partitions (last part 0) with sum <= max_total, in global
/// order. The building block for basis windows and dominance balls.
std::vector<Weight> weights_up_to(int n, int max_total);

/// All nu dominated by lam (nu <= lam in dominance), in global order.
std::vector<Weight> dominated_by(const Weight& lam);

/// Minimal n with (P|P) in Z/n, computed from the fundamental-weight Gram
/// matrix (equals N for A_{N-1}).
long weight_gram_denominator(int n);

}  // namespace ecms
