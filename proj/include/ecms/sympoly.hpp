#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>

#include "ecms/weights.hpp"
#include "json.hpp"

namespace ecms {

/// W-invariant Laurent expansion sum c_lambda m_lambda over dominant weights,
/// exact rational coefficients, no stored zeros. m_lambda is the orbit sum
/// sum_{mu in W lambda} e^mu.
class SymPoly {
 public:
  using Terms = std::map<Weight, Rat>;

  explicit SymPoly(int n) : N_(n) {}
  static SymPoly mono(const Weight& w, Rat coeff = Rat(1));

  int n() const { return N_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rat coeff(const Weight& w) const;

  void add_term(const Weight& w, const Rat& c);

  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);
  SymPoly operator*(const SymPoly& o) const;
  SymPoly scaled(const Rat& c) const;

  bool operator==(const SymPoly& o) const = default;

  /// Evaluation at z = (1,...,1): sum of c_lambda * |W lambda|.
  Rat eval_at_one() const;

  /// Numeric evaluation at nonzero complex z; fractional mean shifts use the
  /// principal branch of (z_1...z_N)^(-|lambda|*/N).
  std::complex<double> eval_numeric(std::span<const std::complex<double>> z) const;

 private:
  int N_;
  Terms terms_;
};

/// Product of two orbit sums m_a * m_b in the m-basis. The coefficient of
/// m_kappa counts pairs (v, w) in the two orbits with v + w = kappa; computed
/// by scanning the smaller orbit against candidates.
SymPoly mono_mul(const Weight& a, const Weight& b);

/// Canonical JSON form: sorted list of {partition, shift_num, shift_den,
/// coeff_num, coeff_den}; bit-exact round-trip.
nlohmann::ordered_json sympoly_to_json(const SymPoly& f);
SymPoly sympoly_from_json(const nlohmann::json& j);

}  // namespace ecms
