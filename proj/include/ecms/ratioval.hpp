#pragma once

#include "ecms/rational.hpp"

namespace ecms {

/// Exact value q * sqrt(s) with q rational and s > 0 rational. Norm ratios
/// enter the normalized Jacobi basis as square roots; keeping the radicand
/// separate keeps the pipeline exact. Sums require s factors that agree up to
/// the square of a rational; products telescope through mpq canonicalization.
struct RatioVal {
  Rat q{0};
  Rat s{1};

  bool is_zero() const { return sgn(q) == 0; }
  double value() const;

  static RatioVal zero() { return {Rat(0), Rat(1)}; }
  static RatioVal of(Rat r) { return {std::move(r), Rat(1)}; }
};

RatioVal rv_mul(const RatioVal& a, const RatioVal& b);
RatioVal rv_scale(const RatioVal& a, const Rat& c);

/// acc += t; throws consistency_error when the radicands are incompatible.
void rv_add(RatioVal& acc, const RatioVal& t);

/// Collapses to a plain rational; throws when sqrt(s) is irrational.
Rat rv_rational(const RatioVal& a);

bool rv_equal(const RatioVal& a, const RatioVal& b);

}  // namespace ecms
