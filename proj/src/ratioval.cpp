#include "ecms/ratioval.hpp"

#include <cmath>

namespace ecms {

double RatioVal::value() const { return q.get_d() * std::sqrt(s.get_d()); }

RatioVal rv_mul(const RatioVal& a, const RatioVal& b) {
  if (a.is_zero() || b.is_zero()) return RatioVal::zero();
  Rat s = a.s * b.s;
  s.canonicalize();
  Rat q = a.q * b.q;
  if (auto root = rat_sqrt(s)) {
    q *= *root;
    s = 1;
  }
  q.canonicalize();
  return {std::move(q), std::move(s)};
}

RatioVal rv_scale(const RatioVal& a, const Rat& c) {
  if (sgn(c) == 0 || a.is_zero()) return RatioVal::zero();
  return {a.q * c, a.s};
}

void rv_add(RatioVal& acc, const RatioVal& t) {
  if (t.is_zero()) return;
  if (acc.is_zero()) {
    acc = t;
    return;
  }
  Rat ratio = t.s / acc.s;
  ratio.canonicalize();
  auto root = rat_sqrt(ratio);
  if (!root)
    throw consistency_error("incompatible ratio factors: " + rat_str(acc.s) + " vs " +
                            rat_str(t.s));
  acc.q += t.q * *root;
  if (sgn(acc.q) == 0) acc = RatioVal::zero();
}

Rat rv_rational(const RatioVal& a) {
  if (a.is_zero()) return Rat(0);
  auto root = rat_sqrt(a.s);
  if (!root) throw consistency_error("value does not collapse to a rational: sqrt(" +
                                     rat_str(a.s) + ")");
  Rat r = a.q * *root;
  r.canonicalize();
  return r;
}

bool rv_equal(const RatioVal& a, const RatioVal& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (sgn(a.q) != sgn(b.q)) return false;
  return a.q * a.q * a.s == b.q * b.q * b.s;
}

}  // namespace ecms
