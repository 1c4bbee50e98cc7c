#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace ecms {

/// Exact arbitrary-precision rational, canonicalized (lowest terms, den > 0).
using Rat = mpq_class;

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an internal exactness invariant fails (matrix asymmetry,
/// vanishing triangular denominator, incompatible ratio factors).
struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Canonicalized fraction; the two-argument mpq constructor alone does not
/// reduce, and GMP comparisons require reduced form.
inline Rat frac(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "a" or "a/b" with arbitrary-precision integers. Rejects b == 0.
Rat rat_parse(const std::string& s);

/// "num/den" in lowest terms, always with the denominator.
std::string rat_str(const Rat& q);

/// Exact square root when q is the square of a rational, std::nullopt otherwise.
std::optional<Rat> rat_sqrt(const Rat& q);

inline Rat rat_pow(Rat base, long e) {
  Rat r(1);
  if (e < 0) {
    base = 1 / base;
    e = -e;
  }
  for (; e > 0; --e) r *= base;
  return r;
}

/// Formats a double with 17 significant digits (round-trip safe).
std::string fmt17(double x);

}  // namespace ecms
