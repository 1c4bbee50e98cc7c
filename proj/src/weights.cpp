#include "ecms/weights.hpp"

#include <algorithm>
#include <numeric>

namespace ecms {

Coupling::Coupling(int n, Rat b) : N(n), beta(std::move(b)) {
  if (N < 2) throw config_error("N must be >= 2");
  if (sgn(beta) <= 0) throw config_error("beta must be > 0");
  beta.canonicalize();
  if (!beta.get_num().fits_slong_p() || !beta.get_den().fits_slong_p())
    throw config_error("beta out of supported range");
  k_num = beta.get_num().get_si();
  k_den = beta.get_den().get_si();
}

Weight::Weight(int n, std::vector<int> partition) : N_(n), parts_(std::move(partition)) {
  if (N_ < 2) throw config_error("weight rank must be >= 2");
  if (static_cast<int>(parts_.size()) != N_)
    throw config_error("partition must have exactly N parts");
  for (int i = 0; i + 1 < N_; ++i)
    if (parts_[i] < parts_[i + 1])
      throw config_error("partition parts must be weakly decreasing");
  if (parts_.back() < 0) throw config_error("partition parts must be nonnegative");
  if (parts_.back() != 0) {
    int last = parts_.back();
    for (auto& p : parts_) p -= last;
  }
  total_ = std::accumulate(parts_.begin(), parts_.end(), 0L);
}

std::vector<long> Weight::coord_nums() const {
  std::vector<long> v(N_);
  for (int i = 0; i < N_; ++i) v[i] = coord_num(i);
  return v;
}

std::strong_ordering Weight::operator<=>(const Weight& o) const {
  if (auto c = total_ <=> o.total_; c != 0) return c;
  // tie break within a grade: lexicographic on parts, which puts dominated
  // partitions first and so refines the dominance order
  for (int i = 0; i < N_; ++i)
    if (auto c = parts_[i] <=> o.parts_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

Weight Weight::dual() const {
  std::vector<int> d(N_);
  for (int i = 0; i < N_; ++i) d[i] = parts_[0] - parts_[N_ - 1 - i];
  return Weight(N_, std::move(d));
}

std::string Weight::str() const {
  std::string s;
  for (int i = 0; i < N_; ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

Weight weight_from_coord_nums(int n, std::vector<long> nums) {
  std::sort(nums.begin(), nums.end(), std::greater<>());
  long last = nums.back();
  std::vector<int> parts(n);
  for (int i = 0; i < n; ++i) {
    long p = (nums[i] - last) / n;
    if (p * n != nums[i] - last)
      throw consistency_error("coordinate numerators not congruent mod N");
    parts[i] = static_cast<int>(p);
  }
  return Weight(n, std::move(parts));
}

bool in_root_lattice(const Weight& nu, const Weight& mu) {
  if (nu.n() != mu.n()) throw config_error("rank mismatch");
  // integer coordinate differences <=> equal totals mod N
  return (mu.total() - nu.total()) % mu.n() == 0;
}

bool dominance_leq(const Weight& nu, const Weight& mu) {
  const int n = nu.n();
  if (n != mu.n()) throw config_error("rank mismatch");
  if (!in_root_lattice(nu, mu)) return false;
  long prefix = 0;
  for (int i = 0; i + 1 < n; ++i) {
    prefix += mu.coord_num(i) - nu.coord_num(i);
    if (prefix < 0) return false;
  }
  return true;
}

Rat weight_inner(const Weight& a, const Weight& b) {
  const int n = a.n();
  if (n != b.n()) throw config_error("rank mismatch");
  long acc = 0;
  for (int i = 0; i < n; ++i) acc += a.coord_num(i) * b.coord_num(i);
  return frac(acc, static_cast<long>(n) * n);
}

Rat weight_dist2(const Weight& a, const Weight& b) {
  const int n = a.n();
  if (n != b.n()) throw config_error("rank mismatch");
  long acc = 0;
  for (int i = 0; i < n; ++i) {
    long d = a.coord_num(i) - b.coord_num(i);
    acc += d * d;
  }
  return frac(acc, static_cast<long>(n) * n);
}

std::vector<Rat> rho_coords(const Coupling& c) {
  std::vector<Rat> v(c.N);
  for (int i = 0; i < c.N; ++i) v[i] = c.beta * frac(c.N + 1 - 2 * (i + 1), 2);
  return v;
}

Rat e0_constant(const Coupling& c) {
  return frac(static_cast<long>(c.N) * (c.N - 1), 12) * c.beta * (c.beta - 1);
}

Rat trig_eigenvalue(const Weight& lam, const Coupling& c) {
  if (lam.n() != c.N) throw config_error("rank mismatch");
  auto rho = rho_coords(c);
  Rat acc(0);
  for (int i = 0; i < c.N; ++i) {
    Rat x = frac(lam.coord_num(i), c.N) + rho[i];
    acc += x * x;
  }
  acc -= e0_constant(c);
  return acc;
}

std::vector<std::vector<long>> weyl_orbit(const Weight& lam) {
  std::vector<long> v = lam.coord_nums();
  std::sort(v.begin(), v.end());
  std::vector<std::vector<long>> orbit;
  do {
    orbit.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return orbit;
}

long weyl_orbit_size(const Weight& lam) {
  long size = 1;
  for (int i = 2; i <= lam.n(); ++i) size *= i;
  long run = 1;
  const auto& p = lam.parts();
  for (int i = 1; i <= lam.n(); ++i) {
    if (i < lam.n() && p[i] == p[i - 1]) {
      ++run;
    } else {
      for (long r = 2; r <= run; ++r) size /= r;
      run = 1;
    }
  }
  return size;
}

Weight theta_multiple(int n, int j) {
  std::vector<int> parts(n, j);
  parts[0] = 2 * j;
  parts[n - 1] = 0;
  return Weight(n, std::move(parts));
}

namespace {

void partitions_rec(int max_parts, int max_first, int remaining, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  out.push_back(cur);  // pad with zeros later
  if (max_parts == 0) return;
  int hi = std::min(max_first, remaining);
  for (int first = hi; first >= 1; --first) {
    cur.push_back(first);
    partitions_rec(max_parts - 1, first, remaining - first, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Weight> weights_up_to(int n, int max_total) {
  std::vector<std::vector<int>> raw;
  std::vector<int> cur;
  partitions_rec(n - 1, max_total, max_total, cur, raw);
  std::vector<Weight> out;
  out.reserve(raw.size());
  for (auto& p : raw) {
    p.resize(n, 0);
    out.emplace_back(n, std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Weight> dominated_by(const Weight& lam) {
  std::vector<Weight> out;
  for (auto& w : weights_up_to(lam.n(), static_cast<int>(lam.total())))
    if (dominance_leq(w, lam)) out.push_back(w);
  return out;
}

long weight_gram_denominator(int n) {
  // (Lambda_i | Lambda_j) = min(i,j) - i*j/N for 1 <= i,j <= N-1
  mpz_class l(1);
  for (int i = 1; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rat g = Rat(std::min(i, j)) - Rat(static_cast<long>(i) * j, n);
      g.canonicalize();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), g.get_den().get_mpz_t());
    }
  if (!l.fits_slong_p()) throw consistency_error("gram denominator overflow");
  return l.get_si();
}

}  // namespace ecms
