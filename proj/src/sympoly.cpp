#include "ecms/sympoly.hpp"

#include <algorithm>
#include <cmath>

namespace ecms {

SymPoly SymPoly::mono(const Weight& w, Rat coeff) {
  SymPoly f(w.n());
  f.add_term(w, coeff);
  return f;
}

Rat SymPoly::coeff(const Weight& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rat(0) : it->second;
}

void SymPoly::add_term(const Weight& w, const Rat& c) {
  if (sgn(c) == 0) return;
  if (w.n() != N_) throw config_error("rank mismatch");
  Rat canon = c;
  canon.canonicalize();  // callers may pass unreduced fractions
  auto [it, inserted] = terms_.emplace(w, canon);
  if (!inserted) {
    it->second += canon;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  if (o.N_ != N_) throw config_error("rank mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
  if (o.N_ != N_) throw config_error("rank mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

SymPoly SymPoly::scaled(const Rat& c) const {
  SymPoly out(N_);
  if (sgn(c) == 0) return out;
  Rat canon = c;
  canon.canonicalize();
  for (const auto& [w, q] : terms_) out.terms_.emplace(w, q * canon);
  return out;
}

SymPoly mono_mul(const Weight& a, const Weight& b) {
  if (a.n() != b.n()) throw config_error("rank mismatch");
  const int n = a.n();
  const Weight& big = weyl_orbit_size(a) >= weyl_orbit_size(b) ? a : b;
  const Weight& small = (&big == &a) ? b : a;
  auto small_orbit = weyl_orbit(small);
  auto big_sorted = big.coord_nums();  // already descending

  // candidate supports: dominant representatives of big + w(small)
  std::map<Weight, long> counts;
  for (const auto& w : small_orbit) {
    std::vector<long> cand(n);
    for (int i = 0; i < n; ++i) cand[i] = big_sorted[i] + w[i];
    counts.emplace(weight_from_coord_nums(n, cand), 0);
  }
  // coefficient of m_kappa = #{w in orbit(small) : kappa - w in orbit(big)};
  // everything is a traceless coordinate-numerator vector, so no shifts
  for (auto& [kappa, cnt] : counts) {
    auto kn = kappa.coord_nums();
    for (const auto& w : small_orbit) {
      std::vector<long> diff(n);
      for (int i = 0; i < n; ++i) diff[i] = kn[i] - w[i];
      std::sort(diff.begin(), diff.end(), std::greater<>());
      if (diff == big_sorted) ++cnt;
    }
  }
  SymPoly out(n);
  for (const auto& [kappa, cnt] : counts)
    if (cnt) out.add_term(kappa, Rat(cnt));
  return out;
}

SymPoly SymPoly::operator*(const SymPoly& o) const {
  if (o.N_ != N_) throw config_error("rank mismatch");
  SymPoly out(N_);
  for (const auto& [wa, ca] : terms_)
    for (const auto& [wb, cb] : o.terms_) out += mono_mul(wa, wb).scaled(ca * cb);
  return out;
}

Rat SymPoly::eval_at_one() const {
  Rat acc(0);
  for (const auto& [w, c] : terms_) acc += c * Rat(weyl_orbit_size(w));
  acc.canonicalize();
  return acc;
}

std::complex<double> SymPoly::eval_numeric(std::span<const std::complex<double>> z) const {
  if (static_cast<int>(z.size()) != N_) throw config_error("evaluation point rank mismatch");
  std::complex<double> prod(1.0, 0.0);
  for (auto& zi : z) {
    if (zi == std::complex<double>(0.0, 0.0)) throw config_error("zero coordinate");
    prod *= zi;
  }
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [w, c] : terms_) {
    std::complex<double> shift =
        w.total() == 0
            ? std::complex<double>(1.0, 0.0)
            : std::pow(prod, std::complex<double>(-static_cast<double>(w.total()) / N_, 0.0));
    std::complex<double> orbit_sum(0.0, 0.0);
    // orbit entries permute the canonical parts
    std::vector<int> p = w.parts();
    std::sort(p.begin(), p.end());
    do {
      std::complex<double> term(1.0, 0.0);
      for (int i = 0; i < N_; ++i) {
        std::complex<double> f(1.0, 0.0);
        for (int e = 0; e < p[i]; ++e) f *= z[i];
        term *= f;
      }
      orbit_sum += term;
    } while (std::next_permutation(p.begin(), p.end()));
    acc += c.get_d() * shift * orbit_sum;
  }
  return acc;
}

nlohmann::ordered_json sympoly_to_json(const SymPoly& f) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [w, c] : f.terms()) {
    nlohmann::ordered_json t;
    t["partition"] = w.parts();
    Rat shift(-w.total(), f.n());
    shift.canonicalize();
    t["shift_num"] = shift.get_num().get_str();
    t["shift_den"] = shift.get_den().get_str();
    t["coeff_num"] = c.get_num().get_str();
    t["coeff_den"] = c.get_den().get_str();
    terms.push_back(std::move(t));
  }
  nlohmann::ordered_json j;
  j["N"] = f.n();
  j["terms"] = std::move(terms);
  return j;
}

SymPoly sympoly_from_json(const nlohmann::json& j) {
  SymPoly f(j.at("N").get<int>());
  for (const auto& t : j.at("terms")) {
    std::vector<int> parts = t.at("partition").get<std::vector<int>>();
    Rat c(mpz_class(t.at("coeff_num").get<std::string>()),
          mpz_class(t.at("coeff_den").get<std::string>()));
    c.canonicalize();
    f.add_term(Weight(f.n(), std::move(parts)), c);
  }
  return f;
}

}  // namespace ecms
