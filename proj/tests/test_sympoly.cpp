#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>

#include "ecms/sympoly.hpp"

using namespace ecms;

namespace {
SymPoly m(int n, std::vector<int> parts) { return SymPoly::mono(Weight(n, std::move(parts))); }
}  // namespace

TEST_CASE("orbit sum products, N = 2") {
  // (z1 + z2)^2 = m_(2,0) + 2 m_(1,1); after the mean shift m_(1,1) is 1
  SymPoly prod = m(2, {1, 0}) * m(2, {1, 0});
  CHECK(prod.coeff(Weight(2, {2, 0})) == 1);
  CHECK(prod.coeff(Weight(2, {0, 0})) == 2);
  CHECK(prod.terms().size() == 2);
}

TEST_CASE("identity element and zero") {
  SymPoly one = m(3, {0, 0, 0});
  SymPoly f = m(3, {2, 1, 0});
  CHECK(one * f == f);
  SymPoly zero(3);
  CHECK((zero * f).is_zero());
  SymPoly theta = m(3, {2, 1, 0});
  CHECK(theta * one == theta);
}

TEST_CASE("mixed product expansion") {
  // (m_(1,0) + m_(1,1)) m_(1,0) = m_(2,0) + 2 m_(1,1) + m_(2,1) at N = 2;
  // traceless: m_(1,1) = 1 and m_(2,1) = m_(1,0)
  SymPoly f = m(2, {1, 0});
  f += m(2, {0, 0});
  SymPoly prod = f * m(2, {1, 0});
  CHECK(prod.coeff(Weight(2, {2, 0})) == 1);
  CHECK(prod.coeff(Weight(2, {0, 0})) == 2);
  CHECK(prod.coeff(Weight(2, {1, 0})) == 1);
}

TEST_CASE("support of products respects dominance") {
  auto all = weights_up_to(3, 4);
  for (const auto& a : all)
    for (const auto& b : all) {
      SymPoly prod = mono_mul(a, b);
      // top term: dominant representative of a + b with coefficient >= 1
      std::vector<long> top(3);
      for (int i = 0; i < 3; ++i) top[i] = a.coord_num(i) + b.coord_num(i);
      Weight sum = weight_from_coord_nums(3, top);
      CHECK(prod.coeff(sum) >= 1);
      for (const auto& [w, q] : prod.terms()) {
        CHECK(dominance_leq(w, sum));
        CHECK(sgn(q) > 0);
      }
    }
}

TEST_CASE("product ring axioms on sampled triples") {
  auto all = weights_up_to(2, 6);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  for (int trial = 0; trial < 12; ++trial) {
    SymPoly a = SymPoly::mono(all[pick(rng)], Rat(trial + 1, 3));
    a += SymPoly::mono(all[pick(rng)], Rat(-2, 5));
    SymPoly b = SymPoly::mono(all[pick(rng)], Rat(7, 2));
    SymPoly c = SymPoly::mono(all[pick(rng)], Rat(1, 4));
    c += SymPoly::mono(all[pick(rng)], Rat(5));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("evaluation at the identity") {
  CHECK(m(3, {0, 0, 0}).eval_at_one() == 1);
  CHECK(m(2, {1, 0}).eval_at_one() == 2);
  CHECK(m(3, {2, 1, 0}).eval_at_one() == 6);  // full orbit of the highest root
  // ring homomorphism on random small products
  auto all = weights_up_to(3, 3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    SymPoly f = SymPoly::mono(all[pick(rng)], Rat(2, 3));
    f += SymPoly::mono(all[pick(rng)], Rat(-1, 2));
    SymPoly g = SymPoly::mono(all[pick(rng)], Rat(5, 7));
    CHECK((f * g).eval_at_one() == f.eval_at_one() * g.eval_at_one());
  }
}

TEST_CASE("numeric evaluation") {
  std::vector<std::complex<double>> ones(2, {1.0, 0.0});
  CHECK(std::abs(m(2, {0, 0}).eval_numeric(ones) - std::complex<double>(1, 0)) < 1e-15);
  // m_(1,0) at z = (e^{iu/2}, e^{-iu/2}) is 2 cos(u/2); at u = 0 this is 2
  CHECK(std::abs(m(2, {1, 0}).eval_numeric(ones) - std::complex<double>(2, 0)) < 1e-15);
  // mean-shifted m_(1,1) is identically 1 on the traceless torus
  double u = 1.234;
  std::vector<std::complex<double>> z{std::polar(1.0, u / 2), std::polar(1.0, -u / 2)};
  SymPoly m11 = m(2, {1, 1});
  CHECK(std::abs(m11.eval_numeric(z) - std::complex<double>(1, 0)) < 1e-15);
  CHECK(std::abs(m(2, {1, 0}).eval_numeric(z).real() - 2 * std::cos(u / 2)) < 1e-14);
  std::vector<std::complex<double>> bad{{0.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(m(2, {1, 0}).eval_numeric(bad), config_error);
}

TEST_CASE("numeric evaluation agrees with exact products at random torus points") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(0, 6.28);
  for (int trial = 0; trial < 20; ++trial) {
    double x1 = uni(rng), x2 = uni(rng), x3 = -(x1 + x2);
    std::vector<std::complex<double>> z{std::polar(1.0, x1), std::polar(1.0, x2),
                                        std::polar(1.0, x3)};
    SymPoly a = m(3, {2, 1, 0});
    SymPoly b = m(3, {1, 1, 0});
    auto lhs = (a * b).eval_numeric(z);
    auto rhs = a.eval_numeric(z) * b.eval_numeric(z);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("canonical JSON round-trip is bit exact") {
  SymPoly f = m(3, {3, 1, 0}).scaled(Rat(-7, 6));
  f += m(3, {1, 1, 0}).scaled(Rat(22, 7));
  f += m(3, {0, 0, 0}).scaled(Rat(1, 998244353));
  auto j = sympoly_to_json(f);
  SymPoly g = sympoly_from_json(j);
  CHECK(f == g);
  CHECK(sympoly_to_json(g) == j);
  // terms appear in the global basis order
  CHECK(j["terms"][0]["partition"][0].get<int>() == 0);
}
