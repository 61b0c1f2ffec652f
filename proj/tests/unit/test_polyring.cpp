#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "genus1/error.hpp"
#include "genus1/poly.hpp"
#include "oracles.hpp"

using namespace genus1;

TEST_SUITE("polyring") {

TEST_CASE("construction trims trailing zeros") {
  const Poly p{1.0, 2.0, 0.0, 0.0};
  CHECK(p.degree() == 1);
  CHECK(Poly{}.degree() == kMinusInfinity);
  CHECK(Poly{0.0, 0.0}.is_zero());
  CHECK(Poly::monomial(3, 2.0).coeffs() == std::vector<double>{0.0, 0.0, 0.0, 2.0});
}

TEST_CASE("poly_mul examples") {
  CHECK(poly_mul(Poly{1.0, 1.0}, Poly{-1.0, 1.0}) == Poly{-1.0, 0.0, 1.0});
  CHECK(poly_mul(Poly{3.0, 1.0, 4.0}, Poly{}).is_zero());
  // x^4 - 1 written out by hand
  CHECK(poly_mul(Poly{-1.0, 0.0, 1.0}, Poly{1.0, 0.0, 1.0}) == Poly{-1.0, 0.0, 0.0, 0.0, 1.0});
}

TEST_CASE("poly_mul agrees with pointwise products and adds degrees") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> deg(0, 7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(static_cast<std::size_t>(deg(rng) + 1)), b(static_cast<std::size_t>(deg(rng) + 1));
    for (auto& c : a) c = u(rng);
    for (auto& c : b) c = u(rng);
    a.back() = 1.0 + std::abs(a.back());
    b.back() = -1.0 - std::abs(b.back());
    const Poly pa(a), pb(b);
    const Poly prod = pa * pb;
    CHECK(prod.degree() == pa.degree() + pb.degree());
    for (double x : {-1.3, -0.2, 0.0, 0.7, 1.9}) {
      CHECK(prod.eval(x) == doctest::Approx(oracle::horner(a, x) * oracle::horner(b, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("integer inputs evaluate exactly") {
  const Poly p{-7.0, 3.0, 0.0, 2.0};
  CHECK(p.eval(3.0) == -7.0 + 9.0 + 54.0);
  CHECK(p.eval(-2.0) == -7.0 - 6.0 - 16.0);
}

TEST_CASE("divmod reconstructs the dividend") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> n(8), d(3);
    for (auto& c : n) c = u(rng);
    for (auto& c : d) c = u(rng);
    d.back() = 1.5;
    const Poly num(n), den(d);
    const auto [quo, rem] = divmod(num, den);
    CHECK(rem.degree() < den.degree());
    CHECK((quo * den + rem - num).norm_inf() < 1e-12 * (1.0 + num.norm_inf()));
  }
  CHECK_THROWS_AS(divmod(Poly{1.0, 1.0}, Poly{}), Error);
}

TEST_CASE("gcd of polynomials with a common root") {
  const Poly a(oracle::from_roots({1.0, 1.0, -2.0}));
  const Poly b(oracle::from_roots({1.0, 3.0}));
  const Poly g = poly_gcd(a, b, 1e-10);
  REQUIRE(g.degree() == 1);
  CHECK(-g.coeff(0) / g.coeff(1) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("real_roots examples") {
  const auto r1 = real_roots(Poly{-1.0, 0.0, 1.0}, -10.0, 10.0, 1e-13);
  REQUIRE(r1.size() == 2);
  CHECK(r1[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r1[1] == doctest::Approx(1.0).epsilon(1e-12));

  const auto r2 = real_roots(Poly{-1.0, 0.0, 0.0, 0.0, 1.0}, -10.0, 10.0, 1e-13);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r2[1] == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(real_roots(Poly{1.0, 0.0, 1.0}, -10.0, 10.0, 1e-13).empty());
}

TEST_CASE("roots of random products are recovered and vanish") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> roots;
    const int count = 1 + trial % 5;
    while (static_cast<int>(roots.size()) < count) {
      const double r = u(rng);
      bool ok = true;
      for (double s : roots) ok = ok && std::abs(r - s) > 0.05;
      if (ok) roots.push_back(r);
    }
    std::vector<double> coeffs = oracle::from_roots(roots, 0.5 + pos(rng));
    // x^2 + e x + c with e^2 < 4c: no real root
    if (trial % 2 == 0) coeffs = oracle::multiply(coeffs, {pos(rng), u(rng) * 0.1, 1.0});
    const Poly p(coeffs);
    const auto found = real_roots(p, -5.0, 5.0, 1e-13);
    std::sort(roots.begin(), roots.end());
    REQUIRE(found.size() == roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) CHECK(std::abs(found[i] - roots[i]) < 1e-8);
    for (double x : found) CHECK(std::abs(p.eval(x)) <= 1e-8 * (1.0 + p.norm_inf()));
  }
}

TEST_CASE("sturm counts agree with sign changes on a dense grid") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> roots;
    const int count = 1 + trial % 6;
    while (static_cast<int>(roots.size()) < count) {
      const double r = u(rng);
      bool ok = std::abs(std::abs(r) - 1.5) > 0.01;
      for (double s : roots) ok = ok && std::abs(r - s) > 0.02;
      if (ok) roots.push_back(r);
    }
    std::vector<double> coeffs = oracle::from_roots(roots);
    if (trial % 3 == 0) coeffs = oracle::multiply(coeffs, {1.0, 0.0, 1.0});
    const Poly p(coeffs);
    const auto chain = sturm_sequence(p);
    for (auto [lo, hi] : {std::pair{-2.5, 2.5}, std::pair{-1.5, 1.5}, std::pair{0.0, 2.5}}) {
      CHECK(sturm_count(chain, lo, hi) == oracle::grid_sign_changes(coeffs, lo, hi, 200000));
    }
  }
}

TEST_CASE("is_separable examples") {
  CHECK(is_separable(Poly{-1.0, 0.0, 0.0, 0.0, 1.0}, 1e-9));
  CHECK_FALSE(is_separable(Poly{0.0, 0.0, -1.0, 0.0, 1.0}, 1e-9));
  const Poly q = Poly{-1.0, 0.0, 1.0} * Poly{1.0, 1.0, 1.0};
  CHECK(is_separable(q, 1e-9));
  CHECK(std::fabs(oracle::discriminant_resultant(q.coeffs())) > 1e-6L);
}

TEST_CASE("is_separable agrees with the planted root multiset") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    // integer roots, possibly repeated; the factor x^2 + 2 adds two distinct non-real roots
    std::vector<double> roots;
    const int count = 2 + trial % 4;
    for (int i = 0; i < count; ++i) roots.push_back(small(rng));
    std::vector<double> coeffs = oracle::from_roots(roots);
    if (trial % 2 == 1) coeffs = oracle::multiply(coeffs, {2.0, 0.0, 1.0});
    std::sort(roots.begin(), roots.end());
    const bool repeated = std::adjacent_find(roots.begin(), roots.end()) != roots.end();
    CHECK(is_separable(Poly(coeffs), 1e-9) == !repeated);
  }
}

TEST_CASE("compose_affine substitutes the argument") {
  const Poly p{1.0, -2.0, 0.5, 3.0};
  const Poly c = p.compose_affine(2.0, -0.5);
  for (double x : {-1.0, 0.0, 0.3, 2.0}) CHECK(c.eval(x) == doctest::Approx(p.eval(2.0 * x - 0.5)));
}

}  // TEST_SUITE
