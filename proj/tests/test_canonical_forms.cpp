#include <catch2/catch_amalgamated.hpp>

#include "strelkit/canonical_forms.hpp"
#include "strelkit/poly.hpp"
#include "test_support.hpp"

using namespace strelkit;
using namespace strelkit::testing;

TEST_CASE("polynomial division, gcd and lcm") {
  RationalField f;
  // (x^2 - 1) = (x - 1)(x + 1)
  Poly<RationalField> a{f.from_int(-1), f.from_int(0), f.from_int(1)};
  Poly<RationalField> b{f.from_int(-1), f.from_int(1)};
  auto [q, r] = poly_divmod(f, a, b);
  CHECK(poly_deg(r) < 0);
  CHECK(poly_eq(f, q, Poly<RationalField>{f.from_int(1), f.from_int(1)}));

  auto g = poly_gcd(f, a, b);
  CHECK(poly_eq(f, g, poly_monic(f, b)));
  auto l = poly_lcm(f, a, b);
  CHECK(poly_eq(f, l, poly_monic(f, a)));
}

TEST_CASE("coprime lcm split produces coprime parts with the right product") {
  PrimeField f(7);
  Rng rng(seed());
  std::uniform_int_distribution<int> coef(0, 6), dg(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    auto rand_poly = [&](int d) {
      Poly<PrimeField> p(d + 1);
      for (auto& c : p) c = coef(rng);
      p[d] = 1 + coef(rng) % 6;
      poly_trim(f, p);
      return p;
    };
    auto a = rand_poly(dg(rng)), b = rand_poly(dg(rng));
    auto [a1, b1] = coprime_lcm_split(f, a, b);
    CHECK(poly_deg(poly_gcd(f, a1, b1)) == 0);
    CHECK(poly_deg(poly_mod(f, a, a1)) < 0);
    CHECK(poly_deg(poly_mod(f, b, b1)) < 0);
    CHECK(poly_eq(f, poly_mul(f, a1, b1), poly_lcm(f, a, b)));
  }
}

TEST_CASE("berlekamp factorisation over small prime fields") {
  for (std::int64_t p : {2, 3, 5, 13}) {
    PrimeField f(p);
    Rng rng(seed() + (std::uint64_t)p);
    std::uniform_int_distribution<int> coef(0, (int)p - 1), dg(1, 6);
    for (int trial = 0; trial < 30; ++trial) {
      Poly<PrimeField> poly(dg(rng) + 1);
      for (auto& c : poly) c = coef(rng);
      poly.back() = 1;
      auto factors = factor_fp(f, poly);
      Poly<PrimeField> prod{f.one()};
      for (const auto& [g, mult] : factors) {
        // irreducibility oracle: no root-free proper divisor of small degree
        for (std::int64_t r = 0; r < p && poly_deg(g) > 1; ++r) {
          Poly<PrimeField> lin{f.neg(r), f.one()};
          CHECK(poly_deg(poly_mod(f, g, lin)) >= 0);
        }
        for (std::size_t i = 0; i < mult; ++i) prod = poly_mul(f, prod, g);
      }
      CHECK(poly_eq(f, prod, poly_monic(f, poly)));
    }
  }
}

TEST_CASE("minimal polynomial annihilates and has minimal degree witness") {
  PrimeField f(5);
  Rng rng(seed() + 1);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> dn(1, 5);
    std::size_t n = dn(rng);
    auto m = random_matrix(f, rng, n, n, 0, 4);
    auto mu = minimal_polynomial(f, m);
    // evaluate mu at the matrix, column by column
    bool zero = true;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<PrimeField::Elem> e(n, f.zero());
      e[j] = f.one();
      if (!vec_is_zero(f, apply_poly(f, m, mu, e))) zero = false;
    }
    CHECK(zero);
    CHECK((std::size_t)poly_deg(mu) <= n);
    auto v = maximal_vector(f, m);
    CHECK(poly_eq(f, local_min_poly(f, m, v), mu));
  }
}

TEST_CASE("rational canonical form: divisibility chain and exact conjugation") {
  auto run = [](auto field, std::uint64_t salt) {
    using F = decltype(field);
    Rng rng(seed() + salt);
    for (int trial = 0; trial < 25; ++trial) {
      std::uniform_int_distribution<std::size_t> dn(1, 6);
      std::size_t n = dn(rng);
      auto m = random_matrix(field, rng, n, n, -2, 2);
      auto rcf = frobenius_form(field, m);
      std::size_t total = 0;
      for (std::size_t i = 0; i + 1 < rcf.invariant_factors.size(); ++i) {
        auto rem = poly_mod(field, rcf.invariant_factors[i + 1], rcf.invariant_factors[i]);
        CHECK(poly_deg(rem) < 0);
      }
      for (const auto& p : rcf.invariant_factors) total += (std::size_t)poly_deg(p);
      CHECK(total == n);
      auto inv = rcf.transform.inverse();
      REQUIRE(inv.has_value());
      CHECK(inv->mul(m).mul(rcf.transform) == rcf.form);
      CHECK(poly_eq(field, rcf.invariant_factors.back(), minimal_polynomial(field, m)));
    }
  };
  run(PrimeField(5), 2);
  run(PrimeField(2), 3);
  run(RationalField{}, 4);
}

TEST_CASE("rcf distinguishes similarity classes: nilpotent jordan types") {
  PrimeField f(3);
  // two nilpotent 4x4s: type (2,2) vs (3,1)
  Matrix<PrimeField> a(f, 4, 4), b(f, 4, 4);
  a(0, 1) = 1;
  a(2, 3) = 1;
  b(0, 1) = 1;
  b(1, 2) = 1;
  auto ra = frobenius_form(f, a), rb = frobenius_form(f, b);
  CHECK(ra.invariant_factors.size() == 2);
  CHECK(rb.invariant_factors.size() == 2);
  CHECK(poly_deg(ra.invariant_factors[0]) == 2);
  CHECK(poly_deg(rb.invariant_factors[0]) == 1);
}

TEST_CASE("nilpotent chain extraction from shift matrices") {
  PrimeField f(5);
  Rng rng(seed() + 9);
  for (int trial = 0; trial < 30; ++trial) {
    // random nilpotent: strictly upper triangular then conjugated
    std::uniform_int_distribution<std::size_t> dn(1, 6);
    std::size_t n = dn(rng);
    Matrix<PrimeField> nil(f, n, n);
    std::uniform_int_distribution<int> c(0, 4);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) nil(i, j) = c(rng);
    Matrix<PrimeField> g(f, 0, 0);
    do
      g = random_matrix(f, rng, n, n, 0, 4);
    while (!g.inverse().has_value());
    auto m = g.inverse()->mul(nil).mul(g);
    auto chains = nilpotent_chains(f, m);
    std::size_t total = 0;
    std::vector<std::vector<PrimeField::Elem>> all;
    for (const auto& ch : chains) {
      total += ch.size();
      // each chain is v, Mv, M^2 v, ... ending in the kernel
      for (std::size_t i = 0; i + 1 < ch.size(); ++i)
        CHECK(m.mul_vec(ch[i]) == ch[i + 1]);
      CHECK(vec_is_zero(f, m.mul_vec(ch.back())));
      for (const auto& v : ch) all.push_back(v);
    }
    CHECK(total == n);
    CHECK(Subspace<PrimeField>::span_vectors(f, n, all).dim() == n);
    for (std::size_t i = 0; i + 1 < chains.size(); ++i)
      CHECK(chains[i].size() >= chains[i + 1].size());
  }
}
