#include <catch2/catch_amalgamated.hpp>

#include "strelkit/matrix.hpp"
#include "strelkit/subspace.hpp"
#include "test_support.hpp"

using namespace strelkit;
using namespace strelkit::testing;

namespace {

Subspace<RationalField> qspan(const std::vector<std::vector<int>>& rows, std::size_t ambient) {
  RationalField q;
  std::vector<std::vector<Rational>> conv;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (int x : r) row.push_back(q.from_int(x));
    conv.push_back(row);
  }
  return Subspace<RationalField>::span_vectors(q, ambient, conv);
}

}  // namespace

TEST_CASE("rref is the canonical reduced form", "[matrix]") {
  RationalField q;
  auto m = Matrix<RationalField>::from_rows(q, 2, {{q.from_int(2), q.from_int(4)},
                                                   {q.from_int(1), q.from_int(3)}});
  auto e = m.rref();
  REQUIRE(e.pivots == std::vector<std::size_t>{0, 1});
  REQUIRE(e.mat == Matrix<RationalField>::identity(q, 2));

  // one pivot, scaled leading one, zero row dropped by span()
  auto s = qspan({{0, 3, 6}, {0, 1, 2}}, 3);
  REQUIRE(s.dim() == 1);
  REQUIRE(s.basis_vector(0) == std::vector<Rational>{0, 1, 2});
}

TEST_CASE("sum and intersection of spans", "[subspace]") {
  auto e1 = qspan({{1, 0}}, 2);
  auto e2 = qspan({{0, 1}}, 2);
  REQUIRE(e1.sum(e2) == Subspace<RationalField>::full(RationalField{}, 2));

  auto u = qspan({{1, 1}, {1, 0}}, 2);
  REQUIRE(u.intersect(e2) == e2);

  auto diag = qspan({{1, 1, 0}, {0, 1, 1}}, 3);
  auto w = qspan({{1, 0, -1}}, 3);
  REQUIRE(diag.intersect(w) == w);
}

TEST_CASE("complement uses pivot completion, lowest index first", "[subspace]") {
  auto u = qspan({{0, 1}}, 2);
  auto c = u.complement();
  REQUIRE(c == qspan({{1, 0}}, 2));

  auto inside = qspan({{1, 0, 0}, {0, 1, 1}}, 3);
  auto s = qspan({{1, 1, 1}}, 3);
  auto comp = s.complement_in(inside);
  REQUIRE(s.sum(comp) == inside);
  REQUIRE(s.intersect(comp).dim() == 0);
}

TEST_CASE("solve, kernel and inverse agree with direct checks", "[matrix]") {
  RationalField q;
  auto a = Matrix<RationalField>::from_rows(
      q, 3, {{q.from_int(1), q.from_int(2), q.from_int(3)},
             {q.from_int(0), q.from_int(1), q.from_int(4)}});
  std::vector<Rational> b{q.from_int(6), q.from_int(5)};
  auto x = a.solve(b);
  REQUIRE(x.has_value());
  REQUIRE(a.mul_vec(*x) == b);

  auto ker = a.kernel();
  REQUIRE(ker.rows() == 1);
  REQUIRE(vec_is_zero(q, a.mul_vec(ker.row(0))));

  auto inconsistent = Matrix<RationalField>::from_rows(
      q, 2, {{q.from_int(1), q.from_int(1)}, {q.from_int(2), q.from_int(2)}});
  REQUIRE_FALSE(inconsistent.solve({q.from_int(0), q.from_int(1)}).has_value());

  auto inv = Matrix<RationalField>::from_rows(
                 q, 2, {{q.from_int(2), q.from_int(1)}, {q.from_int(1), q.from_int(1)}})
                 .inverse();
  REQUIRE(inv.has_value());
}

TEST_CASE("brute-force oracle over small prime fields", "[subspace][oracle]") {
  for (std::int64_t p : {2, 3, 5}) {
    PrimeField f(p);
    Rng rng(seed() + static_cast<std::uint64_t>(p));
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t n = 1 + (rng() % 3);
      auto u = random_subspace(f, rng, n, 3);
      auto w = random_subspace(f, rng, n, 3);
      auto uset = enumerate_vectors(f, u);
      auto wset = enumerate_vectors(f, w);

      // sum: exactly the pairwise sums
      std::set<std::vector<std::int64_t>> sums;
      for (const auto& a : uset)
        for (const auto& b : wset) {
          std::vector<std::int64_t> s(n);
          for (std::size_t i = 0; i < n; ++i) s[i] = f.add(a[i], b[i]);
          sums.insert(s);
        }
      REQUIRE(enumerate_vectors(f, u.sum(w)) == sums);

      // intersection: set intersection
      std::set<std::vector<std::int64_t>> meet;
      for (const auto& a : uset)
        if (wset.count(a)) meet.insert(a);
      REQUIRE(enumerate_vectors(f, u.intersect(w)) == meet);

      // membership agrees with enumeration
      auto probe = random_matrix(f, rng, 1, n, 0, static_cast<int>(p) - 1).row(0);
      REQUIRE(u.contains(probe) == (uset.count(probe) > 0));

      // preimage under a random map
      auto g = random_matrix(f, rng, n, n, 0, static_cast<int>(p) - 1);
      auto pre = wset;  // target membership via enumeration of the whole space
      std::set<std::vector<std::int64_t>> expect;
      std::vector<std::int64_t> v(n, 0);
      while (true) {
        if (pre.count(g.mul_vec(v))) expect.insert(v);
        std::size_t k = 0;
        while (k < n && ++v[k] == p) v[k++] = 0;
        if (k == n) break;
      }
      REQUIRE(enumerate_vectors(f, w.preimage_under(g)) == expect);
    }
  }
}

TEST_CASE("grassmann identity and complement laws", "[subspace][property]") {
  PrimeField f5(5);
  RationalField q;
  Rng rng(seed());
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + (rng() % 5);
    auto check = [&](auto field) {
      auto u = random_subspace(field, rng, n, n);
      auto w = random_subspace(field, rng, n, n);
      REQUIRE(u.sum(w).dim() + u.intersect(w).dim() == u.dim() + w.dim());
      REQUIRE(u.sum(w).contains(u));
      REQUIRE(u.contains(u.intersect(w)));

      auto c = u.complement();
      REQUIRE(u.sum(c).dim() == n);
      REQUIRE(u.intersect(c).dim() == 0);
    };
    check(f5);
    check(q);
  }
}

TEST_CASE("image and preimage relations", "[subspace][property]") {
  PrimeField f(5);
  Rng rng(seed() ^ 0x9177);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + (rng() % 4);
    std::size_t m = 1 + (rng() % 4);
    auto g = random_matrix(f, rng, m, n, 0, 4);  // K^n -> K^m
    auto b = random_subspace(f, rng, m, m);
    auto full_n = Subspace<PrimeField>::full(f, n);
    // image(preimage B) = B meet image(g)
    REQUIRE(b.preimage_under(g).image_under(g) == b.intersect(full_n.image_under(g)));
    // preimage of the image contains the kernel and the original space
    auto u = random_subspace(f, rng, n, n);
    REQUIRE(u.image_under(g).preimage_under(g).contains(u));
    REQUIRE(u.image_under(g).preimage_under(g).contains(
        Subspace<PrimeField>::span(g.kernel())));
  }
}

TEST_CASE("quotient coordinates round-trip", "[subspace]") {
  PrimeField f(7);
  Rng rng(seed() ^ 0xA5A5);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + (rng() % 4);
    auto total = Subspace<PrimeField>::full(f, n);
    auto sub = random_subspace(f, rng, n, n - 1);
    QuotientSpace<PrimeField> qs(total, sub);
    REQUIRE(qs.dim() == n - sub.dim());

    auto v = random_matrix(f, rng, 1, n, 0, 6).row(0);
    auto c = qs.coords(v);
    auto lifted = qs.lift_vector(c);
    REQUIRE(sub.contains(vec_sub(f, v, lifted)));
  }
}
