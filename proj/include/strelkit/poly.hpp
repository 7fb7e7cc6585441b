#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "strelkit/field.hpp"
#include "strelkit/matrix.hpp"

namespace strelkit {

// Dense univariate polynomials, coefficients low to high, no trailing zeros.
// The zero polynomial is the empty vector; degree of zero is -1.
template <class K>
using Poly = std::vector<typename K::Elem>;

template <class K>
void poly_trim(const K& f, Poly<K>& p) {
  while (!p.empty() && f.is_zero(p.back())) p.pop_back();
}

template <class E>
int poly_deg(const std::vector<E>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <class K>
Poly<K> poly_x(const K& f) {
  return {f.zero(), f.one()};
}

template <class K>
Poly<K> poly_const(const K& f, const typename K::Elem& c) {
  Poly<K> p{c};
  poly_trim(f, p);
  return p;
}

template <class K>
bool poly_eq(const K& f, const Poly<K>& a, const Poly<K>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!f.eq(a[i], b[i])) return false;
  return true;
}

template <class K>
Poly<K> poly_add(const K& f, const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  poly_trim(f, r);
  return r;
}

template <class K>
Poly<K> poly_sub(const K& f, const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  poly_trim(f, r);
  return r;
}

template <class K>
Poly<K> poly_mul(const K& f, const Poly<K>& a, const Poly<K>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<K> r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  poly_trim(f, r);
  return r;
}

template <class K>
Poly<K> poly_monic(const K& f, Poly<K> p) {
  poly_trim(f, p);
  if (p.empty()) return p;
  auto inv = f.inv(p.back());
  for (auto& c : p) c = f.mul(c, inv);
  return p;
}

template <class K>
std::pair<Poly<K>, Poly<K>> poly_divmod(const K& f, Poly<K> a, const Poly<K>& b) {
  poly_trim(f, a);
  if (b.empty()) throw error("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  std::size_t m = b.size();
  Poly<K> q(a.size() - m + 1, f.zero());
  auto lead_inv = f.inv(b.back());
  for (std::size_t k = q.size(); k-- > 0;) {
    auto c = f.mul(a[k + m - 1], lead_inv);
    if (!f.is_zero(c)) {
      q[k] = c;
      for (std::size_t j = 0; j < m; ++j) a[k + j] = f.sub(a[k + j], f.mul(c, b[j]));
    }
  }
  poly_trim(f, q);
  poly_trim(f, a);
  return {q, a};
}

template <class K>
Poly<K> poly_mod(const K& f, const Poly<K>& a, const Poly<K>& b) {
  return poly_divmod(f, a, b).second;
}

template <class K>
Poly<K> poly_div(const K& f, const Poly<K>& a, const Poly<K>& b) {
  auto [q, r] = poly_divmod(f, a, b);
  if (!r.empty()) throw error("polynomial division is not exact");
  return q;
}

template <class K>
Poly<K> poly_gcd(const K& f, Poly<K> a, Poly<K> b) {
  poly_trim(f, a);
  poly_trim(f, b);
  while (!b.empty()) {
    auto r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(f, a);
}

template <class K>
Poly<K> poly_lcm(const K& f, const Poly<K>& a, const Poly<K>& b) {
  if (a.empty() || b.empty()) return {};
  return poly_monic(f, poly_div(f, poly_mul(f, a, b), poly_gcd(f, a, b)));
}

template <class K>
Poly<K> poly_derivative(const K& f, const Poly<K>& p) {
  Poly<K> r;
  for (std::size_t i = 1; i < p.size(); ++i)
    r.push_back(f.mul(f.from_int(static_cast<long long>(i)), p[i]));
  poly_trim(f, r);
  return r;
}

template <class K>
Poly<K> poly_pow_mod(const K& f, Poly<K> base, unsigned long long e, const Poly<K>& m) {
  Poly<K> r = poly_const(f, f.one());
  base = poly_mod(f, base, m);
  while (e) {
    if (e & 1) r = poly_mod(f, poly_mul(f, r, base), m);
    base = poly_mod(f, poly_mul(f, base, base), m);
    e >>= 1;
  }
  return r;
}

// Pairwise-coprime refinement of a list of monic polynomials (factor
// refinement): every input is a product of powers of the outputs. Avoids
// irreducible factorization where divisibility data suffices.
template <class K>
std::vector<Poly<K>> coprime_refinement(const K& f, std::vector<Poly<K>> in) {
  std::vector<Poly<K>> basis;
  for (auto& p : in) {
    poly_trim(f, p);
    if (poly_deg(p) < 1) continue;
    std::vector<Poly<K>> work{poly_monic(f, p)};
    while (!work.empty()) {
      Poly<K> cur = work.back();
      work.pop_back();
      if (poly_deg(cur) < 1) continue;
      bool merged = false;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        Poly<K> g = poly_gcd(f, cur, basis[i]);
        if (poly_deg(g) < 1) continue;
        Poly<K> b_rest = poly_div(f, basis[i], g);
        Poly<K> c_rest = poly_div(f, cur, g);
        basis.erase(basis.begin() + static_cast<long>(i));
        for (const Poly<K>& piece : {g, b_rest, c_rest})
          if (poly_deg(piece) >= 1) work.push_back(piece);
        merged = true;
        break;
      }
      if (!merged) basis.push_back(cur);
    }
  }
  return basis;
}

template <class K>
int poly_valuation(const K& f, Poly<K> a, const Poly<K>& q) {
  poly_trim(f, a);
  if (a.empty()) throw error("valuation of zero polynomial");
  if (poly_deg(q) < 1) throw error("valuation by constant");
  int v = 0;
  while (true) {
    auto [quo, rem] = poly_divmod(f, a, q);
    if (!rem.empty()) return v;
    a = quo;
    ++v;
  }
}

// Split lcm(a,b) into coprime parts a1 | a, b1 | b using a gcd-free basis.
template <class K>
std::pair<Poly<K>, Poly<K>> coprime_lcm_split(const K& f, const Poly<K>& a, const Poly<K>& b) {
  auto basis = coprime_refinement(f, {a, b});
  Poly<K> a1 = poly_const(f, f.one());
  Poly<K> b1 = poly_const(f, f.one());
  for (const auto& q : basis) {
    int va = poly_valuation(f, a, q), vb = poly_valuation(f, b, q);
    Poly<K>* side = (va >= vb) ? &a1 : &b1;
    int e = std::max(va, vb);
    for (int i = 0; i < e; ++i) *side = poly_mul(f, *side, q);
  }
  return {a1, b1};
}

// Complete factorization over F_p (Berlekamp). Returns (irreducible, mult).
inline std::vector<std::pair<Poly<PrimeField>, int>> factor_fp(const PrimeField& f,
                                                               Poly<PrimeField> p) {
  using P = Poly<PrimeField>;
  poly_trim(f, p);
  if (poly_deg(p) < 1) throw error("factor: constant polynomial");
  p = poly_monic(f, p);
  std::int64_t q = f.modulus();

  std::vector<std::pair<P, int>> out;
  auto record = [&](const P& irr, int mult) {
    for (auto& e : out)
      if (poly_eq(f, e.first, irr)) {
        e.second += mult;
        return;
      }
    out.emplace_back(irr, mult);
  };

  std::mt19937_64 rng(0x5eed);

  // stack of (poly known squarefree? no: poly, multiplicity multiplier)
  struct Item { P poly; int mult; };
  std::vector<Item> stack{{p, 1}};
  while (!stack.empty()) {
    auto [g, mult] = stack.back();
    stack.pop_back();
    poly_trim(f, g);
    if (poly_deg(g) < 1) continue;
    g = poly_monic(f, g);
    if (poly_deg(g) == 1) { record(g, mult); continue; }

    P d = poly_derivative(f, g);
    if (d.empty()) {
      // g is a p-th power: over the prime field, coefficients are fixed by
      // Frobenius, so take the p-th root by index division.
      P root;
      for (std::size_t i = 0; i < g.size(); i += static_cast<std::size_t>(q))
        root.push_back(g[i]);
      stack.push_back({root, mult * static_cast<int>(q)});
      continue;
    }
    P sq = poly_gcd(f, g, d);
    if (poly_deg(sq) >= 1) {
      stack.push_back({poly_div(f, g, sq), mult});
      stack.push_back({sq, mult});
      continue;
    }

    // g squarefree: Berlekamp subalgebra = kernel of (Frobenius - id)
    std::size_t n = static_cast<std::size_t>(poly_deg(g));
    Matrix<PrimeField> frob(f, n, n);
    P xq = poly_pow_mod(f, poly_x(f), static_cast<unsigned long long>(q), g);
    P cur = poly_const(f, f.one());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < cur.size(); ++j) frob(j, i) = cur[j];
      frob(i, i) = f.sub(frob(i, i), f.one());
      cur = poly_mod(f, poly_mul(f, cur, xq), g);
    }
    Matrix<PrimeField> ker = frob.kernel();
    if (ker.rows() <= 1) { record(g, mult); continue; }

    // pick a non-constant element of the subalgebra and split
    P b;
    for (std::size_t i = 0; i < ker.rows(); ++i) {
      P cand = ker.row(i);
      poly_trim(f, cand);
      if (poly_deg(cand) >= 1) { b = cand; break; }
    }
    if (b.empty()) { record(g, mult); continue; }

    bool split = false;
    if (q <= 257) {
      for (std::int64_t lam = 0; lam < q && !split; ++lam) {
        P shift = poly_sub(f, b, poly_const(f, f.from_int(lam)));
        P h = poly_gcd(f, g, shift);
        int dh = poly_deg(h);
        if (dh >= 1 && dh < poly_deg(g)) {
          stack.push_back({h, mult});
          stack.push_back({poly_div(f, g, h), mult});
          split = true;
        }
      }
    } else {
      // large modulus: random gcd splitting via the quadratic-residue map
      for (int tries = 0; tries < 64 && !split; ++tries) {
        std::uniform_int_distribution<std::int64_t> d0(0, q - 1);
        P r = poly_add(f, b, poly_const(f, f.from_int(d0(rng))));
        P h = poly_pow_mod(f, r, static_cast<unsigned long long>((q - 1) / 2), g);
        h = poly_sub(f, h, poly_const(f, f.one()));
        h = poly_gcd(f, g, h);
        int dh = poly_deg(h);
        if (dh >= 1 && dh < poly_deg(g)) {
          stack.push_back({h, mult});
          stack.push_back({poly_div(f, g, h), mult});
          split = true;
        }
      }
    }
    if (!split) record(g, mult);  // should not happen; stay safe
  }
  return out;
}

// Yun's squarefree decomposition, characteristic zero only. Returns parts
// a_1, a_2, ... with p ~ prod a_i^i, the a_i squarefree and pairwise coprime
// (some may be constant).
template <class K>
std::vector<Poly<K>> squarefree_parts(const K& f, Poly<K> p) {
  std::vector<Poly<K>> out;
  p = poly_monic(f, p);
  if (poly_deg(p) < 1) return out;
  Poly<K> d = poly_derivative(f, p);
  Poly<K> a = poly_gcd(f, p, d);
  Poly<K> b = poly_div(f, p, a);
  Poly<K> c = poly_sub(f, poly_div(f, d, a), poly_derivative(f, b));
  while (poly_deg(b) >= 1) {
    Poly<K> ai = poly_gcd(f, b, c);
    out.push_back(ai);
    b = poly_div(f, b, ai);
    c = poly_sub(f, poly_div(f, c, ai), poly_derivative(f, b));
  }
  return out;
}

// All rational roots of a rational polynomial, found by the rational root
// theorem on the integerized coefficients. Trial division is capped, so for
// coefficients with huge prime divisors the list can be incomplete; callers
// treat a missed root as "no split found".
inline std::vector<Rational> rational_roots(const RationalField& f, Poly<RationalField> p) {
  using Int = boost::multiprecision::mpz_int;
  std::vector<Rational> roots;
  poly_trim(f, p);
  if (poly_deg(p) < 1) return roots;
  std::size_t v = 0;
  while (v < p.size() && p[v] == 0) ++v;
  if (v > 0) {
    roots.push_back(Rational(0));
    p.erase(p.begin(), p.begin() + static_cast<long>(v));
  }
  if (poly_deg(p) < 1) return roots;
  Int den(1);
  for (const auto& c : p) den = boost::multiprecision::lcm(den, denominator(c));
  std::vector<Int> ic;
  for (const auto& c : p) ic.push_back(Int(numerator(c) * (den / denominator(c))));
  auto divisors = [](Int n) {
    std::vector<Int> out;
    n = abs(n);
    if (n == 0) return out;
    for (Int i = 1; i * i <= n && i < 200000; ++i)
      if (n % i == 0) {
        out.push_back(i);
        out.push_back(n / i);
      }
    return out;
  };
  auto eval_zero = [&](const Rational& r) {
    Rational acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * r + p[i];
    return acc == 0;
  };
  for (const Int& num : divisors(ic.front()))
    for (const Int& dq : divisors(ic.back()))
      for (int sign : {1, -1}) {
        Rational r = Rational(num * sign) / Rational(dq);
        if (eval_zero(r) &&
            std::find(roots.begin(), roots.end(), r) == roots.end())
          roots.push_back(r);
        if (roots.size() > 64) return roots;
      }
  return roots;
}

namespace detail {

// pairwise coprime parts of a minimal polynomial, one per irreducible
inline std::vector<Poly<PrimeField>> primary_parts(const PrimeField& f, const Poly<PrimeField>& m) {
  std::vector<Poly<PrimeField>> parts;
  if (poly_deg(m) < 1) return parts;
  for (const auto& [irr, mult] : factor_fp(f, m)) {
    Poly<PrimeField> part = poly_const(f, f.one());
    for (int i = 0; i < mult; ++i) part = poly_mul(f, part, irr);
    parts.push_back(part);
  }
  return parts;
}

// Over the rationals: squarefree layers, then rational roots inside each
// layer. Non-linear irreducible factors sharing a layer stay glued; callers
// treat the resulting under-splitting as "no split found".
inline std::vector<Poly<RationalField>> primary_parts(const RationalField& f,
                                                      const Poly<RationalField>& m) {
  std::vector<Poly<RationalField>> parts;
  if (poly_deg(m) < 1) return parts;
  auto layers = squarefree_parts(f, m);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    Poly<RationalField> layer = layers[i];
    if (poly_deg(layer) < 1) continue;
    std::size_t mult = i + 1;
    auto raise = [&](const Poly<RationalField>& base) {
      Poly<RationalField> acc = poly_const(f, f.one());
      for (std::size_t t = 0; t < mult; ++t) acc = poly_mul(f, acc, base);
      return acc;
    };
    for (const auto& r : rational_roots(f, layer)) {
      Poly<RationalField> lin{f.neg(r), f.one()};
      parts.push_back(raise(lin));
      layer = poly_div(f, layer, lin);
    }
    if (poly_deg(layer) >= 1) parts.push_back(raise(layer));
  }
  return parts;
}

}  // namespace detail

}  // namespace strelkit
