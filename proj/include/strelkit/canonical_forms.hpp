#pragma once

#include <vector>

#include "strelkit/poly.hpp"
#include "strelkit/subspace.hpp"

namespace strelkit {

// g(f) v by Horner.
template <class K>
std::vector<typename K::Elem> apply_poly(const K& fld, const Matrix<K>& f,
                                         const Poly<K>& g,
                                         const std::vector<typename K::Elem>& v) {
  std::vector<typename K::Elem> r(v.size(), fld.zero());
  for (std::size_t i = g.size(); i-- > 0;) {
    r = f.mul_vec(r);
    r = vec_add(fld, r, vec_scale(fld, g[i], v));
  }
  return r;
}

// The matrix g(f), by Horner.
template <class K>
Matrix<K> poly_eval_matrix(const K& fld, const Poly<K>& g, const Matrix<K>& f) {
  std::size_t n = f.rows();
  Matrix<K> r(fld, n, n);
  for (std::size_t i = g.size(); i-- > 0;) {
    r = r.mul(f);
    for (std::size_t d = 0; d < n; ++d) r(d, d) = fld.add(r(d, d), g[i]);
  }
  return r;
}

// Monic generator of {g : g(f) v = 0}.
template <class K>
Poly<K> local_min_poly(const K& fld, const Matrix<K>& f,
                       const std::vector<typename K::Elem>& v) {
  std::size_t n = f.rows();
  std::vector<std::vector<typename K::Elem>> krylov;
  std::vector<typename K::Elem> cur = v;
  for (std::size_t k = 0; k <= n; ++k) {
    Matrix<K> m = Matrix<K>::from_rows(fld, n, krylov);
    auto dep = m.transpose().solve(cur);
    if (dep) {
      Poly<K> p;
      for (const auto& c : *dep) p.push_back(fld.neg(c));
      p.push_back(fld.one());
      poly_trim(fld, p);
      return p;
    }
    krylov.push_back(cur);
    cur = f.mul_vec(cur);
  }
  throw error("local minimal polynomial not found");  // unreachable
}

template <class K>
Poly<K> minimal_polynomial(const K& fld, const Matrix<K>& f) {
  if (f.rows() != f.cols()) throw error("minimal polynomial of non-square matrix");
  std::size_t n = f.rows();
  Poly<K> m = poly_const(fld, fld.one());
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<typename K::Elem> e(n, fld.zero());
    e[i] = fld.one();
    m = poly_lcm(fld, m, local_min_poly(fld, f, e));
    if (poly_deg(m) == static_cast<int>(n)) break;
  }
  return m;
}

// A vector whose local minimal polynomial is the minimal polynomial of f,
// built by merging basis vectors through coprime lcm splits.
template <class K>
std::vector<typename K::Elem> maximal_vector(const K& fld, const Matrix<K>& f) {
  std::size_t n = f.rows();
  if (n == 0) return {};
  std::vector<typename K::Elem> v(n, fld.zero());
  v[0] = fld.one();
  Poly<K> mv = local_min_poly(fld, f, v);
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<typename K::Elem> e(n, fld.zero());
    e[i] = fld.one();
    Poly<K> me = local_min_poly(fld, f, e);
    Poly<K> l = poly_lcm(fld, mv, me);
    if (poly_eq(fld, l, mv)) continue;
    auto [a1, b1] = coprime_lcm_split(fld, mv, me);
    auto part1 = apply_poly(fld, f, poly_div(fld, mv, a1), v);
    auto part2 = apply_poly(fld, f, poly_div(fld, me, b1), e);
    v = vec_add(fld, part1, part2);
    mv = local_min_poly(fld, f, v);
    if (!poly_eq(fld, mv, l)) throw error("maximal vector merge failed");
  }
  return v;
}

template <class K>
Matrix<K> companion_matrix(const K& fld, const Poly<K>& monic) {
  int d = poly_deg(monic);
  if (d < 1) throw error("companion of constant polynomial");
  Matrix<K> c(fld, static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (int i = 0; i + 1 < d; ++i) c(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = fld.one();
  for (int i = 0; i < d; ++i)
    c(static_cast<std::size_t>(i), static_cast<std::size_t>(d - 1)) = fld.neg(monic[static_cast<std::size_t>(i)]);
  return c;
}

template <class K>
struct FrobeniusForm {
  std::vector<Poly<K>> invariant_factors;  // ascending divisibility chain
  Matrix<K> form;                          // block diagonal of companions
  Matrix<K> transform;                     // transform^-1 * f * transform == form
};

namespace detail {

// One cyclic piece: the f-cyclic subspace of a maximal vector plus an
// f-invariant complement, found through a cyclic functional on the dual.
template <class K>
void frobenius_pieces(const K& fld, const Matrix<K>& f,
                      std::vector<std::pair<Poly<K>, Matrix<K>>>& pieces) {
  std::size_t n = f.rows();
  if (n == 0) return;
  auto v = maximal_vector(fld, f);
  Poly<K> mu = local_min_poly(fld, f, v);
  std::size_t d = static_cast<std::size_t>(poly_deg(mu));

  std::vector<std::vector<typename K::Elem>> zrows;
  auto cur = v;
  for (std::size_t i = 0; i < d; ++i) {
    zrows.push_back(cur);
    cur = f.mul_vec(cur);
  }
  Matrix<K> zbasis = Matrix<K>::from_rows(fld, n, zrows);  // rows = f^i v
  pieces.emplace_back(mu, zbasis.transpose());             // columns v, fv, ...

  if (d == n) return;

  // functional: 1 on f^{d-1} v, 0 on the other Krylov vectors and on a
  // complement of the cyclic subspace
  auto comp = Subspace<K>::span(zbasis).complement();
  Matrix<K> constraints = zbasis.vstack(comp.basis());
  std::vector<typename K::Elem> rhs(n, fld.zero());
  rhs[d - 1] = fld.one();
  auto phi = constraints.solve(rhs);
  if (!phi) throw error("cyclic functional not found");

  // U = K[f^T] phi; the complement is its joint kernel
  Matrix<K> ft = f.transpose();
  std::vector<std::vector<typename K::Elem>> urows;
  auto pcur = *phi;
  for (std::size_t i = 0; i < d; ++i) {
    urows.push_back(pcur);
    pcur = ft.mul_vec(pcur);
  }
  Matrix<K> w = Matrix<K>::from_rows(fld, n, urows).kernel();
  if (w.rows() != n - d) throw error("invariant complement has wrong dimension");

  // restrict f to W and recurse
  Matrix<K> wt = w.transpose();  // columns = basis of W
  Matrix<K> fw(fld, w.rows(), w.rows());
  for (std::size_t j = 0; j < w.rows(); ++j) {
    auto img = f.mul_vec(w.row(j));
    auto coords = wt.solve(img);
    if (!coords) throw error("complement is not invariant");
    for (std::size_t i = 0; i < w.rows(); ++i) fw(i, j) = (*coords)[i];
  }
  std::vector<std::pair<Poly<K>, Matrix<K>>> subpieces;
  frobenius_pieces(fld, fw, subpieces);
  for (auto& [poly, cols] : subpieces) pieces.emplace_back(poly, wt.mul(cols));
}

}  // namespace detail

// Rational canonical form with explicit base change; no factorization over
// the field is required, so it applies uniformly to Q and F_p.
template <class K>
FrobeniusForm<K> frobenius_form(const K& fld, const Matrix<K>& f) {
  if (f.rows() != f.cols()) throw error("canonical form of non-square matrix");
  std::size_t n = f.rows();
  std::vector<std::pair<Poly<K>, Matrix<K>>> pieces;
  detail::frobenius_pieces(fld, f, pieces);
  // recursion produces the largest invariant factor first
  std::reverse(pieces.begin(), pieces.end());

  FrobeniusForm<K> out{{}, Matrix<K>(fld, n, n), Matrix<K>(fld, n, n)};
  std::size_t off = 0;
  for (auto& [poly, cols] : pieces) {
    std::size_t d = static_cast<std::size_t>(poly_deg(poly));
    Matrix<K> c = companion_matrix(fld, poly);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out.form(off + i, off + j) = c(i, j);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) out.transform(i, off + j) = cols(i, j);
    out.invariant_factors.push_back(poly);
    off += d;
  }
  if (off != n) throw error("canonical form does not fill the space");
  for (std::size_t i = 0; i + 1 < out.invariant_factors.size(); ++i)
    if (!poly_mod(fld, out.invariant_factors[i + 1], out.invariant_factors[i]).empty())
      throw error("invariant factors fail the divisibility chain");
  auto inv = out.transform.inverse();
  if (!inv || inv->mul(f).mul(out.transform) != out.form)
    throw error("canonical form transform check failed");
  return out;
}

// Jordan chains of a nilpotent map: each chain is (v, Nv, ..., N^{l-1}v)
// with N^l v = 0; chains are found from the kernel filtration, longest first.
template <class K>
std::vector<std::vector<std::vector<typename K::Elem>>> nilpotent_chains(
    const K& fld, const Matrix<K>& nmat) {
  std::size_t n = nmat.rows();
  if (n != nmat.cols()) throw error("nilpotent chains of non-square matrix");
  std::vector<Subspace<K>> ker;  // ker[i] = kernel of N^i
  ker.push_back(Subspace<K>::zero(fld, n));
  Matrix<K> pw = Matrix<K>::identity(fld, n);
  std::size_t h = 0;
  while (ker.back().dim() < n) {
    pw = pw.mul(nmat);
    ker.push_back(Subspace<K>::span(pw.kernel()));
    ++h;
    if (h > n) throw error("matrix is not nilpotent");
  }

  std::vector<std::vector<std::vector<typename K::Elem>>> chains;
  for (std::size_t height = h; height >= 1; --height) {
    // span we must avoid: lower kernel plus images of longer chains at this height
    Subspace<K> avoid = ker[height - 1];
    std::vector<std::vector<typename K::Elem>> reps;
    for (const auto& chain : chains)
      if (chain.size() > height) reps.push_back(chain[chain.size() - height]);
    if (!reps.empty())
      avoid = avoid.sum(Subspace<K>::span_vectors(fld, n, reps));
    for (std::size_t i = 0; i < ker[height].dim(); ++i) {
      auto cand = ker[height].basis_vector(i);
      if (avoid.contains(cand)) continue;
      std::vector<std::vector<typename K::Elem>> chain{cand};
      auto cur = cand;
      for (std::size_t s = 1; s < height; ++s) {
        cur = nmat.mul_vec(cur);
        chain.push_back(cur);
      }
      if (!vec_is_zero(fld, nmat.mul_vec(chain.back())))
        throw error("chain does not terminate");
      chains.push_back(chain);
      std::vector<std::vector<typename K::Elem>> one{cand};
      avoid = avoid.sum(Subspace<K>::span_vectors(fld, n, one));
    }
    if (height == 1) break;
  }
  return chains;
}

}  // namespace strelkit
