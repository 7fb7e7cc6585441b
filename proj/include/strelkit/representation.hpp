#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "strelkit/canonical_forms.hpp"
#include "strelkit/word.hpp"

namespace strelkit {

// Finite-dimensional module over a string presentation: one space per vertex,
// one matrix per arrow mapping the tail space into the head space.
template <class K>
struct Representation {
  const StringPresentation* pres;
  K field;
  std::vector<std::size_t> vdim;
  std::vector<Matrix<K>> action;                 // per arrow, head_dim x tail_dim
  std::vector<std::vector<std::string>> labels;  // per vertex

  Representation(const StringPresentation& p, K f, std::vector<std::size_t> dims)
      : pres(&p), field(f), vdim(std::move(dims)), labels(p.num_vertices()) {
    if (vdim.size() != p.num_vertices()) throw error("one dimension per vertex required");
    for (std::size_t a = 0; a < p.num_arrows(); ++a)
      action.emplace_back(f, vdim[p.arrow(a).head], vdim[p.arrow(a).tail]);
  }

  std::size_t dim() const {
    std::size_t d = 0;
    for (auto v : vdim) d += v;
    return d;
  }

  // product of arrow matrices along a path, first-traversed arrow last
  Matrix<K> path_action(const std::vector<std::size_t>& path) const {
    Matrix<K> m = action.at(path.front());
    for (std::size_t i = 1; i < path.size(); ++i) m = m.mul(action.at(path[i]));
    return m;
  }

  bool relations_annihilate() const {
    for (const auto& rel : pres->relations())
      if (!(path_action(rel) == Matrix<K>(field, vdim[pres->arrow(rel.front()).head],
                                          vdim[pres->arrow(rel.back()).tail])))
        return false;
    return true;
  }
};

// (vertex, index inside the vertex block) for each position 0..n of a finite
// word; positions are assigned local indices in order of appearance.
inline std::vector<std::pair<std::size_t, std::size_t>> word_positions(
    const StringPresentation& pres, const Word& c) {
  std::vector<std::size_t> used(pres.num_vertices(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  long n = c.is_trivial() ? 0 : static_cast<long>(c.length());
  for (long i = 0; i <= n; ++i) {
    std::size_t v = c.is_trivial() ? c.trivial_vertex() : c.vertex_at(i, pres);
    out.emplace_back(v, used[v]++);
  }
  return out;
}

// The module with basis b_0..b_n walking along the word: a direct letter
// C_i = x gives x b_i = b_{i-1}, an inverse letter C_i = x^{-1} gives
// x b_{i-1} = b_i.
template <class K>
Representation<K> string_module(const K& f, const StringPresentation& pres, const Word& c) {
  if (!c.is_trivial() && !c.is_finite()) throw error("string modules need finite words");
  if (!is_valid_word(pres, c)) throw error("not a valid word for this presentation");
  auto pos = word_positions(pres, c);
  std::vector<std::size_t> dims(pres.num_vertices(), 0);
  for (const auto& [v, j] : pos) dims[v] = std::max(dims[v], j + 1);
  Representation<K> m(pres, f, dims);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    auto& lab = m.labels[pos[i].first];
    lab.resize(dims[pos[i].first]);
    lab[pos[i].second] = "b" + std::to_string(i);
  }
  long n = c.is_trivial() ? 0 : static_cast<long>(c.length());
  for (long i = 1; i <= n; ++i) {
    Letter l = c.letter(i);
    auto& mat = m.action[l.arrow];
    if (l.inverse)
      mat(pos[i].second, pos[i - 1].second) = f.one();
    else
      mat(pos[i - 1].second, pos[i].second) = f.one();
  }
  return m;
}

// Module of a periodic word with coefficients in a finite-dimensional
// module over the Laurent algebra in T: positions 1..p each carry a copy of
// the coefficient space, and the identification b_{i-p} = T b_i routes the
// boundary letters through the T-matrix.
template <class K>
Representation<K> band_module(const K& f, const StringPresentation& pres, const Word& c,
                              const Matrix<K>& t) {
  if (c.shape() != Word::Shape::Periodic) throw error("band modules need periodic words");
  if (!is_valid_word(pres, c)) throw error("not a valid word for this presentation");
  auto tinv = t.inverse();
  if (t.rows() != t.cols() || t.rows() == 0 || !tinv)
    throw error("coefficient matrix must be invertible");
  std::size_t p = c.period(), d = t.rows();

  std::vector<std::size_t> dims(pres.num_vertices(), 0);
  std::vector<std::size_t> start(p + 1, 0);  // local offset of position i's block
  for (std::size_t i = 1; i <= p; ++i) {
    std::size_t v = c.vertex_at(static_cast<long>(i), pres);
    start[i] = dims[v];
    dims[v] += d;
  }
  Representation<K> m(pres, f, dims);
  for (std::size_t i = 1; i <= p; ++i) {
    auto& lab = m.labels[c.vertex_at(static_cast<long>(i), pres)];
    lab.resize(dims[c.vertex_at(static_cast<long>(i), pres)]);
    for (std::size_t k = 0; k < d; ++k)
      lab[start[i] + k] = "b" + std::to_string(i) + (d > 1 ? "*e" + std::to_string(k + 1) : "");
  }

  auto put = [&](Matrix<K>& mat, std::size_t r0, std::size_t c0, const Matrix<K>& blk) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t cc = 0; cc < d; ++cc) mat(r0 + r, c0 + cc) = blk(r, cc);
  };
  Matrix<K> id = Matrix<K>::identity(f, d);
  for (std::size_t i = 1; i <= p; ++i) {
    // the letter C_i connects position i-1 (its head side) to position i
    Letter l = c.letter(static_cast<long>(i));
    auto& mat = m.action[l.arrow];
    if (l.inverse) {
      if (i == 1)
        put(mat, start[1], start[p], *tinv);  // x b_0 = b_1 with b_0 = T b_p
      else
        put(mat, start[i], start[i - 1], id);
    } else {
      if (i == 1)
        put(mat, start[p], start[1], t);  // x b_1 = b_0 = T b_p
      else
        put(mat, start[i - 1], start[i], id);
    }
  }
  return m;
}

template <class K>
Representation<K> direct_sum_rep(const std::vector<Representation<K>>& ms) {
  if (ms.empty()) throw error("empty direct sum");
  const auto& first = ms.front();
  for (const auto& m : ms)
    if (m.pres != first.pres) throw error("direct sum across different presentations");
  std::vector<std::size_t> dims(first.vdim.size(), 0);
  for (const auto& m : ms)
    for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += m.vdim[v];
  Representation<K> out(*first.pres, first.field, dims);
  std::vector<std::size_t> off(dims.size(), 0);
  for (const auto& m : ms) {
    for (std::size_t a = 0; a < out.action.size(); ++a) {
      std::size_t h = first.pres->arrow(a).head, t = first.pres->arrow(a).tail;
      for (std::size_t r = 0; r < m.action[a].rows(); ++r)
        for (std::size_t c = 0; c < m.action[a].cols(); ++c)
          out.action[a](off[h] + r, off[t] + c) = m.action[a](r, c);
    }
    for (std::size_t v = 0; v < dims.size(); ++v) {
      out.labels[v].resize(dims[v]);
      for (std::size_t i = 0; i < m.vdim[v]; ++i)
        out.labels[v][off[v] + i] =
            m.labels[v].size() > i ? m.labels[v][i] : std::to_string(off[v] + i);
      off[v] += m.vdim[v];
    }
  }
  return out;
}

// A morphism of representations: one matrix per vertex, commuting with every
// arrow matrix.
template <class K>
struct RepHom {
  std::vector<Matrix<K>> at;
};

template <class K>
std::vector<RepHom<K>> hom_space(const Representation<K>& m, const Representation<K>& n) {
  if (m.pres != n.pres) throw error("hom across different presentations");
  const K& f = m.field;
  std::size_t nv = m.vdim.size();
  std::vector<std::size_t> off(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) off[v + 1] = off[v] + n.vdim[v] * m.vdim[v];
  std::size_t unknowns = off[nv], rows = 0;
  for (std::size_t a = 0; a < m.action.size(); ++a)
    rows += n.vdim[m.pres->arrow(a).head] * m.vdim[m.pres->arrow(a).tail];

  Matrix<K> sys(f, rows, unknowns);
  std::size_t row = 0;
  for (std::size_t a = 0; a < m.action.size(); ++a) {
    std::size_t h = m.pres->arrow(a).head, t = m.pres->arrow(a).tail;
    // phi_h A_m - A_n phi_t = 0, entry (r, c)
    for (std::size_t r = 0; r < n.vdim[h]; ++r)
      for (std::size_t c = 0; c < m.vdim[t]; ++c) {
        for (std::size_t k = 0; k < m.vdim[h]; ++k)
          sys(row, off[h] + r * m.vdim[h] + k) =
              f.add(sys(row, off[h] + r * m.vdim[h] + k), m.action[a](k, c));
        for (std::size_t k = 0; k < n.vdim[t]; ++k)
          sys(row, off[t] + k * m.vdim[t] + c) =
              f.sub(sys(row, off[t] + k * m.vdim[t] + c), n.action[a](r, k));
        ++row;
      }
  }

  std::vector<RepHom<K>> out;
  auto ker = sys.kernel();
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    RepHom<K> h;
    for (std::size_t v = 0; v < nv; ++v) {
      Matrix<K> phi(f, n.vdim[v], m.vdim[v]);
      for (std::size_t i = 0; i < n.vdim[v]; ++i)
        for (std::size_t j = 0; j < m.vdim[v]; ++j) phi(i, j) = ker(r, off[v] + i * m.vdim[v] + j);
      h.at.push_back(std::move(phi));
    }
    out.push_back(std::move(h));
  }
  return out;
}

template <class K>
bool is_morphism(const Representation<K>& m, const Representation<K>& n, const RepHom<K>& h) {
  for (std::size_t a = 0; a < m.action.size(); ++a) {
    std::size_t hd = m.pres->arrow(a).head, tl = m.pres->arrow(a).tail;
    if (!(h.at[hd].mul(m.action[a]) == n.action[a].mul(h.at[tl]))) return false;
  }
  return true;
}

namespace detail {

// endomorphism as one matrix on the vertex-major total space
template <class K>
Matrix<K> total_matrix(const Representation<K>& m, const RepHom<K>& h) {
  const K& f = m.field;
  std::size_t n = m.dim();
  Matrix<K> out(f, n, n);
  std::size_t off = 0;
  for (std::size_t v = 0; v < m.vdim.size(); ++v) {
    for (std::size_t i = 0; i < m.vdim[v]; ++i)
      for (std::size_t j = 0; j < m.vdim[v]; ++j) out(off + i, off + j) = h.at[v](i, j);
    off += m.vdim[v];
  }
  return out;
}

}  // namespace detail

template <class K>
struct EndAlgebra {
  std::vector<RepHom<K>> basis;
  bool local;
};

// The endomorphism algebra with a locality verdict. Decomposability is
// witnessed by an endomorphism whose minimal polynomial has two coprime
// parts (the kernels of the parts split the module); we search basis
// elements, their products and sums, and a deterministic random batch.
// Over the rationals only rational eigenvalue clusters are separated, so a
// module whose splitting needs irrational spectra can be reported local;
// over F_p the factoring is complete.
template <class K>
EndAlgebra<K> endomorphism_algebra(const Representation<K>& m) {
  const K& f = m.field;
  EndAlgebra<K> out{hom_space(m, m), true};
  if (m.dim() == 0 || out.basis.size() <= 1) return out;

  std::vector<Matrix<K>> candidates;
  std::vector<Matrix<K>> basis_mats;
  for (const auto& h : out.basis) basis_mats.push_back(detail::total_matrix(m, h));
  candidates = basis_mats;
  for (std::size_t i = 0; i < basis_mats.size(); ++i)
    for (std::size_t j = 0; j < basis_mats.size(); ++j) {
      candidates.push_back(basis_mats[i].mul(basis_mats[j]));
      if (i < j) candidates.push_back(basis_mats[i].add(basis_mats[j]));
    }
  std::mt19937_64 rng(0x5eed0003ULL);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 40; ++t) {
    Matrix<K> cand(f, m.dim(), m.dim());
    for (const auto& b : basis_mats) cand = cand.add(b.scale(f.from_int(d(rng))));
    candidates.push_back(std::move(cand));
  }
  for (const auto& cand : candidates) {
    auto parts = detail::primary_parts(f, minimal_polynomial(f, cand));
    if (parts.size() >= 2) {
      out.local = false;
      return out;
    }
  }
  return out;
}

template <class K>
bool is_indecomposable(const Representation<K>& m) {
  if (m.dim() == 0) return false;
  return endomorphism_algebra(m).local;
}

}  // namespace strelkit
