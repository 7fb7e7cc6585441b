#pragma once

#include <optional>

#include "strelkit/matrix.hpp"
#include "strelkit/subspace.hpp"

namespace strelkit {

// A linear relation between finite-dimensional spaces: a subspace of
// target + source holding (output, input) pairs, so u lies in C v exactly
// when (u, v) is in the graph. Generalizes the graph of a linear map; the
// square case carries the sharp/flat calculus.
template <class K>
class LinearRelation {
 public:
  using Elem = typename K::Elem;

  LinearRelation(K field, std::size_t target, std::size_t source, Subspace<K> graph)
      : field_(field), tgt_(target), src_(source), graph_(std::move(graph)) {
    if (graph_.ambient() != tgt_ + src_) throw error("relation graph has wrong ambient");
  }

  static LinearRelation zero_relation(K f, std::size_t target, std::size_t source) {
    return LinearRelation(f, target, source, Subspace<K>::zero(f, target + source));
  }

  static LinearRelation identity(K f, std::size_t n) {
    Matrix<K> rows(f, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      rows(i, i) = f.one();
      rows(i, n + i) = f.one();
    }
    return LinearRelation(f, n, n, Subspace<K>::span(rows));
  }

  // graph of a linear map: pairs (m v, v)
  static LinearRelation from_matrix(const Matrix<K>& m) {
    K f = m.field();
    Matrix<K> rows(f, m.cols(), m.rows() + m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (std::size_t i = 0; i < m.rows(); ++i) rows(j, i) = m(i, j);
      rows(j, m.rows() + j) = f.one();
    }
    return LinearRelation(f, m.rows(), m.cols(), Subspace<K>::span(rows));
  }

  const K& field() const { return field_; }
  std::size_t target_dim() const { return tgt_; }
  std::size_t source_dim() const { return src_; }
  const Subspace<K>& graph() const { return graph_; }
  bool is_square() const { return tgt_ == src_; }

  bool operator==(const LinearRelation& o) const {
    return tgt_ == o.tgt_ && src_ == o.src_ && graph_ == o.graph_;
  }

  bool contains_pair(const std::vector<Elem>& out, const std::vector<Elem>& in) const {
    std::vector<Elem> v(out);
    v.insert(v.end(), in.begin(), in.end());
    return graph_.contains(v);
  }

  // C U: outputs over all inputs in U
  Subspace<K> apply(const Subspace<K>& u) const {
    if (u.ambient() != src_) throw error("apply: ambient mismatch");
    auto inter = graph_.intersect(product_space(Subspace<K>::full(field_, tgt_), u));
    return inter.coord_project(0, tgt_);
  }

  // some w with (w, v) in the graph; the full image is w + apply(0)
  std::optional<std::vector<Elem>> apply_vector(const std::vector<Elem>& v) const {
    Matrix<K> h = annihilator(graph_);
    Matrix<K> a(field_, h.rows(), tgt_);
    std::vector<Elem> b(h.rows(), field_.zero());
    for (std::size_t r = 0; r < h.rows(); ++r) {
      for (std::size_t j = 0; j < tgt_; ++j) a(r, j) = h(r, j);
      Elem s = field_.zero();
      for (std::size_t j = 0; j < src_; ++j) s = field_.add(s, field_.mul(h(r, tgt_ + j), v[j]));
      b[r] = field_.neg(s);
    }
    return a.solve(b);
  }

  LinearRelation inverse_rel() const {
    const auto& bs = graph_.basis();
    Matrix<K> rows(field_, bs.rows(), src_ + tgt_);
    for (std::size_t r = 0; r < bs.rows(); ++r) {
      for (std::size_t j = 0; j < src_; ++j) rows(r, j) = bs(r, tgt_ + j);
      for (std::size_t j = 0; j < tgt_; ++j) rows(r, src_ + j) = bs(r, j);
    }
    return LinearRelation(field_, src_, tgt_, Subspace<K>::span(rows));
  }

  // this after d: u in (C D) w iff u in C v and v in D w for some v
  LinearRelation compose(const LinearRelation& d) const {
    if (src_ != d.tgt_) throw error("compose: ambient mismatch");
    std::size_t mid = src_;
    auto a = product_space(graph_, Subspace<K>::full(field_, d.src_));
    auto b = product_space(Subspace<K>::full(field_, tgt_), d.graph_);
    auto inter = a.intersect(b);
    const auto& bs = inter.basis();
    Matrix<K> rows(field_, bs.rows(), tgt_ + d.src_);
    for (std::size_t r = 0; r < bs.rows(); ++r) {
      for (std::size_t j = 0; j < tgt_; ++j) rows(r, j) = bs(r, j);
      for (std::size_t j = 0; j < d.src_; ++j) rows(r, tgt_ + j) = bs(r, tgt_ + mid + j);
    }
    return LinearRelation(field_, tgt_, d.src_, Subspace<K>::span(rows));
  }

  // C cut down to a subspace: graph intersect (U + U), in U coordinates
  LinearRelation restrict_to(const Subspace<K>& u) const {
    if (!is_square() || u.ambient() != src_) throw error("restrict: need a subspace of V");
    auto g2 = graph_.intersect(product_space(u, u));
    std::size_t d = u.dim();
    const auto& bs = g2.basis();
    Matrix<K> rows(field_, bs.rows(), 2 * d);
    for (std::size_t r = 0; r < bs.rows(); ++r) {
      auto full_row = bs.row(r);
      std::vector<Elem> a(full_row.begin(), full_row.begin() + src_);
      std::vector<Elem> b(full_row.begin() + src_, full_row.end());
      auto ca = u.coords(a), cb = u.coords(b);
      if (!ca || !cb) throw error("restrict: graph element outside U + U");
      for (std::size_t j = 0; j < d; ++j) rows(r, j) = (*ca)[j];
      for (std::size_t j = 0; j < d; ++j) rows(r, d + j) = (*cb)[j];
    }
    return LinearRelation(field_, d, d, Subspace<K>::span(rows));
  }

  // image of graph ∩ (A + A) in the quotient A/B
  LinearRelation on_subquotient(const QuotientSpace<K>& q) const {
    if (!is_square()) throw error("subquotient: need a square relation");
    auto g2 = graph_.intersect(product_space(q.total(), q.total()));
    std::size_t d = q.dim();
    const auto& bs = g2.basis();
    Matrix<K> rows(field_, bs.rows(), 2 * d);
    for (std::size_t r = 0; r < bs.rows(); ++r) {
      auto full_row = bs.row(r);
      std::vector<Elem> a(full_row.begin(), full_row.begin() + src_);
      std::vector<Elem> b(full_row.begin() + src_, full_row.end());
      auto ca = q.coords(a), cb = q.coords(b);
      for (std::size_t j = 0; j < d; ++j) rows(r, j) = ca[j];
      for (std::size_t j = 0; j < d; ++j) rows(r, d + j) = cb[j];
    }
    return LinearRelation(field_, d, d, Subspace<K>::span(rows));
  }

  // both projections of the graph onto V are isomorphisms
  bool is_automorphic() const {
    if (!is_square()) return false;
    if (graph_.dim() != src_) return false;
    auto out_axis = Subspace<K>::full(field_, tgt_).coord_embed(tgt_ + src_, 0);
    auto in_axis = Subspace<K>::full(field_, src_).coord_embed(tgt_ + src_, tgt_);
    return graph_.intersect(out_axis).dim() == 0 && graph_.intersect(in_axis).dim() == 0;
  }

  // matrix of an automorphic relation: column j is the unique output at e_j
  Matrix<K> as_matrix() const {
    if (!is_automorphic()) throw error("relation is not the graph of an automorphism");
    Matrix<K> t(field_, tgt_, src_);
    for (std::size_t j = 0; j < src_; ++j) {
      std::vector<Elem> e(src_, field_.zero());
      e[j] = field_.one();
      auto w = apply_vector(e);
      if (!w) throw error("automorphic relation not total");
      for (std::size_t i = 0; i < tgt_; ++i) t(i, j) = (*w)[i];
    }
    return t;
  }

  struct SharpFlat {
    Subspace<K> orbit;      // C' = union of C^n 0
    Subspace<K> stable;     // C'' = intersection of C^n V
    Subspace<K> co_orbit;   // (C^-1)'
    Subspace<K> co_stable;  // (C^-1)''
    Subspace<K> plus, minus, sharp, flat;
  };

  SharpFlat sharp_flat() const {
    if (!is_square()) throw error("sharp/flat calculus needs a square relation");
    auto inv = inverse_rel();
    SharpFlat d{chain(Subspace<K>::zero(field_, src_)), chain(Subspace<K>::full(field_, src_)),
                inv.chain(Subspace<K>::zero(field_, src_)),
                inv.chain(Subspace<K>::full(field_, src_)),
                Subspace<K>::zero(field_, src_), Subspace<K>::zero(field_, src_),
                Subspace<K>::zero(field_, src_), Subspace<K>::zero(field_, src_)};
    d.plus = d.stable.intersect(d.co_orbit);
    d.minus = d.co_stable.intersect(d.orbit);
    d.sharp = d.stable.intersect(d.co_stable);
    d.flat = d.plus.sum(d.minus);
    return d;
  }

  Subspace<K> sharp() const { return sharp_flat().sharp; }
  Subspace<K> flat() const { return sharp_flat().flat; }

  struct TModule {
    QuotientSpace<K> space;  // C sharp over C flat
    Matrix<K> t;             // invertible action on the quotient coordinates
    std::size_t dim() const { return space.dim(); }
  };

  // T(flat + v) = flat + w exactly when w lies in sharp ∩ (flat + C v)
  TModule induced_t() const {
    auto sf = sharp_flat();
    QuotientSpace<K> q(sf.sharp, sf.flat);
    std::size_t r = q.dim();
    auto c0 = apply(Subspace<K>::zero(field_, src_));
    if (!sf.flat.contains(sf.sharp.intersect(c0.sum(sf.flat))))
      throw error("T-action is not well-defined");
    Matrix<K> t(field_, r, r);
    auto slack = c0.sum(sf.flat);
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<Elem> u = q.lift().basis().row(i);
      auto w0 = apply_vector(u);
      if (!w0) throw error("sharp element has no image");
      // solve w in sharp with w - w0 in flat + C 0
      Matrix<K> sys = sf.sharp.basis().vstack(slack.basis()).transpose();
      auto sol = sys.solve(*w0);
      if (!sol) throw error("no image inside sharp");
      std::vector<Elem> w(src_, field_.zero());
      for (std::size_t m = 0; m < sf.sharp.dim(); ++m) {
        auto bm = sf.sharp.basis().row(m);
        for (std::size_t j = 0; j < src_; ++j)
          w[j] = field_.add(w[j], field_.mul((*sol)[m], bm[j]));
      }
      auto col = q.coords(w);
      for (std::size_t j = 0; j < r; ++j) t(j, i) = col[j];
    }
    if (!t.inverse()) throw error("induced T is not invertible");
    return {q, t};
  }

  // Subspace U with sharp = flat (+) U and C|_U automorphic: take quotient
  // lifts u_i and correct them by flat elements z_i so that the pairs
  // (sum_j T_ji (u_j + z_j), u_i + z_i) land in the graph; one linear solve.
  Subspace<K> split() const {
    auto sf = sharp_flat();
    QuotientSpace<K> q(sf.sharp, sf.flat);
    std::size_t r = q.dim(), f = sf.flat.dim(), n = src_;
    if (r == 0) return Subspace<K>::zero(field_, n);
    auto tm = induced_t();
    Matrix<K> h = annihilator(graph_);
    std::size_t unknowns = r * f;
    Matrix<K> sys(field_, r * h.rows(), unknowns);
    std::vector<Elem> rhs(r * h.rows(), field_.zero());
    auto lift_row = [&](std::size_t i) { return q.lift().basis().row(i); };
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t hr = 0; hr < h.rows(); ++hr) {
        std::size_t row = i * h.rows() + hr;
        // fixed part: h . (sum_j T_ji u_j ; u_i)
        Elem fixed = field_.zero();
        for (std::size_t j = 0; j < r; ++j) {
          auto uj = lift_row(j);
          for (std::size_t k = 0; k < n; ++k)
            fixed = field_.add(fixed, field_.mul(field_.mul(tm.t(j, i), h(hr, k)), uj[k]));
        }
        auto ui = lift_row(i);
        for (std::size_t k = 0; k < n; ++k)
          fixed = field_.add(fixed, field_.mul(h(hr, n + k), ui[k]));
        rhs[row] = field_.neg(fixed);
        // unknown part: z_j contributes T_ji through the output slot,
        // z_i through the input slot
        for (std::size_t j = 0; j < r; ++j)
          for (std::size_t m = 0; m < f; ++m) {
            auto fb = sf.flat.basis().row(m);
            Elem c = field_.zero();
            for (std::size_t k = 0; k < n; ++k)
              c = field_.add(c, field_.mul(field_.mul(tm.t(j, i), h(hr, k)), fb[k]));
            if (j == i)
              for (std::size_t k = 0; k < n; ++k)
                c = field_.add(c, field_.mul(h(hr, n + k), fb[k]));
            sys(row, j * f + m) = c;
          }
      }
    }
    auto sol = sys.solve(rhs);
    if (!sol) throw error("splitting system has no solution");
    std::vector<std::vector<Elem>> w(r);
    for (std::size_t i = 0; i < r; ++i) {
      w[i] = lift_row(i);
      for (std::size_t m = 0; m < f; ++m) {
        auto fb = sf.flat.basis().row(m);
        for (std::size_t k = 0; k < n; ++k)
          w[i][k] = field_.add(w[i][k], field_.mul((*sol)[i * f + m], fb[k]));
      }
    }
    return Subspace<K>::span_vectors(field_, n, w);
  }

  // retraction onto a compatible subspace: linear r: V -> U (U coordinates)
  // with r restricted to U the identity and (r a, r b) in C|_U for every
  // (a, b) in C
  std::optional<Matrix<K>> find_retraction(const Subspace<K>& u) const {
    if (!is_square() || u.ambient() != src_) throw error("retraction: need a subspace of V");
    std::size_t d = u.dim(), n = src_;
    if (d == 0) return Matrix<K>(field_, 0, n);
    auto rel_u = restrict_to(u);
    Matrix<K> hu = annihilator(rel_u.graph());
    std::size_t unknowns = d * n;
    std::size_t nrows = d * d + graph_.dim() * hu.rows();
    Matrix<K> sys(field_, nrows, unknowns);
    std::vector<Elem> rhs(nrows, field_.zero());
    std::size_t row = 0;
    for (std::size_t b = 0; b < d; ++b) {
      auto ub = u.basis().row(b);
      for (std::size_t i = 0; i < d; ++i, ++row) {
        for (std::size_t k = 0; k < n; ++k) sys(row, i * n + k) = ub[k];
        rhs[row] = (i == b) ? field_.one() : field_.zero();
      }
    }
    for (std::size_t m = 0; m < graph_.dim(); ++m) {
      auto g = graph_.basis().row(m);
      for (std::size_t hr = 0; hr < hu.rows(); ++hr, ++row)
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t k = 0; k < n; ++k)
            sys(row, i * n + k) =
                field_.add(sys(row, i * n + k),
                           field_.add(field_.mul(hu(hr, i), g[k]),
                                      field_.mul(hu(hr, d + i), g[n + k])));
    }
    auto sol = sys.solve(rhs);
    if (!sol) return std::nullopt;
    Matrix<K> ret(field_, d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < n; ++k) ret(i, k) = (*sol)[i * n + k];
    return ret;
  }

 private:
  // stabilized iteration U, CU, C(CU), ...: increasing from 0, decreasing
  // from V, constant after at most dim V steps either way
  Subspace<K> chain(Subspace<K> x) const {
    for (std::size_t steps = 0; steps <= src_ + 1; ++steps) {
      auto nx = apply(x);
      if (nx == x) return x;
      x = std::move(nx);
    }
    throw error("relation chain failed to stabilize");
  }

  K field_;
  std::size_t tgt_, src_;
  Subspace<K> graph_;
};

}  // namespace strelkit
