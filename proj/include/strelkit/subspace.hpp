#pragma once

#include <optional>
#include <vector>

#include "strelkit/matrix.hpp"

namespace strelkit {

// Subspace of K^n held as the unique reduced-row-echelon basis, so structural
// equality is equality of subspaces.
template <class K>
class Subspace {
 public:
  using Elem = typename K::Elem;

  static Subspace zero(K field, std::size_t ambient) {
    return Subspace(Matrix<K>(field, 0, ambient));
  }

  static Subspace full(K field, std::size_t ambient) {
    return Subspace(Matrix<K>::identity(field, ambient));
  }

  // Row space of an arbitrary generating matrix.
  static Subspace span(const Matrix<K>& rows) {
    auto e = rows.rref();
    return Subspace(e.mat.block(0, 0, e.pivots.size(), rows.cols()));
  }

  static Subspace span_vectors(K field, std::size_t ambient,
                               const std::vector<std::vector<Elem>>& vs) {
    return span(Matrix<K>::from_rows(field, ambient, vs));
  }

  const K& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<K>& basis() const { return basis_; }
  std::vector<Elem> basis_vector(std::size_t i) const { return basis_.row(i); }

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  bool contains(const std::vector<Elem>& v) const { return coords(v).has_value(); }

  bool contains(const Subspace& o) const {
    if (o.ambient() != ambient()) throw error("ambient mismatch");
    for (std::size_t i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_vector(i))) return false;
    return true;
  }

  // Coefficients of v in the canonical basis, if v lies in the subspace.
  std::optional<std::vector<Elem>> coords(const std::vector<Elem>& v) const {
    if (v.size() != ambient()) throw error("ambient mismatch");
    return basis_.transpose().solve(v);
  }

  Subspace sum(const Subspace& o) const {
    if (o.ambient() != ambient()) throw error("ambient mismatch");
    return span(basis_.vstack(o.basis_));
  }

  // Zassenhaus: row reduce [B_U B_U; B_W 0]; rows with zero left half carry
  // the intersection in their right half.
  Subspace intersect(const Subspace& o) const {
    if (o.ambient() != ambient()) throw error("ambient mismatch");
    std::size_t n = ambient();
    const K& f = field();
    Matrix<K> top = basis_.hstack(basis_);
    Matrix<K> bot = o.basis_.hstack(Matrix<K>(f, o.dim(), n));
    auto e = top.vstack(bot).rref();
    std::vector<std::vector<Elem>> rows;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      if (e.pivots[i] >= n) {
        std::vector<Elem> v(n, f.zero());
        for (std::size_t j = 0; j < n; ++j) v[j] = e.mat(i, n + j);
        rows.push_back(v);
      }
    return span_vectors(f, n, rows);
  }

  // Deterministic complement of this inside `inside`: walk the canonical
  // basis of `inside` and keep the rows that grow the span.
  Subspace complement_in(const Subspace& inside) const {
    if (!inside.contains(*this)) throw error("complement: subspace not contained");
    Matrix<K> acc = basis_;
    std::vector<std::vector<Elem>> picked;
    std::size_t r = acc.rank();
    for (std::size_t i = 0; i < inside.dim(); ++i) {
      Matrix<K> cand(field(), 1, ambient());
      cand.set_row(0, inside.basis_vector(i));
      Matrix<K> next = acc.vstack(cand);
      if (next.rank() > r) {
        acc = next;
        ++r;
        picked.push_back(inside.basis_vector(i));
      }
    }
    return span_vectors(field(), ambient(), picked);
  }

  Subspace complement() const { return complement_in(full(field(), ambient())); }

  // {f u : u in this}; f maps column vectors of the ambient space.
  Subspace image_under(const Matrix<K>& f) const {
    if (f.cols() != ambient()) throw error("image: map shape mismatch");
    return span(basis_.mul(f.transpose()));
  }

  // {v : f v in this}.
  Subspace preimage_under(const Matrix<K>& f) const {
    if (f.rows() != ambient()) throw error("preimage: map shape mismatch");
    // f v = B^T y  <=>  [f | -B^T] [v; y] = 0
    Matrix<K> m = f.hstack(basis_.transpose().neg());
    Matrix<K> ker = m.kernel();
    std::vector<std::vector<Elem>> rows;
    for (std::size_t i = 0; i < ker.rows(); ++i) {
      std::vector<Elem> full_row = ker.row(i);
      rows.emplace_back(full_row.begin(), full_row.begin() + f.cols());
    }
    return span_vectors(field(), f.cols(), rows);
  }

  // Image under the coordinate projection onto [start, start+len).
  Subspace coord_project(std::size_t start, std::size_t len) const {
    if (start + len > ambient()) throw error("projection out of range");
    std::vector<std::vector<Elem>> rows;
    for (std::size_t i = 0; i < dim(); ++i) {
      std::vector<Elem> v = basis_vector(i);
      rows.emplace_back(v.begin() + start, v.begin() + start + len);
    }
    return span_vectors(field(), len, rows);
  }

  // Embedding into K^total at coordinate offset.
  Subspace coord_embed(std::size_t total, std::size_t offset) const {
    if (offset + ambient() > total) throw error("embedding out of range");
    std::vector<std::vector<Elem>> rows;
    for (std::size_t i = 0; i < dim(); ++i) {
      std::vector<Elem> v(total, field().zero());
      std::vector<Elem> b = basis_vector(i);
      for (std::size_t j = 0; j < b.size(); ++j) v[offset + j] = b[j];
      rows.push_back(v);
    }
    return span_vectors(field(), total, rows);
  }

 private:
  explicit Subspace(Matrix<K> canonical_basis) : basis_(std::move(canonical_basis)) {}
  Matrix<K> basis_;
};

// U x W inside K^{a+b}.
template <class K>
Subspace<K> product_space(const Subspace<K>& u, const Subspace<K>& w) {
  std::size_t total = u.ambient() + w.ambient();
  return u.coord_embed(total, 0).sum(w.coord_embed(total, u.ambient()));
}

// Rows annihilating the subspace: S = {x : H x = 0}.
template <class K>
Matrix<K> annihilator(const Subspace<K>& s) {
  return s.basis().kernel();
}

// Coordinates on total/sub with an explicit lifted complement basis.
template <class K>
class QuotientSpace {
 public:
  using Elem = typename K::Elem;

  QuotientSpace(Subspace<K> total, Subspace<K> sub)
      : total_(std::move(total)), sub_(std::move(sub)), lift_(sub_.complement_in(total_)) {}

  const Subspace<K>& total() const { return total_; }
  const Subspace<K>& sub() const { return sub_; }
  const Subspace<K>& lift() const { return lift_; }
  std::size_t dim() const { return lift_.dim(); }

  // v in total: coefficients of v modulo sub in the lifted basis.
  std::vector<Elem> coords(const std::vector<Elem>& v) const {
    const K& f = total_.field();
    // v = lift^T a + sub^T b
    Matrix<K> cols = lift_.basis().vstack(sub_.basis()).transpose();
    auto sol = cols.solve(v);
    if (!sol) throw error("quotient coords: vector outside total space");
    return std::vector<Elem>(sol->begin(), sol->begin() + lift_.dim());
  }

  std::vector<Elem> lift_vector(const std::vector<Elem>& coeffs) const {
    if (coeffs.size() != dim()) throw error("quotient lift shape mismatch");
    const K& f = total_.field();
    std::vector<Elem> v(total_.ambient(), f.zero());
    for (std::size_t i = 0; i < dim(); ++i)
      v = vec_add(f, v, vec_scale(f, coeffs[i], lift_.basis_vector(i)));
    return v;
  }

 private:
  Subspace<K> total_, sub_, lift_;
};

}  // namespace strelkit
