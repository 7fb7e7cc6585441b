#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "strelkit/field.hpp"

namespace strelkit {

// Dense matrix over a field descriptor K. Rows/cols may be zero; all the
// degenerate shapes occur naturally (empty summands, zero spaces).
template <class K>
class Matrix {
 public:
  using Elem = typename K::Elem;

  Matrix(K field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), a_(rows * cols, field.zero()) {}

  static Matrix identity(K field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_rows(K field, std::size_t cols,
                          const std::vector<std::vector<Elem>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw error("ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  const K& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Elem> row(std::size_t i) const {
    return std::vector<Elem>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }

  void set_row(std::size_t i, const std::vector<Elem>& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!field_.eq(a_[i], o.a_[i])) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  Matrix add(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.add(a_[i], o.a_[i]);
    return r;
  }

  Matrix sub(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.sub(a_[i], o.a_[i]);
    return r;
  }

  Matrix scale(const Elem& c) const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.mul(a_[i], c);
    return r;
  }

  Matrix neg() const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.neg(a_[i]);
    return r;
  }

  Matrix mul(const Matrix& o) const {
    if (cols_ != o.rows_ || field_ != o.field_) throw error("matrix product shape mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Elem& aik = (*this)(i, k);
        if (field_.is_zero(aik)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = field_.add(r(i, j), field_.mul(aik, o(k, j)));
      }
    return r;
  }

  std::vector<Elem> mul_vec(const std::vector<Elem>& v) const {
    if (v.size() != cols_) throw error("matrix-vector shape mismatch");
    std::vector<Elem> r(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r[i] = field_.add(r[i], field_.mul((*this)(i, j), v[j]));
    return r;
  }

  Matrix transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix hstack(const Matrix& o) const {
    if (rows_ != o.rows_ || field_ != o.field_) throw error("hstack shape mismatch");
    Matrix r(field_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
  }

  Matrix vstack(const Matrix& o) const {
    if (cols_ != o.cols_ || field_ != o.field_) throw error("vstack shape mismatch");
    Matrix r(field_, rows_ + o.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = o(i, j);
    return r;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
    if (r0 + h > rows_ || c0 + w > cols_) throw error("block out of range");
    Matrix r(field_, h, w);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < w; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }

  struct Echelon {
    Matrix mat;
    std::vector<std::size_t> pivots;  // pivot column per nonzero row
  };

  // Reduced row echelon form (unique): leading ones, zeros above and below.
  Echelon rref() const {
    Matrix m = *this;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t sel = r;
      while (sel < rows_ && field_.is_zero(m(sel, c))) ++sel;
      if (sel == rows_) continue;
      if (sel != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap(m(sel, j), m(r, j));
      Elem piv_inv = field_.inv(m(r, c));
      for (std::size_t j = c; j < cols_; ++j) m(r, j) = field_.mul(m(r, j), piv_inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || field_.is_zero(m(i, c))) continue;
        Elem f = m(i, c);
        for (std::size_t j = c; j < cols_; ++j)
          m(i, j) = field_.sub(m(i, j), field_.mul(f, m(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return {m, pivots};
  }

  std::size_t rank() const { return rref().pivots.size(); }

  // Rows span {x : A x = 0}.
  Matrix kernel() const {
    Echelon e = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    Matrix ker(field_, cols_ - e.pivots.size(), cols_);
    std::size_t kr = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (is_pivot[j]) continue;
      ker(kr, j) = field_.one();
      for (std::size_t i = 0; i < e.pivots.size(); ++i)
        ker(kr, e.pivots[i]) = field_.neg(e.mat(i, j));
      ++kr;
    }
    return ker;
  }

  // One solution of A x = b, if consistent (free variables set to zero).
  std::optional<std::vector<Elem>> solve(const std::vector<Elem>& b) const {
    if (b.size() != rows_) throw error("solve shape mismatch");
    Matrix aug(field_, rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    Echelon e = aug.rref();
    std::vector<Elem> x(cols_, field_.zero());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      if (e.pivots[i] == cols_) return std::nullopt;  // row (0 ... 0 | 1)
      x[e.pivots[i]] = e.mat(i, cols_);
    }
    return x;
  }

  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) throw error("inverse of non-square matrix");
    Echelon e = hstack(identity(field_, rows_)).rref();
    if (e.pivots.size() != rows_) return std::nullopt;
    for (std::size_t i = 0; i < rows_; ++i)
      if (e.pivots[i] != i) return std::nullopt;
    return e.mat.block(0, rows_, rows_, rows_);
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ' ';
        out += field_.str((*this)(i, j));
      }
      out += '\n';
    }
    return out;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
      throw error("matrix shape mismatch");
  }

  K field_;
  std::size_t rows_, cols_;
  std::vector<Elem> a_;
};

template <class K>
std::vector<typename K::Elem> vec_add(const K& f, const std::vector<typename K::Elem>& a,
                                      const std::vector<typename K::Elem>& b) {
  if (a.size() != b.size()) throw error("vector shape mismatch");
  std::vector<typename K::Elem> r(a.size(), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

template <class K>
std::vector<typename K::Elem> vec_sub(const K& f, const std::vector<typename K::Elem>& a,
                                      const std::vector<typename K::Elem>& b) {
  if (a.size() != b.size()) throw error("vector shape mismatch");
  std::vector<typename K::Elem> r(a.size(), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

template <class K>
std::vector<typename K::Elem> vec_scale(const K& f, const typename K::Elem& c,
                                        const std::vector<typename K::Elem>& a) {
  std::vector<typename K::Elem> r(a.size(), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
  return r;
}

template <class K>
bool vec_is_zero(const K& f, const std::vector<typename K::Elem>& a) {
  for (const auto& x : a)
    if (!f.is_zero(x)) return false;
  return true;
}

}  // namespace strelkit
