#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "strelkit/canonical_forms.hpp"
#include "strelkit/relation.hpp"

namespace strelkit {

// Representation of the two-arrow quiver: X ⇉ Y with parallel maps p, q,
// both stored as y_dim x x_dim matrices acting on column vectors.
template <class K>
struct KroneckerModule {
  K field;
  std::size_t x_dim, y_dim;
  Matrix<K> p, q;

  KroneckerModule(K f, Matrix<K> pm, Matrix<K> qm)
      : field(f), x_dim(pm.cols()), y_dim(pm.rows()), p(std::move(pm)), q(std::move(qm)) {
    if (q.rows() != y_dim || q.cols() != x_dim) throw error("module maps have different shapes");
  }
};

// The canonical indecomposable families. Bases follow the scheme where
// the i-th X basis vector maps to the i-th Y vector under p (or to zero
// when that index is missing) and to the (i+1)-th under q.
template <class K>
KroneckerModule<K> preprojective_block(const K& f, std::size_t n) {
  Matrix<K> p(f, n + 1, n), q(f, n + 1, n);
  for (std::size_t j = 0; j < n; ++j) {
    p(j, j) = f.one();
    q(j + 1, j) = f.one();
  }
  return {f, p, q};
}

template <class K>
KroneckerModule<K> preinjective_block(const K& f, std::size_t n) {
  Matrix<K> p(f, n, n + 1), q(f, n, n + 1);
  for (std::size_t j = 1; j <= n; ++j) p(j - 1, j) = f.one();
  for (std::size_t j = 0; j < n; ++j) q(j, j) = f.one();
  return {f, p, q};
}

template <class K>
KroneckerModule<K> zero_regular_block(const K& f, std::size_t n) {
  if (n == 0) throw error("regular blocks start at 1");
  Matrix<K> q(f, n, n);
  for (std::size_t j = 0; j + 1 < n; ++j) q(j + 1, j) = f.one();
  return {f, Matrix<K>::identity(f, n), q};
}

template <class K>
KroneckerModule<K> inf_regular_block(const K& f, std::size_t n) {
  if (n == 0) throw error("regular blocks start at 1");
  Matrix<K> p(f, n, n);
  for (std::size_t j = 1; j < n; ++j) p(j - 1, j) = f.one();
  return {f, p, Matrix<K>::identity(f, n)};
}

template <class K>
KroneckerModule<K> automorphic_block(const K& f, const Matrix<K>& a) {
  if (a.rows() != a.cols() || !a.inverse()) throw error("automorphic block needs an invertible matrix");
  return {f, Matrix<K>::identity(f, a.rows()), a};
}

template <class K>
KroneckerModule<K> direct_sum(const KroneckerModule<K>& a, const KroneckerModule<K>& b) {
  const K& f = a.field;
  Matrix<K> p(f, a.y_dim + b.y_dim, a.x_dim + b.x_dim);
  Matrix<K> q(f, a.y_dim + b.y_dim, a.x_dim + b.x_dim);
  for (std::size_t i = 0; i < a.y_dim; ++i)
    for (std::size_t j = 0; j < a.x_dim; ++j) {
      p(i, j) = a.p(i, j);
      q(i, j) = a.q(i, j);
    }
  for (std::size_t i = 0; i < b.y_dim; ++i)
    for (std::size_t j = 0; j < b.x_dim; ++j) {
      p(a.y_dim + i, a.x_dim + j) = b.p(i, j);
      q(a.y_dim + i, a.x_dim + j) = b.q(i, j);
    }
  return {f, p, q};
}

// X = graph, Y = V, with p the input projection and q the output
// projection, so the graph of a map f becomes the module (id, f).
template <class K>
KroneckerModule<K> from_relation(const LinearRelation<K>& c) {
  if (!c.is_square()) throw error("only square relations become modules");
  const K& f = c.field();
  std::size_t n = c.target_dim(), x = c.graph().dim();
  Matrix<K> p(f, n, x), q(f, n, x);
  for (std::size_t j = 0; j < x; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      q(i, j) = c.graph().basis()(j, i);
      p(i, j) = c.graph().basis()(j, n + i);
    }
  return {f, p, q};
}

// Inverse direction; fails exactly when (p;q) is not injective, i.e. when
// the module has an I(0) summand.
template <class K>
std::optional<LinearRelation<K>> to_relation(const KroneckerModule<K>& m) {
  const K& f = m.field;
  Matrix<K> rows(f, m.x_dim, 2 * m.y_dim);
  for (std::size_t j = 0; j < m.x_dim; ++j)
    for (std::size_t i = 0; i < m.y_dim; ++i) {
      rows(j, i) = m.q(i, j);
      rows(j, m.y_dim + i) = m.p(i, j);
    }
  if (rows.rank() < m.x_dim) return std::nullopt;
  return LinearRelation<K>(f, m.y_dim, m.y_dim, Subspace<K>::span(rows));
}

// A morphism m -> n: theta on the X side, phi on the Y side, with
// phi p_m = p_n theta and phi q_m = q_n theta.
template <class K>
struct KroneckerHom {
  Matrix<K> theta, phi;
};

namespace detail {

// One constraint matrix serves Hom (its kernel) and Ext^1 (its cokernel,
// via the standard two-term projective resolution over the quiver algebra).
template <class K>
Matrix<K> hom_constraints(const KroneckerModule<K>& m, const KroneckerModule<K>& n) {
  const K& f = m.field;
  std::size_t tn = n.x_dim * m.x_dim, pn = n.y_dim * m.y_dim;
  std::size_t rows = 2 * n.y_dim * m.x_dim;
  Matrix<K> sys(f, rows, tn + pn);
  for (int arrow = 0; arrow < 2; ++arrow) {
    const Matrix<K>& am = arrow ? m.q : m.p;
    const Matrix<K>& an = arrow ? n.q : n.p;
    std::size_t base = arrow ? n.y_dim * m.x_dim : 0;
    for (std::size_t r = 0; r < n.y_dim; ++r)
      for (std::size_t c = 0; c < m.x_dim; ++c) {
        std::size_t row = base + r * m.x_dim + c;
        for (std::size_t k = 0; k < n.x_dim; ++k) sys(row, k * m.x_dim + c) = an(r, k);
        for (std::size_t j = 0; j < m.y_dim; ++j)
          sys(row, tn + r * m.y_dim + j) = f.neg(am(j, c));
      }
  }
  return sys;
}

}  // namespace detail

template <class K>
std::vector<KroneckerHom<K>> hom_space(const KroneckerModule<K>& m, const KroneckerModule<K>& n) {
  const K& f = m.field;
  auto ker = detail::hom_constraints(m, n).kernel();
  std::vector<KroneckerHom<K>> out;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    KroneckerHom<K> h{Matrix<K>(f, n.x_dim, m.x_dim), Matrix<K>(f, n.y_dim, m.y_dim)};
    for (std::size_t i = 0; i < n.x_dim; ++i)
      for (std::size_t j = 0; j < m.x_dim; ++j) h.theta(i, j) = ker(r, i * m.x_dim + j);
    std::size_t off = n.x_dim * m.x_dim;
    for (std::size_t i = 0; i < n.y_dim; ++i)
      for (std::size_t j = 0; j < m.y_dim; ++j) h.phi(i, j) = ker(r, off + i * m.y_dim + j);
    out.push_back(std::move(h));
  }
  return out;
}

template <class K>
std::size_t hom_dim(const KroneckerModule<K>& m, const KroneckerModule<K>& n) {
  return m.x_dim * n.x_dim + m.y_dim * n.y_dim - detail::hom_constraints(m, n).rank();
}

template <class K>
std::size_t ext_dim(const KroneckerModule<K>& m, const KroneckerModule<K>& n) {
  return 2 * m.x_dim * n.y_dim - detail::hom_constraints(m, n).rank();
}

inline long euler_form(std::size_t xm, std::size_t ym, std::size_t xn, std::size_t yn) {
  return static_cast<long>(xm * xn + ym * yn) - 2 * static_cast<long>(xm * yn);
}

// Ranks of lambda p + mu q; an isomorphism invariant fingerprint.
template <class K>
std::vector<std::size_t> rank_invariants(
    const KroneckerModule<K>& m,
    const std::vector<std::pair<typename K::Elem, typename K::Elem>>& samples) {
  std::vector<std::size_t> out;
  for (const auto& [lam, mu] : samples)
    out.push_back(m.p.scale(lam).add(m.q.scale(mu)).rank());
  return out;
}

template <class K>
std::vector<std::pair<typename K::Elem, typename K::Elem>> pencil_samples(const K& f,
                                                                          std::size_t count) {
  std::vector<std::pair<typename K::Elem, typename K::Elem>> out;
  if (count > 0) out.emplace_back(f.one(), f.zero());
  if (count > 1) out.emplace_back(f.zero(), f.one());
  for (long long j = 1; out.size() < count; ++j) out.emplace_back(f.one(), f.from_int(j));
  return out;
}

template <class K>
struct KroneckerBlock {
  enum Family { Preprojective, Preinjective, ZeroRegular, InfRegular, Automorphic };
  Family family;
  std::size_t n;  // P/I/Z/R index; dimension of the Aut part
  Matrix<K> aut;  // rational canonical form, Automorphic only

  KroneckerBlock(Family fam, std::size_t idx, Matrix<K> a) : family(fam), n(idx), aut(std::move(a)) {}
};

template <class K>
KroneckerModule<K> make_block(const K& f, const KroneckerBlock<K>& b) {
  using B = KroneckerBlock<K>;
  switch (b.family) {
    case B::Preprojective:
      return preprojective_block(f, b.n);
    case B::Preinjective:
      return preinjective_block(f, b.n);
    case B::ZeroRegular:
      return zero_regular_block(f, b.n);
    case B::InfRegular:
      return inf_regular_block(f, b.n);
    default:
      return automorphic_block(f, b.aut);
  }
}

// Blocks in canonical order plus the base change onto their direct sum:
// y_change p = p_sum x_change and likewise for q, both invertible.
template <class K>
struct KroneckerDecomposition {
  std::vector<KroneckerBlock<K>> blocks;
  Matrix<K> x_change, y_change;
};

namespace detail {

template <class K>
struct Summand {
  Matrix<K> bx, by;  // rows: basis of the X and Y parts in ambient coordinates
};

template <class K>
KroneckerModule<K> local_module(const KroneckerModule<K>& m, const Summand<K>& s) {
  const K& f = m.field;
  Matrix<K> byt = s.by.transpose();
  auto in_y_coords = [&](const Matrix<K>& arrow) {
    Matrix<K> out(f, s.by.rows(), s.bx.rows());
    for (std::size_t j = 0; j < s.bx.rows(); ++j) {
      auto img = arrow.mul_vec(s.bx.row(j));
      auto c = byt.solve(img);
      if (!c) throw error("summand is not closed under the module maps");
      for (std::size_t i = 0; i < s.by.rows(); ++i) out(i, j) = (*c)[i];
    }
    return out;
  };
  return {f, in_y_coords(m.p), in_y_coords(m.q)};
}

// Split a summand into indecomposables by primary decomposition of
// endomorphisms: try basis elements, their pairwise products and sums, and
// a deterministic batch of random combinations.
template <class K>
void split_summand(const KroneckerModule<K>& big, Summand<K> s, std::vector<Summand<K>>& out) {
  const K& f = big.field;
  if (s.bx.rows() + s.by.rows() == 0) return;
  auto loc = local_module(big, s);
  auto ends = hom_space(loc, loc);
  if (ends.size() <= 1) {
    out.push_back(std::move(s));
    return;
  }
  std::vector<KroneckerHom<K>> candidates = ends;
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = 0; j < ends.size(); ++j) {
      candidates.push_back({ends[i].theta.mul(ends[j].theta), ends[i].phi.mul(ends[j].phi)});
      if (i < j) candidates.push_back({ends[i].theta.add(ends[j].theta), ends[i].phi.add(ends[j].phi)});
    }
  std::mt19937_64 rng(0x5eed0001ULL);
  for (int t = 0; t < 40; ++t) {
    KroneckerHom<K> h{Matrix<K>(f, loc.x_dim, loc.x_dim), Matrix<K>(f, loc.y_dim, loc.y_dim)};
    std::uniform_int_distribution<int> d(-3, 3);
    for (const auto& e : ends) {
      auto c = f.from_int(d(rng));
      h.theta = h.theta.add(e.theta.scale(c));
      h.phi = h.phi.add(e.phi.scale(c));
    }
    candidates.push_back(std::move(h));
  }
  for (const auto& cand : candidates) {
    Poly<K> m = poly_lcm(f, minimal_polynomial(f, cand.theta), minimal_polynomial(f, cand.phi));
    auto parts = primary_parts(f, m);
    if (parts.size() < 2) continue;
    Poly<K> first = parts[0];
    Poly<K> rest = poly_const(f, f.one());
    for (std::size_t i = 1; i < parts.size(); ++i) rest = poly_mul(f, rest, parts[i]);
    auto cut = [&](const Poly<K>& g) {
      Summand<K> part{poly_eval_matrix(f, g, cand.theta).kernel().mul(s.bx),
                      poly_eval_matrix(f, g, cand.phi).kernel().mul(s.by)};
      return part;
    };
    Summand<K> a = cut(first), b = cut(rest);
    if (a.bx.rows() + a.by.rows() == 0 || b.bx.rows() + b.by.rows() == 0) continue;
    split_summand(big, std::move(a), out);
    split_summand(big, std::move(b), out);
    return;
  }
  out.push_back(std::move(s));
}

template <class K>
struct PendingBlock {
  KroneckerBlock<K> spec;
  Matrix<K> xb, yb;  // rows: preimages of the canonical basis, ambient coords
};

// invertible element of Hom(block, loc), if any
template <class K>
std::optional<KroneckerHom<K>> invertible_hom(const KroneckerModule<K>& can,
                                              const KroneckerModule<K>& loc) {
  const K& f = can.field;
  auto homs = hom_space(can, loc);
  auto good = [](const KroneckerHom<K>& h) {
    bool tx = h.theta.rows() == 0 || h.theta.inverse().has_value();
    bool ty = h.phi.rows() == 0 || h.phi.inverse().has_value();
    return tx && ty;
  };
  for (const auto& h : homs)
    if (good(h)) return h;
  std::mt19937_64 rng(0x5eed0002ULL);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 60 && !homs.empty(); ++t) {
    KroneckerHom<K> h{Matrix<K>(f, loc.x_dim, can.x_dim), Matrix<K>(f, loc.y_dim, can.y_dim)};
    for (const auto& e : homs) {
      auto c = f.from_int(d(rng));
      h.theta = h.theta.add(e.theta.scale(c));
      h.phi = h.phi.add(e.phi.scale(c));
    }
    if (good(h)) return h;
  }
  return std::nullopt;
}

}  // namespace detail

template <class K>
KroneckerDecomposition<K> decompose(const KroneckerModule<K>& m) {
  using B = KroneckerBlock<K>;
  const K& f = m.field;
  std::vector<detail::Summand<K>> parts;
  detail::split_summand(m, {Matrix<K>::identity(f, m.x_dim), Matrix<K>::identity(f, m.y_dim)},
                        parts);

  std::vector<detail::PendingBlock<K>> blocks;
  struct AutPiece {
    Matrix<K> a, xb, yb;
  };
  std::vector<AutPiece> aut_pieces;

  std::vector<detail::Summand<K>> queue(parts.begin(), parts.end());
  while (!queue.empty()) {
    auto s = std::move(queue.back());
    queue.pop_back();
    std::size_t dx = s.bx.rows(), dy = s.by.rows();
    if (dx + dy == 0) continue;
    auto loc = detail::local_module(m, s);

    if (dy == dx + 1 || dx == dy + 1) {
      bool pre_p = dy == dx + 1;
      std::size_t n = pre_p ? dx : dy;
      auto can = pre_p ? preprojective_block(f, n) : preinjective_block(f, n);
      auto h = detail::invertible_hom(can, loc);
      if (!h)
        throw error("summand is not the expected preprojective or preinjective block");
      blocks.push_back({B(pre_p ? B::Preprojective : B::Preinjective, n, Matrix<K>(f, 0, 0)),
                        h->theta.transpose().mul(s.bx), h->phi.transpose().mul(s.by)});
      continue;
    }
    if (dx != dy) throw error("summand dimensions do not match any block family");

    auto pinv = loc.p.inverse();
    auto qinv = loc.q.inverse();
    if (!pinv && !qinv)
      throw error("regular summand with both maps singular; splitting failed");
    // orient so the invertible map trivializes, leaving a single matrix a
    bool zside = pinv.has_value();
    Matrix<K> a = zside ? loc.q.mul(*pinv) : loc.p.mul(*qinv);
    Matrix<K> apow = Matrix<K>::identity(f, dx);
    for (std::size_t i = 0; i < dx; ++i) apow = apow.mul(a);
    auto ker = apow.kernel();
    if (ker.rows() > 0 && ker.rows() < dx) {
      // Fitting split: nilpotent part from the kernel, invertible part from
      // the image; push both back through classification
      Matrix<K> img = apow.transpose();
      auto im_rows = Subspace<K>::span(img).basis();
      auto carve = [&](const Matrix<K>& wrows) {
        Matrix<K> xrows = zside ? wrows.mul(pinv->transpose()) : wrows.mul(qinv->transpose());
        return detail::Summand<K>{xrows.mul(s.bx), wrows.mul(s.by)};
      };
      queue.push_back(carve(ker));
      queue.push_back(carve(im_rows));
      continue;
    }
    if (ker.rows() == dx || dx == 0) {
      // nilpotent: one Z or R block per chain
      for (const auto& chain : nilpotent_chains(f, a)) {
        Matrix<K> c(f, chain.size(), dx);
        for (std::size_t i = 0; i < chain.size(); ++i) {
          // reversed order realizes the up-shift on the p side
          const auto& v = zside ? chain[i] : chain[chain.size() - 1 - i];
          c.set_row(i, v);
        }
        Matrix<K> xrows = zside ? c.mul(pinv->transpose()) : c.mul(qinv->transpose());
        blocks.push_back({B(zside ? B::ZeroRegular : B::InfRegular, chain.size(), Matrix<K>(f, 0, 0)),
                          xrows.mul(s.bx), c.mul(s.by)});
      }
      continue;
    }
    // invertible: both maps are isomorphisms, so the p side trivializes;
    // stash for the merged automorphic part
    if (!zside) throw error("automorphic summand with singular input map");
    aut_pieces.push_back({a, pinv->transpose().mul(s.bx), s.by});
  }

  if (!aut_pieces.empty()) {
    std::size_t total = 0;
    for (const auto& piece : aut_pieces) total += piece.a.rows();
    Matrix<K> big(f, total, total), xall(f, total, m.x_dim), yall(f, total, m.y_dim);
    std::size_t off = 0;
    for (const auto& piece : aut_pieces) {
      std::size_t d = piece.a.rows();
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) big(off + i, off + j) = piece.a(i, j);
        xall.set_row(off + i, piece.xb.row(i));
        yall.set_row(off + i, piece.yb.row(i));
      }
      off += d;
    }
    auto rb = frobenius_form(f, big);
    Matrix<K> tt = rb.transform.transpose();
    blocks.push_back({B(B::Automorphic, total, rb.form), tt.mul(xall), tt.mul(yall)});
  }

  std::stable_sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
    if (a.spec.family != b.spec.family) return a.spec.family < b.spec.family;
    return a.spec.n < b.spec.n;
  });

  KroneckerDecomposition<K> out{{}, Matrix<K>(f, m.x_dim, m.x_dim), Matrix<K>(f, m.y_dim, m.y_dim)};
  Matrix<K> xback(f, 0, m.x_dim), yback(f, 0, m.y_dim);
  for (auto& b : blocks) {
    out.blocks.push_back(b.spec);
    xback = xback.vstack(b.xb);
    yback = yback.vstack(b.yb);
  }
  auto xinv = xback.transpose().inverse(), yinv = yback.transpose().inverse();
  if (!xinv || !yinv) throw error("decomposition base change is singular");
  out.x_change = *xinv;
  out.y_change = *yinv;

  // verify the explicit isomorphism before returning it
  KroneckerModule<K> sum{f, Matrix<K>(f, 0, 0), Matrix<K>(f, 0, 0)};
  bool started = false;
  for (const auto& b : out.blocks) {
    auto blk = make_block(f, b);
    sum = started ? direct_sum(sum, blk) : blk;
    started = true;
  }
  if (!started) sum = KroneckerModule<K>{f, Matrix<K>(f, m.y_dim, m.x_dim), Matrix<K>(f, m.y_dim, m.x_dim)};
  if (!(sum.p.mul(out.x_change) == out.y_change.mul(m.p)) ||
      !(sum.q.mul(out.x_change) == out.y_change.mul(m.q)))
    throw error("decomposition does not reassemble to the input");
  return out;
}

}  // namespace strelkit
