#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "strelkit/relation.hpp"
#include "strelkit/representation.hpp"
#include "strelkit/word.hpp"

namespace strelkit {

// An arrow x: u -> v acts on a representation by a matrix e_uM -> e_vM. The
// letter x is the graph of that matrix as a linear relation, and the letter
// x^-1 is the inverse relation.
template <class K>
LinearRelation<K> letter_relation(Letter l, const Representation<K>& m) {
  if (l.arrow >= m.action.size()) throw error("letter refers to an unknown arrow");
  auto direct = LinearRelation<K>::from_matrix(m.action[l.arrow]);
  return l.inverse ? direct.inverse_rel() : direct;
}

// The relation of a finite word C, from e_{tail}M to e_{head}M: letters
// compose so that C_1 acts last. A trivial word gives the identity on e_vM.
template <class K>
LinearRelation<K> word_relation(const Word& c, const Representation<K>& m) {
  const auto& pres = *m.pres;
  if (c.is_trivial()) {
    if (c.trivial_vertex() >= m.vdim.size()) throw error("trivial word at an unknown vertex");
    return LinearRelation<K>::identity(m.field, m.vdim[c.trivial_vertex()]);
  }
  if (!c.is_finite()) throw error("word relations need a finite word");
  if (!is_valid_word(pres, c)) throw error("not a word over this presentation");
  auto rel = letter_relation(c.letter(1), m);
  for (long i = 2; i <= (long)c.length(); ++i)
    rel = rel.compose(letter_relation(c.letter(i), m));
  return rel;
}

template <class K>
struct FiltrationPair {
  Subspace<K> plus, minus;
};

// The two filtration subspaces C^-(M) <= C^+(M) <= e_vM of a one-sided word.
//
// For finite C, plus is C x^-1 0 when some arrow x extends C to the word
// C x^-1 and C M otherwise; minus is C y M when some arrow y extends C to
// C y and C 0 otherwise. A word has at most one extension in each direction.
//
// For a one-sided infinite word, plus is the intersection of the truncation
// images C_{<=n} M and minus the union of the truncation kernels C_{<=n} 0.
// Both chains are monotone, so it suffices to iterate the relation of the
// repeating block to a fixed point and push the result through the prefix.
template <class K>
FiltrationPair<K> filtration(const Word& c, const Representation<K>& m) {
  const auto& pres = *m.pres;
  const K& f = m.field;
  if (!c.has_head()) throw error("filtrations need a word with a head");
  if (c.is_trivial() || c.is_finite()) {
    std::optional<Letter> up, down;
    for (Letter l : extensions_of(pres, c)) {
      auto& slot = l.inverse ? up : down;
      if (slot) throw error("two extensions in the same direction; not a string algebra?");
      slot = l;
    }
    auto rel = word_relation(c, m);
    auto one_side = [&](const std::optional<Letter>& ext, bool from_zero) {
      if (ext) {
        auto longer = rel.compose(letter_relation(*ext, m));
        return longer.apply(from_zero ? Subspace<K>::zero(f, longer.source_dim())
                                      : Subspace<K>::full(f, longer.source_dim()));
      }
      return rel.apply(from_zero ? Subspace<K>::full(f, rel.source_dim())
                                 : Subspace<K>::zero(f, rel.source_dim()));
    };
    FiltrationPair<K> out{one_side(up, true), one_side(down, false)};
    if (!out.plus.contains(out.minus)) throw error("filtration is not nested");
    return out;
  }
  const auto& win = c.window();
  long w = (long)win.size();
  std::size_t u = c.vertex_at(w, pres);
  auto block_rel = word_relation(Word::finite(c.right_block()), m);
  if (block_rel.source_dim() != m.vdim[u] || block_rel.target_dim() != m.vdim[u])
    throw error("repeating block does not return to its vertex");
  auto fixed_point = [&](Subspace<K> x) {
    for (std::size_t steps = 0; steps <= m.vdim[u] + 1; ++steps) {
      auto nx = block_rel.apply(x);
      if (nx == x) return x;
      x = std::move(nx);
    }
    throw error("filtration chain failed to stabilize");
  };
  auto vplus = fixed_point(Subspace<K>::full(f, m.vdim[u]));
  auto vminus = fixed_point(Subspace<K>::zero(f, m.vdim[u]));
  if (w > 0) {
    auto pre = word_relation(Word::finite(win), m);
    vplus = pre.apply(vplus);
    vminus = pre.apply(vminus);
  }
  if (!vplus.contains(vminus)) throw error("filtration is not nested");
  return {std::move(vplus), std::move(vminus)};
}

template <class K>
struct RefinedFunctorValue {
  Subspace<K> plus, minus;
  std::size_t quotient_dim = 0;
  // present exactly when B^-1 D is periodic; the invertible action induced on
  // plus/minus by the repeating block of D
  std::optional<Matrix<K>> t_matrix;
};

namespace detail {

inline std::vector<Letter> reversed_inverse(const std::vector<Letter>& ls) {
  std::vector<Letter> out(ls.rbegin(), ls.rend());
  for (auto& l : out) l = inverse(l);
  return out;
}

// When B and D are both purely periodic with mirror-image blocks, B^-1 D is
// the two-sided periodic word ...EEE... for E the period of D read from
// position 1. Returns E in that case.
inline std::optional<Word> periodic_partner(const Word& b, const Word& d) {
  if (b.shape() != Word::Shape::RightInfinite || d.shape() != Word::Shape::RightInfinite)
    return std::nullopt;
  if (!b.window().empty() || !d.window().empty()) return std::nullopt;
  if (b.right_block() != reversed_inverse(d.right_block())) return std::nullopt;
  return Word::finite(d.right_block());
}

inline void check_functor_pair(const StringPresentation& pres, const Word& b, const Word& d) {
  if (!b.has_head() || !d.has_head()) throw error("refined functors need one-sided words");
  if (b.head_vertex(pres) != d.head_vertex(pres))
    throw error("refined functor words have different heads");
  if (b.sign(pres) + d.sign(pres) != 0)
    throw error("refined functor words must have opposite signs");
}

}  // namespace detail

// The refined quotient attached to a pair of one-sided words with the same
// head and opposite signs:
//   plus  = B+ n D+
//   minus = (B+ n D-) + (B- n D+)
// When B^-1 D is periodic both subspaces come out of the sharp/flat calculus
// of the relation of the repeating word E, which also induces an invertible
// action on the quotient, reported as t_matrix.
template <class K>
RefinedFunctorValue<K> refined_functor(const Word& b, const Word& d,
                                       const Representation<K>& m) {
  detail::check_functor_pair(*m.pres, b, d);
  RefinedFunctorValue<K> out{Subspace<K>::zero(m.field, 0), Subspace<K>::zero(m.field, 0), 0,
                             std::nullopt};
  if (auto e = detail::periodic_partner(b, d)) {
    auto rel = word_relation(*e, m);
    auto sf = rel.sharp_flat();
    out.plus = sf.sharp;
    out.minus = sf.flat;
    out.t_matrix = rel.induced_t().t;
  } else {
    auto fb = filtration(b, m);
    auto fd = filtration(d, m);
    out.plus = fb.plus.intersect(fd.plus);
    out.minus = fb.plus.intersect(fd.minus).sum(fb.minus.intersect(fd.plus));
  }
  if (!out.plus.contains(out.minus)) throw error("refined quotient is not nested");
  out.quotient_dim = out.plus.dim() - out.minus.dim();
  return out;
}

// The sum form of the same quotient:
//   plus  = B- + (B+ n D+)
//   minus = B- + (B+ n D-)
// The second isomorphism theorem, applied with D- <= D+ and B- <= B+, gives a
// natural isomorphism with the intersection form above, so the two quotient
// dimensions always agree.
template <class K>
RefinedFunctorValue<K> g_functor(const Word& b, const Word& d, const Representation<K>& m) {
  detail::check_functor_pair(*m.pres, b, d);
  auto fb = filtration(b, m);
  auto fd = filtration(d, m);
  RefinedFunctorValue<K> out{fb.minus.sum(fb.plus.intersect(fd.plus)),
                             fb.minus.sum(fb.plus.intersect(fd.minus)), 0, std::nullopt};
  if (!out.plus.contains(out.minus)) throw error("refined quotient is not nested");
  out.quotient_dim = out.plus.dim() - out.minus.dim();
  return out;
}

// The map a module morphism induces between the refined quotients, as a
// matrix in the lifted quotient bases. The filtrations are functorial, so the
// vertex component of the morphism carries plus into plus and minus into
// minus; anything else means f is not a morphism.
template <class K>
Matrix<K> functor_on_morphism(const Word& b, const Word& d, const Representation<K>& m,
                              const Representation<K>& n, const RepHom<K>& f) {
  if (!is_morphism(m, n, f)) throw error("not a module morphism");
  detail::check_functor_pair(*m.pres, b, d);
  auto fm = refined_functor(b, d, m);
  auto fn = refined_functor(b, d, n);
  std::size_t v = b.head_vertex(*m.pres);
  QuotientSpace<K> qm(fm.plus, fm.minus), qn(fn.plus, fn.minus);
  Matrix<K> out(m.field, qn.dim(), qm.dim());
  for (std::size_t j = 0; j < qm.dim(); ++j) {
    auto img = f.at[v].mul_vec(qm.lift().basis_vector(j));
    if (!fn.plus.contains(img)) throw error("image escapes the filtration");
    auto col = qn.coords(img);
    for (std::size_t i = 0; i < qn.dim(); ++i) out(i, j) = col[i];
  }
  return out;
}

}  // namespace strelkit
