#include "strelkit/filtration.hpp"

#include <map>
#include <tuple>

#include <catch2/catch_amalgamated.hpp>

#include "strelkit/canonical_forms.hpp"
#include "test_support.hpp"

using namespace strelkit;
using namespace strelkit::testing;

namespace {

StringPresentation load(const std::string& name) {
  return StringPresentation::parse(read_file(fixture_path(name)));
}

// brute-force enumeration; prefixes of valid words are valid, so extending
// letter by letter loses nothing
std::vector<Word> valid_words(const StringPresentation& pres, std::size_t maxlen) {
  std::vector<Letter> letters;
  for (std::size_t a = 0; a < pres.num_arrows(); ++a) {
    letters.push_back({static_cast<std::uint32_t>(a), false});
    letters.push_back({static_cast<std::uint32_t>(a), true});
  }
  std::vector<Word> out;
  for (std::size_t v = 0; v < pres.num_vertices(); ++v)
    for (int eps : {1, -1}) out.push_back(Word::trivial(v, eps));
  std::vector<std::vector<Letter>> layer{{}};
  for (std::size_t len = 1; len <= maxlen; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& seq : layer)
      for (Letter l : letters) {
        auto ext = seq;
        ext.push_back(l);
        if (is_valid_word(pres, Word::finite(ext))) next.push_back(std::move(ext));
      }
    for (const auto& seq : next) out.push_back(Word::finite(seq));
    layer = std::move(next);
  }
  return out;
}

template <class K>
std::size_t matching_positions(const StringPresentation& pres, const Word& c, const Word& b,
                               const Word& d, const K&) {
  long n = c.is_trivial() ? 0 : (long)c.length();
  std::size_t count = 0;
  for (long i = 0; i <= n; ++i)
    if (side_word(pres, c, i, 1) == b && side_word(pres, c, i, -1) == d) ++count;
  return count;
}

}  // namespace

TEST_CASE("word relations compose the letter actions") {
  auto pres = load("lambda2.pres");
  RationalField f;
  auto x = *pres.arrow_id("x");
  auto y = *pres.arrow_id("y");

  auto mx = string_module(f, pres, parse_word(pres, "x"));
  auto rx = word_relation(parse_word(pres, "x"), mx);
  CHECK(rx == LinearRelation<RationalField>::from_matrix(mx.action[x]));
  CHECK(rx.graph().dim() == 2);

  CHECK(word_relation(Word::trivial(0, 1), mx) ==
        LinearRelation<RationalField>::identity(f, 2));
  CHECK(word_relation(Word::trivial(0, -1), mx) ==
        LinearRelation<RationalField>::identity(f, 2));

  auto mxy = string_module(f, pres, parse_word(pres, "x y"));
  auto rxy = word_relation(parse_word(pres, "x y"), mxy);
  CHECK(rxy == LinearRelation<RationalField>::from_matrix(mxy.action[x].mul(mxy.action[y])));
  CHECK(rxy.contains_pair({f.one(), f.zero(), f.zero()}, {f.zero(), f.zero(), f.one()}));

  // an inverse letter turns the relation around
  auto rxinv = word_relation(parse_word(pres, "x-"), mx);
  CHECK(rxinv == rx.inverse_rel());

  CHECK_THROWS(word_relation(parse_word(pres, "(x y-)^inf"), mx));
  Letter lx{static_cast<std::uint32_t>(x), false};
  CHECK_THROWS(word_relation(Word::finite({lx, lx}), mx));
}

TEST_CASE("filtrations of finite and trivial words") {
  auto pres = load("lambda2.pres");
  RationalField f;
  auto mx = string_module(f, pres, parse_word(pres, "x"));
  auto b0 = Subspace<RationalField>::span_vectors(f, 2, {{f.one(), f.zero()}});

  // at 1_(v,+) both sides continue through the arrow x: the kernel of x from
  // above, the image of x from below
  auto triv = filtration(Word::trivial(0, 1), mx);
  CHECK(triv.plus == b0);
  CHECK(triv.minus == b0);

  // at 1_(v,-) the continuations run through y, which acts by zero here
  auto trivneg = filtration(Word::trivial(0, -1), mx);
  CHECK(trivneg.plus == Subspace<RationalField>::full(f, 2));
  CHECK(trivneg.minus.dim() == 0);

  auto fx = filtration(parse_word(pres, "x"), mx);
  CHECK(fx.plus == b0);
  CHECK(fx.minus.dim() == 0);

  // over the one-arrow quiver nothing extends "a", so the fallbacks kick in:
  // plus is the full image aM and minus is a0
  auto a1 = load("a1.pres");
  auto ma = string_module(f, a1, parse_word(a1, "a"));
  CHECK(extensions_of(a1, parse_word(a1, "a")).empty());
  auto fa = filtration(parse_word(a1, "a"), ma);
  CHECK(fa.plus.dim() == 1);
  CHECK(fa.plus == Subspace<RationalField>::span_vectors(f, 1, {{f.one()}}));
  CHECK(fa.minus.dim() == 0);
}

TEST_CASE("filtrations of one-sided infinite words") {
  auto pres = load("lambda2.pres");
  RationalField f;
  auto mx = string_module(f, pres, parse_word(pres, "x"));
  auto b0 = Subspace<RationalField>::span_vectors(f, 2, {{f.one(), f.zero()}});

  auto w = parse_word(pres, "(x- y)^inf");
  auto fw = filtration(w, mx);
  CHECK(fw.plus == b0);
  CHECK(fw.minus == b0);

  // a genuine prefix in front of the repeating block
  auto mxy = string_module(f, pres, parse_word(pres, "x y"));
  auto wp = parse_word(pres, "x y (x- y)^inf");
  REQUIRE(wp.window().size() == 1);  // canonical form absorbs the shared tail
  auto fp = filtration(wp, mxy);
  CHECK(fp.plus == Subspace<RationalField>::span_vectors(
                       f, 3, {{f.one(), f.zero(), f.zero()}}));
  CHECK(fp.minus == fp.plus);

  CHECK_THROWS(filtration(parse_word(pres, "^inf(x y-)^inf"), mx));
  CHECK_THROWS(filtration(Word::left_infinite({{0, false}}, {}), mx));
}

TEST_CASE("refined quotients of string modules") {
  auto pres = load("lambda2.pres");
  RationalField f;
  auto mx = string_module(f, pres, parse_word(pres, "x"));
  auto b0 = Subspace<RationalField>::span_vectors(f, 2, {{f.one(), f.zero()}});

  auto b = parse_word(pres, "x");
  auto d = Word::trivial(0, -1);
  auto rf = refined_functor(b, d, mx);
  CHECK(rf.quotient_dim == 1);
  CHECK(rf.plus == b0);
  CHECK(rf.minus.dim() == 0);
  CHECK_FALSE(rf.t_matrix.has_value());

  // the pair can be given in either sign order
  auto swapped = refined_functor(d, b, mx);
  CHECK(swapped.quotient_dim == 1);

  auto g = g_functor(b, d, mx);
  CHECK(g.quotient_dim == 1);
  CHECK(g.plus == b0);
  CHECK(g.minus.dim() == 0);

  // mismatched heads or equal signs are rejected
  CHECK_THROWS(refined_functor(b, Word::trivial(0, 1), mx));
  CHECK_THROWS(refined_functor(b, parse_word(pres, "x y"), mx));

  Representation<RationalField> zero(pres, f, {0});
  CHECK(refined_functor(b, d, zero).quotient_dim == 0);
  CHECK(g_functor(b, d, zero).quotient_dim == 0);
  auto zperiodic =
      refined_functor(parse_word(pres, "(y x-)^inf"), parse_word(pres, "(x y-)^inf"), zero);
  CHECK(zperiodic.quotient_dim == 0);
  CHECK(zperiodic.t_matrix.has_value());
}

TEST_CASE("periodic pairs act on band modules through the repeating word") {
  auto pres = load("lambda2.pres");
  PrimeField f(5);
  auto c = parse_word(pres, "^inf(x y-)^inf");
  auto b = parse_word(pres, "(y x-)^inf");
  auto d = parse_word(pres, "(x y-)^inf");

  for (int lam : {1, 2, 3}) {
    Matrix<PrimeField> t(f, 1, 1);
    t(0, 0) = f.from_int(lam);
    auto m = band_module(f, pres, c, t);
    auto rf = refined_functor(b, d, m);
    CHECK(rf.quotient_dim == 1);
    REQUIRE(rf.t_matrix.has_value());
    CHECK(*rf.t_matrix == t);

    // the general filtration computation lands on the same subspaces
    auto fb = filtration(b, m);
    auto fd = filtration(d, m);
    CHECK(rf.plus == fb.plus.intersect(fd.plus));
    CHECK(rf.minus == fb.plus.intersect(fd.minus).sum(fb.minus.intersect(fd.plus)));
    CHECK(fb.plus == Subspace<PrimeField>::span_vectors(f, 2, {{f.zero(), f.one()}}));
    CHECK(fb.minus.dim() == 0);

    CHECK(g_functor(b, d, m).quotient_dim == 1);
  }

  // a Jordan block coefficient survives into the induced action
  Matrix<PrimeField> jord(f, 2, 2);
  jord(0, 0) = f.from_int(3);
  jord(0, 1) = f.one();
  jord(1, 1) = f.from_int(3);
  auto mj = band_module(f, pres, c, jord);
  auto rj = refined_functor(b, d, mj);
  CHECK(rj.quotient_dim == 2);
  REQUIRE(rj.t_matrix.has_value());
  CHECK(*rj.t_matrix == jord);
  auto mp = minimal_polynomial(f, *rj.t_matrix);
  Poly<PrimeField> want{f.from_int(4), f.from_int(4), f.one()};  // (T - 3)^2
  CHECK(poly_eq(f, mp, want));
}

TEST_CASE("morphisms induce maps between refined quotients") {
  auto pres = load("lambda2.pres");
  RationalField f;
  auto mx = string_module(f, pres, parse_word(pres, "x"));
  auto my = string_module(f, pres, parse_word(pres, "y"));
  auto sum = direct_sum_rep<RationalField>({mx, my});
  auto b = parse_word(pres, "x");
  auto d = Word::trivial(0, -1);

  RepHom<RationalField> id;
  id.at.push_back(Matrix<RationalField>::identity(f, 2));
  auto tid = functor_on_morphism(b, d, mx, mx, id);
  CHECK(tid == Matrix<RationalField>::identity(f, 1));

  RepHom<RationalField> zero;
  zero.at.emplace_back(f, 2, 2);
  CHECK(functor_on_morphism(b, d, mx, mx, zero) == Matrix<RationalField>(f, 1, 1));

  RepHom<RationalField> incl;
  incl.at.emplace_back(f, 4, 2);
  incl.at[0](0, 0) = f.one();
  incl.at[0](1, 1) = f.one();
  REQUIRE(is_morphism(mx, sum, incl));
  auto tincl = functor_on_morphism(b, d, mx, sum, incl);
  REQUIRE(tincl.rows() == 1);
  REQUIRE(tincl.cols() == 1);
  CHECK(tincl.rank() == 1);

  RepHom<RationalField> bad;
  bad.at.emplace_back(f, 2, 2);
  bad.at[0](0, 0) = f.one();
  CHECK_THROWS(functor_on_morphism(b, d, mx, mx, bad));

  // filtration subspaces are carried along by every morphism
  auto mxy = string_module(f, pres, parse_word(pres, "x y"));
  std::vector<Word> probes{b, d, Word::trivial(0, 1), parse_word(pres, "y"),
                           parse_word(pres, "(x- y)^inf")};
  for (const auto& h : hom_space(mxy, mx)) {
    for (const auto& w : probes) {
      auto from = filtration(w, mxy);
      auto to = filtration(w, mx);
      CHECK(to.plus.contains(from.plus.image_under(h.at[0])));
      CHECK(to.minus.contains(from.minus.image_under(h.at[0])));
    }
  }
}

TEST_CASE("refined quotient dimensions count matching positions") {
  auto pres = load("lambda2.pres");
  PrimeField f(5);
  auto foreign_b = parse_word(pres, "x y");
  auto foreign_d = Word::trivial(0, -1);

  for (const auto& c : valid_words(pres, 5)) {
    auto m = string_module(f, pres, c);
    long n = c.is_trivial() ? 0 : (long)c.length();

    std::map<std::pair<std::string, std::string>, std::tuple<Word, Word, std::size_t>> pairs;
    for (long i = 0; i <= n; ++i) {
      auto bw = side_word(pres, c, i, 1);
      auto dw = side_word(pres, c, i, -1);
      auto key = std::make_pair(write_word(pres, bw), write_word(pres, dw));
      auto it = pairs.find(key);
      if (it == pairs.end())
        pairs.emplace(key, std::make_tuple(bw, dw, std::size_t{1}));
      else
        ++std::get<2>(it->second);
    }
    for (const auto& [key, val] : pairs) {
      const auto& [bw, dw, count] = val;
      auto rf = refined_functor(bw, dw, m);
      CHECK(rf.quotient_dim == count);
      CHECK(g_functor(bw, dw, m).quotient_dim == count);
    }

    // a pair taken from somewhere else scores its own match count, often zero
    if (n <= 3) {
      std::size_t want = matching_positions(pres, c, foreign_b, foreign_d, f);
      CHECK(refined_functor(foreign_b, foreign_d, m).quotient_dim == want);
    }
  }
}
