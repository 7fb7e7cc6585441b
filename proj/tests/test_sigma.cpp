#include "strelkit/sigma.hpp"

#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

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

// a negative certificate must unroll to a chain that compare_words confirms
// is strictly descending
void check_witness(const StringPresentation& pres, const Word& c, const ChainCertificate& cert) {
  REQUIRE_FALSE(cert.verdict);
  REQUIRE(cert.witness.has_value());
  REQUIRE(cert.witness->direction == 1);
  auto members = family_members(pres, c, *cert.witness, 11);
  for (std::size_t k = 0; k + 1 < members.size(); ++k)
    REQUIRE(compare_words(pres, members[k], members[k + 1]) > 0);
}

}  // namespace

TEST_CASE("finite words always satisfy the chain condition") {
  for (const char* fx : {"lambda2.pres", "lambda2t.pres", "a1.pres"}) {
    auto pres = load(fx);
    for (const auto& w : valid_words(pres, 4)) {
      auto cert = is_sigma_pure_injective(w, pres);
      CHECK(cert.verdict);
      CHECK_FALSE(cert.witness.has_value());
      for (const auto& fam : cert.families) {
        CHECK(fam.step == 0);
        CHECK(fam.direction == 0);
      }
    }
  }
}

TEST_CASE("descending prefix words are refuted with a witness family") {
  auto pres = load("lambda2.pres");
  auto c = parse_word(pres, "(x y-)^inf");
  REQUIRE(c.shape() == Word::Shape::RightInfinite);

  auto cert = is_sigma_pure_injective(c, pres);
  check_witness(pres, c, cert);
  CHECK(cert.witness->eps == 1);
  CHECK(cert.witness->start == 1);
  CHECK(cert.witness->step == 2);

  auto members = family_members(pres, c, *cert.witness, 2);
  CHECK(members[0] == parse_word(pres, "x-"));
  CHECK(members[1] == parse_word(pres, "x- y x-"));

  // one vertex, so each sign sees one core side word plus the two rays: the
  // suffix ray is constant, the prefix-inverse ray strictly descends
  for (int eps : {1, -1}) {
    auto fams = side_word_families(pres, c, 0, eps);
    REQUIRE(fams.size() == 3);
    CHECK(fams[0].step == 0);
    CHECK(std::count_if(fams.begin(), fams.end(),
                        [](const SideFamily& f) { return f.direction == 1; }) == 1);
    CHECK(std::count_if(fams.begin(), fams.end(),
                        [](const SideFamily& f) { return f.step != 0 && f.direction == 0; }) == 1);
  }
  auto suffixes = side_word_families(pres, c, 0, 1);
  CHECK(family_members(pres, c, suffixes[2], 3) ==
        std::vector<Word>(3, parse_word(pres, "(x y-)^inf")));
}

TEST_CASE("ascending prefix words satisfy the chain condition") {
  auto pres = load("lambda2.pres");
  auto c = parse_word(pres, "(x- y)^inf");

  auto cert = is_sigma_pure_injective(c, pres);
  CHECK(cert.verdict);
  CHECK_FALSE(cert.witness.has_value());
  CHECK(std::any_of(cert.families.begin(), cert.families.end(),
                    [](const SideFamily& f) { return f.direction == -1; }));

  // the growing prefixes x, x y- x, ... each extend the last by an inverse
  // letter, which sorts them upward
  auto fams = side_word_families(pres, c, 0, 1);
  auto ray = std::find_if(fams.begin(), fams.end(),
                          [](const SideFamily& f) { return f.start == 1; });
  REQUIRE(ray != fams.end());
  CHECK(ray->direction == -1);
  CHECK(family_members(pres, c, *ray, 2) ==
        std::vector<Word>{parse_word(pres, "x"), parse_word(pres, "x y- x")});
}

TEST_CASE("the verdict is invariant under inversion") {
  auto pres = load("lambda2.pres");

  auto bad = parse_word(pres, "(x y-)^inf").inverse();
  REQUIRE(bad.shape() == Word::Shape::LeftInfinite);
  REQUIRE(is_valid_word(pres, bad));
  check_witness(pres, bad, is_sigma_pure_injective(bad, pres));

  auto good = parse_word(pres, "(x- y)^inf").inverse();
  CHECK(is_sigma_pure_injective(good, pres).verdict);
}

TEST_CASE("two-sided words are decided and shifts do not change the verdict") {
  auto pres = load("lambda2.pres");
  Letter x{0, false}, xi{0, true}, y{1, false}, yi{1, true};

  // ...x-y x-y xy- xy-... : the right tail has descending prefixes
  auto bad = Word::bi_infinite({xi, y}, {}, {x, yi}, 1);
  REQUIRE(bad.shape() == Word::Shape::BiInfinite);
  REQUIRE(is_valid_word(pres, bad));
  check_witness(pres, bad, is_sigma_pure_injective(bad, pres));
  check_witness(pres, bad.shift(2), is_sigma_pure_injective(bad.shift(2), pres));
  check_witness(pres, bad.shift(-4), is_sigma_pure_injective(bad.shift(-4), pres));
  check_witness(pres, bad.inverse(), is_sigma_pure_injective(bad.inverse(), pres));

  // ...x-y- x-y- xy xy... : both tails ascend away from the seam
  auto good = Word::bi_infinite({xi, yi}, {}, {x, y}, 1);
  REQUIRE(good.shape() == Word::Shape::BiInfinite);
  REQUIRE(is_valid_word(pres, good));
  CHECK(is_sigma_pure_injective(good, pres).verdict);
  CHECK(is_sigma_pure_injective(good.shift(3), pres).verdict);
  CHECK(is_sigma_pure_injective(good.shift(-1), pres).verdict);
  CHECK(is_sigma_pure_injective(good.inverse(), pres).verdict);

  auto band = parse_word(pres, "^inf(x y-)^inf");
  REQUIRE_THROWS_AS(is_sigma_pure_injective(band, pres), error);
  REQUIRE_THROWS_AS(side_word_families(pres, band, 0, 1), error);
}

TEST_CASE("side word inventories of finite and trivial words") {
  auto pres = load("lambda2.pres");
  auto c = parse_word(pres, "x y");
  for (int eps : {1, -1}) {
    auto fams = side_word_families(pres, c, 0, eps);
    REQUIRE(fams.size() == 3);
    for (long i = 0; i < 3; ++i) {
      CHECK(fams[i].start == i);
      CHECK(fams[i].step == 0);
      CHECK(family_members(pres, c, fams[i], 1).front() == side_word(pres, c, i, eps));
    }
  }
  CHECK(side_word(pres, c, 1, 1) == parse_word(pres, "x-"));
  CHECK(side_word(pres, c, 2, -1) == parse_word(pres, "y- x-"));

  auto t = Word::trivial(0, -1);
  for (int eps : {1, -1}) {
    auto fams = side_word_families(pres, t, 0, eps);
    REQUIRE(fams.size() == 1);
    CHECK(family_members(pres, t, fams.front(), 1).front() == Word::trivial(0, eps));
  }

  // over two vertices the positions split by vertex
  auto a1 = load("a1.pres");
  auto a = parse_word(a1, "a");
  for (int eps : {1, -1}) {
    CHECK(side_word_families(a1, a, 0, eps).size() +
              side_word_families(a1, a, 1, eps).size() ==
          2);
  }
}

TEST_CASE("the truncated algebra decides the same infinite words") {
  auto pres = load("lambda2t.pres");
  auto bad = parse_word(pres, "(x y-)^inf");
  REQUIRE(is_valid_word(pres, bad));
  check_witness(pres, bad, is_sigma_pure_injective(bad, pres));

  auto good = parse_word(pres, "(x- y)^inf");
  REQUIRE(is_valid_word(pres, good));
  CHECK(is_sigma_pure_injective(good, pres).verdict);
}
