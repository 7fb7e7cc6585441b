#include <catch2/catch_amalgamated.hpp>

#include "strelkit/presentation.hpp"
#include "test_support.hpp"

using namespace strelkit;
using namespace strelkit::testing;

static Letter dir(const StringPresentation& p, const std::string& a) {
  return {(std::uint32_t)*p.arrow_id(a), false};
}
static Letter inv(const StringPresentation& p, const std::string& a) {
  return {(std::uint32_t)*p.arrow_id(a), true};
}

TEST_CASE("two loops with square-zero relations") {
  auto p = StringPresentation::parse(read_file(fixture_path("lambda2.pres")));
  REQUIRE(p.num_vertices() == 1);
  REQUIRE(p.num_arrows() == 2);
  REQUIRE(p.field_spec().rational);
  REQUIRE(p.relations().size() == 2);
  REQUIRE(p.is_valid_string_algebra());

  const auto& s = p.signs();
  CHECK(s.sign(dir(p, "x")) == +1);
  CHECK(s.sign(dir(p, "y")) == -1);
  CHECK(s.sign(inv(p, "x")) == +1);
  CHECK(s.sign(inv(p, "y")) == -1);
}

TEST_CASE("truncated two-loop algebra keeps the same sign table") {
  auto p = StringPresentation::parse(read_file(fixture_path("lambda2t.pres")));
  REQUIRE(p.relations().size() == 4);
  REQUIRE(p.is_valid_string_algebra());
  const auto& s = p.signs();
  CHECK(s.sign(dir(p, "x")) == +1);
  CHECK(s.sign(dir(p, "y")) == -1);
  CHECK(s.sign(inv(p, "x")) == +1);
  CHECK(s.sign(inv(p, "y")) == -1);
}

TEST_CASE("single arrow gets all plus signs") {
  auto p = StringPresentation::parse(read_file(fixture_path("a1.pres")));
  REQUIRE(p.num_vertices() == 2);
  REQUIRE(p.is_valid_string_algebra());
  const auto& s = p.signs();
  CHECK(s.sign(dir(p, "a")) == +1);
  CHECK(s.sign(inv(p, "a")) == +1);
  CHECK(p.head_of(dir(p, "a")) == *p.vertex_id("v"));
  CHECK(p.head_of(inv(p, "a")) == *p.vertex_id("u"));
}

TEST_CASE("kronecker quiver is a string algebra without relations") {
  auto p = StringPresentation::parse(
      "vertex u\nvertex v\narrow p : u -> v\narrow q : u -> v\n");
  CHECK(p.is_valid_string_algebra());
  const auto& s = p.signs();
  CHECK(s.sign(dir(p, "p")) != s.sign(dir(p, "q")));
  CHECK(s.sign(inv(p, "p")) != s.sign(inv(p, "q")));
}

TEST_CASE("unrelieved double composition violates the axioms") {
  std::string base =
      "vertex u\nvertex v\nvertex w\n"
      "arrow a : u -> v\narrow b : v -> w\narrow c : v -> w\n";
  auto bad = StringPresentation::parse(base);
  auto errs = bad.validate();
  REQUIRE_FALSE(errs.empty());
  bool mentions_a = false;
  for (const auto& e : errs)
    if (e.find("arrow a") != std::string::npos) mentions_a = true;
  CHECK(mentions_a);

  auto good = StringPresentation::parse(base + "rel b a\n");
  CHECK(good.is_valid_string_algebra());
}

TEST_CASE("three arrows at a vertex are rejected") {
  auto p = StringPresentation::parse(
      "vertex v\narrow x : v -> v\narrow y : v -> v\narrow z : v -> v\n");
  auto errs = p.validate();
  bool head = false, tail = false;
  for (const auto& e : errs) {
    if (e.find("head of 3") != std::string::npos) head = true;
    if (e.find("tail of 3") != std::string::npos) tail = true;
  }
  CHECK(head);
  CHECK(tail);
}

TEST_CASE("parser reports malformed input with line numbers") {
  CHECK_THROWS_AS(StringPresentation::parse("vertex v\nfrob v\n"), error);
  CHECK_THROWS_AS(StringPresentation::parse("arrow a : u -> v\n"), error);
  CHECK_THROWS_AS(StringPresentation::parse("vertex v\narrow a v -> v\n"), error);
  CHECK_THROWS_AS(StringPresentation::parse("vertex v\narrow a : v -> v\nrel a\n"), error);
  CHECK_THROWS_AS(
      StringPresentation::parse("vertex u\nvertex v\narrow a : u -> v\nrel a a\n"), error);
  try {
    StringPresentation::parse("vertex v\nvertex v\n");
    FAIL("expected duplicate vertex error");
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("comments and finite field spec parse") {
  auto p = StringPresentation::parse(
      "# two loop algebra over F_5\nfield F 5\nvertex v # the only vertex\n"
      "arrow x : v -> v\narrow y : v -> v\nrel x x\nrel y y\n");
  CHECK_FALSE(p.field_spec().rational);
  CHECK(p.field_spec().p == 5);
  CHECK(p.is_valid_string_algebra());
}
