#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "parikh/semilinear.hpp"
#include "support.hpp"

using namespace parikh;

TEST_CASE("member_linear on the worked examples") {
  LinearSet diag = make_linear({0, 0}, {{1, 1}});
  CHECK(member_linear(diag, {3, 3}));
  CHECK_FALSE(member_linear(diag, {2, 3}));

  LinearSet two = make_linear({1, 0}, {{1, 1}, {0, 2}});
  CHECK(member_linear(two, {3, 4}));  // x = (2,1)
  CHECK(testsupport::member_linear_exhaustive(two, {3, 4}, 4));
  CHECK_FALSE(member_linear(two, {0, 5}));
}

TEST_CASE("member_linear agrees with exhaustive search") {
  std::mt19937 rng(424243);
  auto nat = [&](std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(0, hi)(rng);
  };
  for (int instance = 0; instance < 500; ++instance) {
    std::size_t d = 1 + nat(3);
    std::size_t k = nat(4);
    Vector base(d);
    for (auto& c : base) c = nat(5);
    std::vector<Vector> periods;
    for (std::size_t i = 0; i < k; ++i) {
      Vector p(d);
      for (auto& c : p) c = nat(3);
      periods.push_back(std::move(p));
    }
    LinearSet l = make_linear(base, periods);
    Vector u(d);
    for (auto& c : u) c = nat(20);
    bool fast = member_linear(l, u);
    bool slow = testsupport::member_linear_exhaustive(l, u, 30);
    INFO("instance " << instance << " l=(" << to_text(l.base) << ") u="
                     << to_text(u));
    CHECK(fast == slow);
  }
}

TEST_CASE("member over a union tries every component") {
  SemilinearSet empty = make_semilinear(2, {});
  CHECK_FALSE(member(empty, {0, 0}));

  Grammar anbn = testsupport::load_grammar("anbn.cfg");
  SemilinearSet image = build_image(anbn);
  CHECK(member(image, {7, 7}));
  CHECK_FALSE(member(image, {7, 6}));
  CHECK_THROWS_AS(member(image, {1, 1, 1}), error);
}

TEST_CASE("normalize drops duplicates and subsumed components") {
  SemilinearSet dup = make_semilinear(
      1, {make_linear({1}, {}), make_linear({1}, {})});
  CHECK(dup.components.size() == 1);  // make_semilinear already dedups

  SemilinearSet shifted = make_semilinear(
      1, {make_linear({2}, {{1}}), make_linear({3}, {{1}})});
  SemilinearSet norm = normalize(shifted);
  REQUIRE(norm.components.size() == 1);
  CHECK(norm.components[0] == make_linear({2}, {{1}}));

  SemilinearSet keep = make_semilinear(
      2, {make_linear({0, 0}, {}), make_linear({1, 1}, {{1, 1}})});
  CHECK(normalize(keep) == keep);
}

TEST_CASE("normalize preserves the denoted set") {
  std::mt19937 rng(777);
  auto nat = [&](std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(0, hi)(rng);
  };
  for (int instance = 0; instance < 40; ++instance) {
    std::size_t d = 1 + nat(1);  // dimension 1 or 2 keeps the sweep dense
    std::vector<LinearSet> comps;
    std::size_t n = 1 + nat(4);
    for (std::size_t i = 0; i < n; ++i) {
      Vector base(d);
      for (auto& c : base) c = nat(4);
      std::vector<Vector> periods;
      std::size_t k = nat(3);
      for (std::size_t j = 0; j < k; ++j) {
        Vector p(d);
        for (auto& c : p) c = nat(3);
        periods.push_back(std::move(p));
      }
      comps.push_back(make_linear(base, periods));
    }
    SemilinearSet s = make_semilinear(d, comps);
    SemilinearSet norm = normalize(s);

    auto sweep = [&](auto&& self, Vector u, std::size_t pos) -> void {
      if (pos == d) {
        INFO("instance " << instance << " u=" << to_text(u));
        REQUIRE(member(s, u) == member(norm, u));
        return;
      }
      for (std::uint64_t c = 0; c <= 30; ++c) {
        u[pos] = c;
        self(self, u, pos + 1);
      }
    };
    sweep(sweep, Vector(d), 0);
  }
}

TEST_CASE("the image of a,b-balanced words is the diagonal") {
  Grammar anbn = testsupport::load_grammar("anbn.cfg");
  SemilinearSet image = build_image(anbn);
  SemilinearSet expected = make_semilinear(
      2, {make_linear({0, 0}, {}), make_linear({1, 1}, {{1, 1}})});
  CHECK(image == expected);
}

TEST_CASE("the image of the duplication grammar denotes n >= 1") {
  Grammar dup = testsupport::load_grammar("dup.cfg");
  SemilinearSet image = build_image(dup);
  for (std::uint64_t n = 0; n <= 40; ++n)
    CHECK(member(image, {n}) == (n >= 1));
  SemilinearSet norm = normalize(image);
  SemilinearSet expected = make_semilinear(
      1, {make_linear({1}, {}), make_linear({2}, {{1}})});
  CHECK(norm == expected);
}

TEST_CASE("an empty language has an empty image") {
  Grammar empty = testsupport::load_grammar("empty.cfg");
  SemilinearSet image = build_image(empty);
  CHECK(image.components.empty());
  CHECK(image.dimension == 1);
}

TEST_CASE("class deduplication never changes the image") {
  for (const auto& name : {"anbn.cfg", "dup.cfg", "expr.cfg"}) {
    Grammar g = testsupport::load_grammar(name);
    BuildOptions raw;
    raw.use_classes = false;
    SemilinearSet with_classes = build_image(g);
    SemilinearSet without = build_image(g, raw);
    // Compare denotations over a grid.
    std::size_t d = parikh_dimension(g);
    auto sweep = [&](auto&& self, Vector u, std::size_t pos) -> void {
      if (pos == d) {
        INFO(name << " u=" << to_text(u));
        REQUIRE(member(with_classes, u) == member(without, u));
        return;
      }
      for (std::uint64_t c = 0; c <= 8; ++c) {
        u[pos] = c;
        self(self, u, pos + 1);
      }
    };
    sweep(sweep, Vector(d), 0);
  }
}

TEST_CASE("text and JSON renderings are canonical") {
  Grammar anbn = testsupport::load_grammar("anbn.cfg");
  SemilinearSet image = build_image(anbn);
  CHECK(to_text(image) == "(0,0) + <>*\n(1,1) + <(1,1)>*\n");
  CHECK(to_json(image, anbn.alphabet()) ==
        "{\"alphabet\":[\"a\",\"b\"],\"linear_sets\":"
        "[{\"base\":[0,0],\"periods\":[]},"
        "{\"base\":[1,1],\"periods\":[[1,1]]}]}");

  SemilinearSet empty = make_semilinear(1, {});
  CHECK(to_text(empty).empty());
  CHECK(to_json(empty, {"a"}) ==
        "{\"alphabet\":[\"a\"],\"linear_sets\":[]}");
}

TEST_CASE("a zero-dimension grammar still has an image") {
  Grammar g = parse_grammar("start: S\nalphabet:\nS -> eps\n");
  SemilinearSet image = build_image(g);
  REQUIRE(image.components.size() == 1);
  CHECK(image.components[0] == make_linear({}, {}));
  CHECK(member(image, {}));
  CHECK(to_json(image, g.alphabet()) ==
        "{\"alphabet\":[],\"linear_sets\":[{\"base\":[],\"periods\":[]}]}");
  CHECK(crosscheck(g, 5, 3).pass());
}

TEST_CASE("vector literals parse and print") {
  CHECK(parse_vector("(1,2,3)") == Vector{1, 2, 3});
  CHECK(parse_vector(" ( 1 , 2 ) ") == Vector{1, 2});
  CHECK(parse_vector("()") == Vector{});
  CHECK(to_text(Vector{1, 2}) == "(1,2)");
  CHECK(to_text(Vector{}) == "()");
  CHECK_THROWS_AS(parse_vector("1,2"), parse_error);
  CHECK_THROWS_AS(parse_vector("(1,)"), parse_error);
  CHECK_THROWS_AS(parse_vector("(1 2)"), parse_error);
  CHECK_THROWS_AS(parse_vector("(1,2"), parse_error);
}

TEST_CASE("linear sets reject zero periods and mixed dimensions") {
  LinearSet l = make_linear({1, 2}, {{0, 0}, {1, 0}});
  CHECK(l.periods == std::vector<Vector>{{1, 0}});
  CHECK_THROWS_AS(make_linear({1}, {{1, 2}}), error);
  CHECK_THROWS_AS(make_semilinear(2, {make_linear({1}, {})}), error);
  CHECK_THROWS_AS(member_linear(make_linear({1}, {}), {1, 2}), error);
}
