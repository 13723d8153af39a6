#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rinf/rng.hpp"
#include "rinf/tailed_permutation.hpp"

using namespace rinf;
using namespace rinf::testing;

namespace {

bool agree_on_window(const TailedPermutation& f, const TailedPermutation& g,
                     std::int64_t height) {
  for (int j = 1; j <= f.ray_count(); ++j)
    for (std::int64_t s = 1; s <= height; ++s)
      if (f.evaluate({j, s}) != g.evaluate({j, s})) return false;
  return true;
}

}  // namespace

TEST_CASE("identity and transposition basics") {
  auto id = TailedPermutation::identity(2);
  CHECK(id.is_identity());
  CHECK(id.is_finitary());
  CHECK(id.evaluate({2, 7}) == Point{2, 7});

  auto t = TailedPermutation::transposition(1, {1, 1}, {1, 2});
  CHECK(t.evaluate({1, 1}) == Point{1, 2});
  CHECK(t.evaluate({1, 2}) == Point{1, 1});
  CHECK(t.evaluate({1, 3}) == Point{1, 3});
  CHECK(compose(t, t) == TailedPermutation::identity(1));
}

TEST_CASE("composing transpositions gives the three cycle") {
  auto f = TailedPermutation::transposition(1, {1, 1}, {1, 2});
  auto g = TailedPermutation::transposition(1, {1, 2}, {1, 3});
  auto fg = compose(f, g);
  CHECK(fg.evaluate({1, 1}) == Point{1, 2});
  CHECK(fg.evaluate({1, 2}) == Point{1, 3});
  CHECK(fg.evaluate({1, 3}) == Point{1, 1});
  auto three_cycle = TailedPermutation::from_finitary(
      1, {{{1, 1}, {1, 2}}, {{1, 2}, {1, 3}}, {{1, 3}, {1, 1}}});
  CHECK(fg == three_cycle);
}

TEST_CASE("identity composes neutrally") {
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    auto f = random_supported_tailed(rng, 2);
    auto id = TailedPermutation::identity(2);
    CHECK(compose(id, f) == f);
    CHECK(compose(f, id) == f);
  }
}

TEST_CASE("opposite shifts with matching corrections cancel") {
  auto up = translation_element(2, {1, -1});
  auto down = up.inverse();
  CHECK(compose(up, down) == TailedPermutation::identity(2));
  CHECK(compose(down, up) == TailedPermutation::identity(2));
  CHECK(agree_on_window(compose(up, down), TailedPermutation::identity(2), 200));
}

TEST_CASE("group laws on random elements") {
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    int n = 1 + (int)rng.below(3);
    auto f = random_translation_tailed(rng, n, true);
    auto g = random_supported_tailed(rng, n);
    auto h = random_translation_tailed(rng, n, false);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    CHECK(compose(f, f.inverse()) == TailedPermutation::identity(n));
    CHECK(compose(f.inverse(), f) == TailedPermutation::identity(n));
    CHECK(compose(f, g).inverse() == compose(g.inverse(), f.inverse()));
  }
}

TEST_CASE("normalization produces canonical forms") {
  // Same function entered with a lazily large threshold.
  auto tight = translation_element(2, {1, -1});
  std::map<Point, Point> padded;
  for (int j = 1; j <= 2; ++j)
    for (std::int64_t s = 1; s < 9; ++s) {
      Point x{j, s};
      if (tight.evaluate(x) != x) padded[x] = tight.evaluate(x);
    }
  TailedPermutation loose(2, 9, tight.tails(), padded);
  CHECK(tight == loose);
  CHECK(tight.threshold() == loose.threshold());

  // Redundant period collapses.
  std::vector<Tail> tails(2);
  tails[0].target = 1;
  tails[0].offsets = {2, 2, 2};  // really a pure translation
  tails[1].target = 2;
  tails[1].offsets = {-2};
  auto f = with_canonical_table(2, 3, tails);
  CHECK(f.tail(1).period() == 1);
  CHECK(f.tail(1).offsets[0] == 2);
}

TEST_CASE("construction rejects non-bijections") {
  // Ray count 1 with a net translation cannot be a bijection.
  std::vector<Tail> up(1);
  up[0].target = 1;
  up[0].offsets = {1};
  CHECK_THROWS_AS(TailedPermutation(1, 1, up, {}), std::invalid_argument);

  // Finite images collide.
  CHECK_THROWS_AS(TailedPermutation::from_finitary(
                      1, {{{1, 1}, {1, 3}}, {{1, 2}, {1, 3}}, {{1, 3}, {1, 1}}}),
                  std::invalid_argument);

  // Tail residues collide: both classes shift into the same one.
  std::vector<Tail> res(1);
  res[0].target = 1;
  res[0].offsets = {1, 0};
  CHECK_THROWS_AS(TailedPermutation(1, 1, res, {}), std::invalid_argument);
}

TEST_CASE("relabeling rays conjugates by the ray permutation") {
  Rng rng(13);
  std::vector<int> sigma = {2, 3, 1};
  auto map = TailedPermutation::ray_relabel_map(sigma);
  for (int i = 0; i < 20; ++i) {
    auto f = random_supported_tailed(rng, 3);
    CHECK(f.relabel_rays(sigma) == compose(compose(map, f), map.inverse()));
  }
}

TEST_CASE("finitary conjugation moves only finitely many values") {
  Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    auto f = random_translation_tailed(rng, 2);
    auto z = random_finitary(rng, 2, 5);
    auto g = conjugate(z, f);
    int disagreements = 0;
    for (int j = 1; j <= 2; ++j)
      for (std::int64_t s = 1; s <= 300; ++s)
        if (f.evaluate({j, s}) != g.evaluate({j, s})) ++disagreements;
    CHECK(disagreements <= 2 * (int)z.table().size() + 2);
    CHECK(g.tails() == f.tails());
  }
}
