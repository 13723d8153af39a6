#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "rinf/cycles.hpp"
#include "rinf/rng.hpp"

using namespace rinf;
using namespace rinf::testing;

namespace {

// Random self-contained infinite cycle confined to rays [ray_lo, ray_hi]:
// two non-intersecting rails plus a random turbulent middle.
InfiniteCycleDescriptor random_cycle(Rng& rng, int ray_lo = 1, int ray_hi = 3) {
  auto ray = [&] { return ray_lo + (int)rng.below((std::uint64_t)(ray_hi - ray_lo + 1)); };
  for (;;) {
    Rail bwd{ray(), rng.range(1, 6), rng.range(1, 3)};
    Rail fwd{ray(), rng.range(1, 6), rng.range(1, 3)};
    std::vector<Point> middle;
    std::set<Point> used;
    int len = (int)rng.below(6);
    for (int i = 0; i < len; ++i) {
      Point p{ray(), rng.range(1, 12)};
      if (bwd.contains(p) || fwd.contains(p) || !used.insert(p).second) continue;
      middle.push_back(p);
    }
    try {
      return InfiniteCycleDescriptor(bwd, middle, fwd);
    } catch (const std::invalid_argument&) {
    }
  }
}

// Pointwise check of tau . x == u . v on every listed point of every piece,
// where tau swaps a and b and v may be a finite cycle.
bool splice_matches(const InfiniteCycleDescriptor& x, Point a, Point b,
                    const std::function<Point(Point)>& uv, std::int64_t window) {
  auto tau = [&](Point p) { return p == a ? b : (p == b ? a : p); };
  for (std::int64_t k = -window; k <= window; ++k) {
    Point p = x.point_at(k);
    if (tau(x.evaluate(p)) != uv(p)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("identity decomposes to the empty structure") {
  auto cs = cycle_decomposition(TailedPermutation::identity(3));
  CHECK(cs.empty());
  CHECK(cycle_type(TailedPermutation::identity(3)).all_zero());
}

TEST_CASE("translation ladders produce the predicted infinite cycles") {
  // With pure translations the number of infinite cycles is the sum of the
  // positive translation amounts.
  auto one = translation_element(2, {1, -1});
  auto cs1 = cycle_decomposition(one);
  CHECK(cs1.infinite_cycles.size() == 1);
  CHECK(cs1.periodic_families.empty());

  auto two = translation_element(2, {2, -2});
  CHECK(cycle_decomposition(two).infinite_cycles.size() == 2);

  auto three = translation_element(3, {1, 2, -3});
  CHECK(cycle_decomposition(three).infinite_cycles.size() == 3);
  CHECK(cycle_type(three).infinite_cycles == 3);
}

TEST_CASE("repeating two cycles become one periodic family") {
  auto f = repeating_cycles_element(1, 1, 2);
  auto cs = cycle_decomposition(f);
  CHECK(cs.infinite_cycles.empty());
  REQUIRE(cs.periodic_families.size() == 1);
  CHECK(cs.periodic_families[0].pattern.size() == 2);
  auto t = cycle_type(f);
  CHECK(t.unbounded_lengths == std::set<std::int64_t>{2});
  CHECK(t.infinite_cycles == 0);
  // First hundred heights follow the pattern.
  for (std::int64_t s = 1; s <= 100; s += 2) {
    CHECK(f.evaluate({1, s}) == Point{1, s + 1});
    CHECK(f.evaluate({1, s + 1}) == Point{1, s});
  }
}

TEST_CASE("ray swapping patterns with zero drift form multi-ray families") {
  // f swaps the two rays height by height: every orbit is the 2-cycle
  // {(1,s),(2,s)}.  High instances form one periodic family; the instances
  // below the family floor are listed explicitly.
  auto f = TailedPermutation::ray_relabel_map({2, 1});
  auto cs = cycle_decomposition(f);
  CHECK(cs.infinite_cycles.empty());
  REQUIRE(cs.periodic_families.size() == 1);
  CHECK(cs.periodic_families[0].pattern.size() == 2);
  CHECK(cs.periodic_families[0].period == 1);
  for (const auto& c : cs.finite_cycles) CHECK(c.size() == 2);
  for (std::int64_t s = 1; s <= 50; ++s) {
    CHECK(cs.evaluate({1, s}) == Point{2, s});
    CHECK(cs.evaluate({2, s}) == Point{1, s});
  }
  auto t = cycle_type(f);
  CHECK(t.unbounded_lengths == std::set<std::int64_t>{2});
  CHECK(t.finite_counts.empty());
}

TEST_CASE("escaping orbits that hop rays have no rail description") {
  // Rays 1 and 2 zigzag upward gaining one height per lap, fed by the
  // descending ray 3.  The escaping tail alternates rays, so it is not an
  // arithmetic progression on a single ray.
  std::vector<Tail> tails(3);
  tails[0].target = 2;
  tails[0].offsets = {1};
  tails[1].target = 1;
  tails[1].offsets = {0};
  tails[2].target = 3;
  tails[2].offsets = {-1};
  auto f = with_canonical_table(3, 2, tails);
  CHECK_THROWS_AS(cycle_decomposition(f), UnsupportedCycleError);
}

TEST_CASE("decomposition round trips through evaluation") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    int n = 1 + (int)rng.below(3);
    auto f = random_supported_tailed(rng, n);
    auto cs = cycle_decomposition(f);
    for (int j = 1; j <= n; ++j)
      for (std::int64_t s = 1; s <= 200; ++s) {
        Point p{j, s};
        REQUIRE(cs.evaluate(p) == f.evaluate(p));
      }
  }
}

TEST_CASE("cycle type is preserved by finitary conjugation") {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    int n = 1 + (int)rng.below(3);
    auto f = random_supported_tailed(rng, n);
    auto z = random_finitary(rng, n, 5);
    CHECK(cycle_type(conjugate(z, f)) == cycle_type(f));
  }
}

TEST_CASE("splicing a transposition inside one cycle") {
  Rng rng(31);
  SUBCASE("k equals one deletes the base point") {
    auto x = random_cycle(rng);
    auto [u, v] = splice_same_cycle(x, 1);
    CHECK(v == std::vector<Point>{x.point_at(0)});
    CHECK_FALSE(u.contains(x.point_at(0)));
    CHECK(u.point_at(0) == x.point_at(1));
    // v is a trivial 1-cycle, so u . v is just u.
    CHECK(splice_matches(x, x.point_at(0), x.point_at(1),
                         [&](Point p) { return u.evaluate(p); }, 30));
  }
  SUBCASE("k equals two cuts off a transposition") {
    auto x = random_cycle(rng);
    auto [u, v] = splice_same_cycle(x, 2);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == x.point_at(0));
    CHECK(v[1] == x.point_at(1));
    auto eval_uv = [&](Point p) {
      if (p == v[0]) return u.evaluate(v[1]);
      if (p == v[1]) return u.evaluate(v[0]);
      return u.evaluate(p);
    };
    CHECK(splice_matches(x, x.point_at(0), x.point_at(2), eval_uv, 30));
  }
  SUBCASE("random k against the pointwise oracle") {
    for (int i = 0; i < 50; ++i) {
      auto x = random_cycle(rng);
      std::int64_t k = 5;
      auto [u, v] = splice_same_cycle(x, k);
      auto eval_v = [&](Point p) {
        for (std::size_t idx = 0; idx < v.size(); ++idx)
          if (v[idx] == p) return v[(idx + 1) % v.size()];
        return p;
      };
      auto eval_uv = [&](Point p) { return u.evaluate(eval_v(p)); };
      CHECK(splice_matches(x, x.point_at(0), x.point_at(k), eval_uv, 50));
    }
  }
  CHECK_THROWS_AS(splice_same_cycle(random_cycle(rng), 0), std::invalid_argument);
}

TEST_CASE("splicing two disjoint cycles crosses their halves") {
  Rng rng(37);
  for (int i = 0; i < 60; ++i) {
    auto x = random_cycle(rng, 1, 2);
    auto y = random_cycle(rng, 3, 4);
    auto [u, v] = splice_two_cycles(x, y);
    CHECK(u.backward() == x.backward());
    CHECK(v.backward() == y.backward());
    // Swapping the arguments swaps the output pair.
    auto [u2, v2] = splice_two_cycles(y, x);
    CHECK(u2 == v);
    CHECK(v2 == u);
    // Pointwise oracle on a window around both middles.
    auto tau = [&](Point p) {
      if (p == x.point_at(0)) return y.point_at(0);
      if (p == y.point_at(0)) return x.point_at(0);
      return p;
    };
    auto xy = [&](Point p) { return x.evaluate(y.evaluate(p)); };
    auto eval_uv = [&](Point p) { return u.evaluate(v.evaluate(p)); };
    for (std::int64_t k = -50; k <= 50; ++k) {
      REQUIRE(tau(xy(x.point_at(k))) == eval_uv(x.point_at(k)));
      REQUIRE(tau(xy(y.point_at(k))) == eval_uv(y.point_at(k)));
    }
  }
  // Overlapping cycles are rejected.
  auto a = random_cycle(rng, 1, 1);
  CHECK_THROWS_AS(splice_two_cycles(a, a), std::invalid_argument);
}

TEST_CASE("shift index distinguishes the spliced cycles") {
  auto f = translation_element(2, {1, -1});
  auto cs = cycle_decomposition(f);
  REQUIRE(cs.infinite_cycles.size() == 1);
  const auto& u = cs.infinite_cycles[0];
  CHECK(cofinite_shift_index(u, u) == 0);
  for (std::int64_t alpha = 1; alpha <= 6; ++alpha) {
    auto [v, w] = splice_same_cycle(u, alpha);
    CHECK(cofinite_shift_index(v, u) == alpha);
  }
  auto other = cycle_decomposition(translation_element(2, {-1, 1})).infinite_cycles[0];
  CHECK_THROWS_AS(cofinite_shift_index(other, u), IncomparableError);
}
