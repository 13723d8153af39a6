#include <numeric>

#include "doctest.h"
#include "rinf/rng.hpp"
#include "rinf/sphere_points.hpp"

using namespace rinf;
using namespace rinf::sphere;

namespace {

// A random point set in one factor whose rays all satisfy a hidden positive
// functional, with the functional attached as the certificate.
SpherePointSet random_certified_set(Rng& rng, int factor, std::size_t dim,
                                    std::size_t count) {
  std::vector<std::int64_t> functional(dim);
  for (auto& v : functional) v = rng.range(1, 3);
  std::vector<SpherePoint> points;
  while (points.size() < count) {
    std::vector<std::int64_t> dir(dim);
    for (auto& v : dir) v = rng.range(-4, 4);
    std::int64_t dot = 0;
    for (std::size_t i = 0; i < dim; ++i) dot += functional[i] * dir[i];
    if (dot <= 0) continue;
    points.push_back({factor, PointTag::IsolatedRational, dir});
  }
  return SpherePointSet({{factor, dim}}, std::move(points), {{factor, functional}});
}

}  // namespace

TEST_CASE("sphere point sets normalize and embed") {
  SpherePointSet set({{1, 2}}, {{1, PointTag::IsolatedRational, {2, 4}}});
  CHECK(set.points()[0].direction == std::vector<std::int64_t>{1, 2});
  CHECK(set.ambient_dim() == 2);
  CHECK_THROWS_AS(SpherePointSet({{1, 2}}, {{1, PointTag::Limit, {0, 0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpherePointSet({{1, 2}}, {{2, PointTag::Limit, {1, 0}}}),
                  std::invalid_argument);
}

TEST_CASE("the union of factor spheres is disjoint and additive") {
  Rng rng(163);
  auto a = random_certified_set(rng, 1, 2, 3);
  auto b = random_certified_set(rng, 2, 3, 4);
  auto u = meinert_union({a, b});
  CHECK(u.points().size() == 7);
  CHECK(u.ambient_dim() == 5);
  CHECK(u.has_certificate(1));
  CHECK(u.has_certificate(2));
  // A single factor is its own union; overlapping ids are refused.
  CHECK(meinert_union({a}).points().size() == a.points().size());
  CHECK_THROWS_AS(meinert_union({a, a}), std::invalid_argument);
  // Associativity of the disjoint union.
  auto c = random_certified_set(rng, 3, 2, 2);
  auto left = meinert_union({meinert_union({a, b}), c});
  auto right = meinert_union({a, meinert_union({b, c})});
  CHECK(left.points().size() == right.points().size());
  CHECK(left.factor_dims() == right.factor_dims());
  // Embedded coordinates of second-factor points sit past the first block.
  auto v = u.embedded(3);
  CHECK(v.size() == 5);
  CHECK((v[0] == 0 && v[1] == 0));
}

TEST_CASE("orbit sums are nonzero and invariant when certified") {
  Rng rng(167);
  SUBCASE("a fixed point is its own orbit sum") {
    auto set = random_certified_set(rng, 1, 3, 1);
    auto lambda = invariant_discrete_character(set, {0});
    CHECK(lambda == set.embedded(0));
  }
  SUBCASE("two point orbits add") {
    SpherePointSet set({{1, 2}},
                       {{1, PointTag::IsolatedRational, {1, 0}},
                        {1, PointTag::IsolatedRational, {0, 1}}},
                       {{1, {1, 1}}});
    auto lambda = invariant_discrete_character(set, {1, 0});
    CHECK(lambda == std::vector<std::int64_t>{1, 1});
  }
  SUBCASE("random certified sets with random permutation actions") {
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t count = 2 + rng.below(4);
      auto set = random_certified_set(rng, 1, 2 + rng.below(3), count);
      auto perm = rng.permutation((int)count);
      std::vector<std::size_t> action(perm.begin(), perm.end());
      std::size_t start = rng.below(count);
      auto lambda = invariant_discrete_character(set, action, start);
      bool zero = true;
      for (auto v : lambda) zero = zero && v == 0;
      CHECK_FALSE(zero);
      // Invariance: resumming the orbit after applying the action once gives
      // the same primitive vector.
      std::vector<std::size_t> orbit;
      for (std::size_t i = start; orbit.empty() || i != start; i = action[i])
        orbit.push_back(i);
      std::vector<std::int64_t> after(lambda.size(), 0);
      for (std::size_t i : orbit) {
        auto v = set.embedded(action[i]);
        for (std::size_t k = 0; k < v.size(); ++k) after[k] += v[k];
      }
      std::int64_t g = 0;
      for (auto v : after) g = std::gcd(g, v < 0 ? -v : v);
      for (auto& v : after) v /= g;
      CHECK(after == lambda);
    }
  }
  SUBCASE("antipodal orbits are refused") {
    SpherePointSet set({{1, 2}},
                       {{1, PointTag::IsolatedRational, {1, 1}},
                        {1, PointTag::IsolatedRational, {-1, -1}}},
                       {{1, {1, 0}}});
    CHECK_THROWS_AS(invariant_discrete_character(set, {1, 0}), OrbitSumError);
  }
  SUBCASE("uncertified orbits are refused") {
    SpherePointSet set({{1, 2}},
                       {{1, PointTag::IsolatedRational, {1, 0}},
                        {1, PointTag::IsolatedRational, {0, 1}}});
    CHECK_THROWS_AS(invariant_discrete_character(set, {1, 0}), OrbitSumError);
  }
  SUBCASE("empty sets and tag breaking actions are refused") {
    SpherePointSet empty({{1, 2}}, {});
    CHECK_THROWS_AS(invariant_discrete_character(empty, {}), OrbitSumError);
    SpherePointSet mixed({{1, 2}},
                         {{1, PointTag::IsolatedRational, {1, 0}},
                          {1, PointTag::Limit, {0, 1}}},
                         {{1, {1, 1}}});
    CHECK_THROWS_AS(invariant_discrete_character(mixed, {1, 0}), std::invalid_argument);
  }
}
