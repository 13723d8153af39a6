#include "doctest.h"
#include "helpers.hpp"
#include "rinf/json_io.hpp"
#include "rinf/rng.hpp"

using namespace rinf;
using namespace rinf::testing;

TEST_CASE("tailed permutations round trip through json") {
  Rng rng(157);
  for (int i = 0; i < 40; ++i) {
    int n = 1 + (int)rng.below(3);
    auto f = rng.coin() ? random_supported_tailed(rng, n) : random_translation_tailed(rng, n, true);
    auto j = io::to_json(f);
    CHECK(io::tailed_permutation_from_json(j) == f);
  }
  // Deserialization re-validates: a corrupted table is refused.
  auto j = io::to_json(translation_element(2, {1, -1}));
  j["table"] = nlohmann::json::array(
      {{{1, 1}, {1, 1}}, {{2, 1}, {1, 1}}});
  CHECK_THROWS_AS(io::tailed_permutation_from_json(j), std::invalid_argument);
}

TEST_CASE("houghton and normalizer elements carry their extra fields") {
  auto h = houghton::generator(3, 1);
  auto j = io::to_json(h);
  CHECK(j.at("translation") == std::vector<std::int64_t>{1, 0, -1});
  CHECK(io::houghton_from_json(j) == h);

  houghton::NormalizerElement f(
      compose(TailedPermutation::ray_relabel_map({2, 1, 3}), h.permutation()));
  auto nj = io::to_json(f);
  CHECK(nj.at("ray_permutation") == std::vector<int>{2, 1, 3});
  CHECK(io::normalizer_from_json(nj) == f);
}

TEST_CASE("group tables round trip and validate") {
  auto s3 = oracle::symmetric_group(3);
  auto j = io::to_json(s3);
  auto back = io::group_from_json(j);
  CHECK(back.order() == 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) CHECK(back.op(a, b) == s3.op(a, b));
  j["table"][0][0] = 3;  // identity row broken
  CHECK_THROWS_AS(io::group_from_json(j), std::invalid_argument);
}

TEST_CASE("characters and monomial matrices round trip") {
  auto chi = sphere::RationalCharacter::basis(3, 1, 2) +
             Rational(-7, 2) * sphere::RationalCharacter::basis(3, 3, 1);
  auto j = io::to_json(chi);
  CHECK(j.at("coords").at("1,2") == "1");
  CHECK(j.at("coords").at("3,1") == "-7/2");
  CHECK(io::character_from_json(j) == chi);

  auto m = sphere::MonomialMatrix::from_pair_action(3, {2, 3, 1},
                                                    {1, -1, 1, -1, 1, -1});
  CHECK(io::monomial_from_json(io::to_json(m, 3)) == m);
  nlohmann::json gen = {{"n", 3},
                        {"sigma", {2, 3, 1}},
                        {"signs", {{"1,2", -1}}}};
  auto from_gen = io::monomial_from_json(gen);
  sphere::PairBasis basis{3};
  CHECK(from_gen.sign[(std::size_t)basis.index(1, 2)] == -1);
  CHECK(from_gen.image[(std::size_t)basis.index(1, 2)] == basis.index(2, 3));
}

TEST_CASE("sphere point sets round trip") {
  sphere::SpherePointSet set({{1, 2}, {2, 3}},
                             {{1, sphere::PointTag::IsolatedRational, {1, 0}},
                              {1, sphere::PointTag::IsolatedRational, {0, 1}},
                              {2, sphere::PointTag::RationalLimit, {1, 1, -1}}},
                             {{1, {1, 1}}});
  auto j = io::to_json(set);
  auto back = io::sphere_points_from_json(j);
  CHECK(back.points().size() == 3);
  CHECK(back.factor_dims() == set.factor_dims());
  CHECK(back.has_certificate(1));
  CHECK_FALSE(back.has_certificate(2));
  CHECK(back.points()[2].tag == sphere::PointTag::RationalLimit);
}

TEST_CASE("circle maps round trip, rotations included") {
  auto f = thompson::mirror_element(2);
  CHECK(io::circle_map_from_json(io::to_json(f)) == f);
  auto r = thompson::PLCircleMap::rotation(thompson::Dyadic(3, 2));
  CHECK(io::circle_map_from_json(io::to_json(r)) == r);
  // Bad slopes rejected.
  auto j = io::to_json(thompson::one_bump());
  j["slopes"][0] = "3";
  CHECK_THROWS_AS(io::circle_map_from_json(j), std::invalid_argument);
}
