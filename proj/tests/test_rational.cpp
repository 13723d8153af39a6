#include "doctest.h"
#include "rinf/linalg.hpp"
#include "rinf/rational.hpp"

using namespace rinf;

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) * Rational(3, 7) == Rational(1, 7));
  CHECK(Rational(1, 3) / Rational(1, 3) == Rational(1));
  CHECK(Rational(-5).sign() == -1);
  CHECK(Rational(7, 2) > Rational(3));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational::parse("-3/9") == Rational(-1, 3));
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational(22, 2).as_integer() == 11);
  CHECK_THROWS_AS(Rational(1, 2).as_integer(), std::domain_error);
}

TEST_CASE("rank, kernel and solve over the rationals") {
  Mat m = {{Rational(1), Rational(2), Rational(3)},
           {Rational(2), Rational(4), Rational(6)},
           {Rational(0), Rational(1), Rational(1)}};
  CHECK(rank(m) == 2);
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  for (const auto& row : m) {
    Rational dot(0);
    for (std::size_t i = 0; i < row.size(); ++i) dot += row[i] * ker[0][i];
    CHECK(dot.is_zero());
  }
  auto [ok, x] = solve({{Rational(2), Rational(0)}, {Rational(1), Rational(1)}},
                       {Rational(4), Rational(5)});
  REQUIRE(ok);
  CHECK(x[0] == Rational(2));
  CHECK(x[1] == Rational(3));
  auto [bad, _] = solve({{Rational(1), Rational(1)}, {Rational(2), Rational(2)}},
                        {Rational(1), Rational(3)});
  CHECK_FALSE(bad);
  CHECK(det({{Rational(2), Rational(1)}, {Rational(1), Rational(1)}}) == Rational(1));
  CHECK(det({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}).is_zero());
}
