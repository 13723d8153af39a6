#include <set>

#include "doctest.h"
#include "rinf/twisted.hpp"

using namespace rinf::oracle;

namespace {

GroupMap inversion_map(const FiniteGroupTable& g) {
  GroupMap m;
  for (int x = 0; x < g.order(); ++x) m.image.push_back(g.inverse(x));
  return m;
}

int conjugacy_class_count(const FiniteGroupTable& g) {
  return reidemeister_number(g, identity_map(g));
}

}  // namespace

TEST_CASE("group construction validates the axioms") {
  CHECK_THROWS_AS(FiniteGroupTable("bad", 2, {0, 1, 1, 1}), std::invalid_argument);
  auto c6 = cyclic_group(6);
  CHECK(c6.order() == 6);
  CHECK(c6.element_order(1) == 6);
  CHECK(c6.element_order(3) == 2);
  auto d4 = dihedral_group(4);
  CHECK(d4.order() == 8);
  CHECK(d4.element_order(1) == 4);   // rotation
  CHECK(d4.element_order(4) == 2);   // reflection
  auto s4 = symmetric_group(4);
  CHECK(s4.order() == 24);
  auto a4 = alternating_group(4);
  CHECK(a4.order() == 12);
  CHECK(direct_product(cyclic_group(2), cyclic_group(3)).order() == 6);
}

TEST_CASE("automorphism counts of small groups") {
  CHECK(enumerate_automorphisms(cyclic_group(2)).size() == 1);
  CHECK(enumerate_automorphisms(cyclic_group(4)).size() == 2);
  CHECK(enumerate_automorphisms(cyclic_group(5)).size() == 4);
  auto s3 = symmetric_group(3);
  auto autos = enumerate_automorphisms(s3);
  CHECK(autos.size() == 6);
  // All inner: each coincides with conjugation by some element.
  for (const auto& phi : autos) {
    bool inner = false;
    for (int a = 0; a < s3.order() && !inner; ++a) inner = phi == inner_map(s3, a);
    CHECK(inner);
  }
  // Elementary abelian 2-groups have general-linear many automorphisms.
  auto c2c2 = direct_product(cyclic_group(2), cyclic_group(2));
  CHECK(enumerate_automorphisms(c2c2).size() == 6);
}

TEST_CASE("twisted classes for the identity are conjugacy classes") {
  auto c5 = cyclic_group(5);
  CHECK(reidemeister_number(c5, identity_map(c5)) == 5);
  auto s3 = symmetric_group(3);
  CHECK(conjugacy_class_count(s3) == 3);
  auto d4 = dihedral_group(4);
  CHECK(conjugacy_class_count(d4) == 5);
}

TEST_CASE("twisting by inversion on an odd cyclic group collapses everything") {
  auto c3 = cyclic_group(3);
  CHECK(reidemeister_number(c3, inversion_map(c3)) == 1);
  auto c5 = cyclic_group(5);
  CHECK(reidemeister_number(c5, inversion_map(c5)) == 1);
}

TEST_CASE("twisted class count is blind to inner twists") {
  auto groups = {symmetric_group(3), dihedral_group(4), alternating_group(4)};
  for (const auto& g : groups)
    for (const auto& phi : enumerate_automorphisms(g))
      for (int a = 0; a < g.order(); ++a) {
        auto twisted = compose_maps(inner_map(g, a), phi);
        CHECK(reidemeister_number(g, twisted) == reidemeister_number(g, phi));
      }
}

TEST_CASE("subgroup and quotient scaffolding") {
  auto s3 = symmetric_group(3);
  auto subs = all_subgroups(s3);
  CHECK(subs.size() == 6);  // 1, three C2, A3, S3
  int normal = 0;
  for (auto s : subs)
    if (is_normal_subgroup(s3, s)) ++normal;
  CHECK(normal == 3);
  for (auto s : subs) {
    if (!is_normal_subgroup(s3, s)) continue;
    auto q = quotient_view(s3, s);
    CHECK(q.table.order() * (int)mask_elements(s, s3.order()).size() == 6);
  }
}

TEST_CASE("exact sequence of pointed class sets") {
  auto s3 = symmetric_group(3);
  auto theta = identity_map(s3);
  SUBCASE("trivial subgroup") {
    auto rep = exact_sequence_check(s3, closure_of(s3, 0), theta);
    CHECK(rep.exact());
    CHECK(rep.classes_in_quotient == rep.classes_in_group);
  }
  SUBCASE("whole group collapses the quotient") {
    ElementMask all = (1u << s3.order()) - 1;
    auto rep = exact_sequence_check(s3, all, theta);
    CHECK(rep.exact());
    CHECK(rep.classes_in_quotient == 1);
  }
  SUBCASE("exhaustive over the small catalog") {
    for (const auto& g : group_catalog(8)) {
      auto autos = enumerate_automorphisms(g);
      for (auto n : all_subgroups(g)) {
        if (!is_normal_subgroup(g, n)) continue;
        for (const auto& phi : autos) {
          if (!map_preserves(phi, n, g.order())) continue;
          CHECK(exact_sequence_check(g, n, phi).exact());
        }
      }
    }
  }
}

TEST_CASE("addition formula on hypothesis satisfying triples") {
  SUBCASE("trivial subgroup of an odd cyclic group under inversion") {
    auto c3 = cyclic_group(3);
    auto rep = verify_addition_formula(c3, closure_of(c3, 0), inversion_map(c3));
    CHECK(rep.hypothesis_holds);
    CHECK(rep.lhs == 1);
    CHECK(rep.rhs == 1);
    CHECK(rep.verified());
  }
  SUBCASE("the alternating subgroup with the identity violates the hypothesis") {
    auto s3 = symmetric_group(3);
    ElementMask a3 = 0;
    for (int x = 0; x < s3.order(); ++x)
      if (s3.element_order(x) != 2) a3 |= 1u << x;
    auto rep = verify_addition_formula(s3, a3, identity_map(s3));
    CHECK_FALSE(rep.hypothesis_holds);
    CHECK(rep.violating_coset >= 0);
  }
  SUBCASE("no discrepancies over the small catalog") {
    for (const auto& g : group_catalog(8)) {
      for (const auto& phi : enumerate_automorphisms(g)) {
        for (auto n : all_subgroups(g)) {
          if (!is_normal_subgroup(g, n) || !map_preserves(phi, n, g.order())) continue;
          auto rep = verify_addition_formula(g, n, phi);
          if (rep.hypothesis_holds) CHECK(rep.lhs == rep.rhs);
        }
      }
    }
  }
}

TEST_CASE("power identity for fixed elements") {
  SUBCASE("exponent one is tautological") {
    auto d4 = dihedral_group(4);
    for (const auto& phi : enumerate_automorphisms(d4)) {
      auto rep = power_trick_check(d4, phi, 1);
      CHECK(rep.holds());
    }
  }
  SUBCASE("no counterexample on the small catalog for squares and cubes") {
    for (const auto& g : group_catalog(8))
      for (const auto& phi : enumerate_automorphisms(g))
        for (int e : {2, 3}) CHECK(power_trick_check(g, phi, e).holds());
  }
  SUBCASE("periodic twists reduce to ordinary conjugacy of shifted powers") {
    // theta^2 = conjugation by gamma forces x^2 gamma ~ y^2 gamma for
    // theta-twisted-conjugate fixed points.
    auto d6 = dihedral_group(6);
    auto autos = enumerate_automorphisms(d6);
    auto plain = twisted_classes(d6, identity_map(d6));
    int exercised = 0;
    for (const auto& theta : autos) {
      auto theta2 = compose_maps(theta, theta);
      for (int gamma = 0; gamma < d6.order(); ++gamma) {
        if (!(theta2 == inner_map(d6, gamma))) continue;
        auto base = twisted_classes(d6, theta);
        for (int x = 0; x < d6.order(); ++x) {
          if (theta(x) != x) continue;
          for (int y = 0; y < d6.order(); ++y) {
            if (theta(y) != y) continue;
            if (base.class_of[(std::size_t)x] != base.class_of[(std::size_t)y]) continue;
            int xs = d6.op(d6.power(x, 2), gamma);
            int ys = d6.op(d6.power(y, 2), gamma);
            CHECK(plain.class_of[(std::size_t)xs] == plain.class_of[(std::size_t)ys]);
            ++exercised;
          }
        }
      }
    }
    CHECK(exercised > 0);
  }
}

TEST_CASE("parallel sweep merges to the same totals") {
  auto serial = sweep_catalog(8, {2}, 1);
  auto parallel = sweep_catalog(8, {2}, 2);
  CHECK(serial.triples == parallel.triples);
  CHECK(serial.formula_verified == parallel.formula_verified);
  CHECK(serial.hypothesis_violated == parallel.hypothesis_violated);
  CHECK(serial.exact_ok == serial.triples);
  CHECK(serial.formula_mismatch == 0);
  CHECK(serial.power_telescope_failures == 0);
  CHECK(serial.power_pairs == serial.power_confirmed);
}
