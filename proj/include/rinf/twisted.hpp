#pragma once

#include <cstdint>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rinf/finite_group.hpp"

namespace rinf::oracle {

// Orbits of x -> g x phi(g^{-1}); class_of[x] identifies the orbit and
// twister[x] is one g carrying the orbit representative to x.
struct TwistedClasses {
  std::vector<int> class_of;
  std::vector<int> representative;  // per class
  std::vector<int> twister;         // per element

  int count() const { return (int)representative.size(); }
};

inline TwistedClasses twisted_classes(const FiniteGroupTable& g, const GroupMap& phi) {
  if (!is_automorphism(g, phi))
    throw std::invalid_argument("twisted_classes: not an automorphism");
  TwistedClasses out;
  out.class_of.assign((std::size_t)g.order(), -1);
  out.twister.assign((std::size_t)g.order(), 0);
  for (int x = 0; x < g.order(); ++x) {
    if (out.class_of[(std::size_t)x] >= 0) continue;
    int id = (int)out.representative.size();
    out.representative.push_back(x);
    for (int gamma = 0; gamma < g.order(); ++gamma) {
      int y = g.op(g.op(gamma, x), phi(g.inverse(gamma)));
      if (out.class_of[(std::size_t)y] < 0) {
        out.class_of[(std::size_t)y] = id;
        out.twister[(std::size_t)y] = gamma;
      }
    }
  }
  return out;
}

inline int reidemeister_number(const FiniteGroupTable& g, const GroupMap& phi) {
  return twisted_classes(g, phi).count();
}

// ---- subgroups and quotients ------------------------------------------------

using ElementMask = std::uint32_t;  // bit per element; groups of order <= 32

inline bool mask_contains(ElementMask m, int x) { return (m >> x) & 1u; }

inline std::vector<int> mask_elements(ElementMask m, int order) {
  std::vector<int> out;
  for (int x = 0; x < order; ++x)
    if (mask_contains(m, x)) out.push_back(x);
  return out;
}

inline ElementMask closure_of(const FiniteGroupTable& g, ElementMask seed) {
  ElementMask m = seed | 1u;
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < g.order(); ++a) {
      if (!mask_contains(m, a)) continue;
      for (int b = 0; b < g.order(); ++b) {
        if (!mask_contains(m, b)) continue;
        int ab = g.op(a, b);
        if (!mask_contains(m, ab)) {
          m |= 1u << ab;
          grew = true;
        }
      }
    }
  }
  return m;
}

inline std::vector<ElementMask> all_subgroups(const FiniteGroupTable& g) {
  std::set<ElementMask> found{closure_of(g, 0)};
  std::vector<ElementMask> work(found.begin(), found.end());
  while (!work.empty()) {
    ElementMask s = work.back();
    work.pop_back();
    for (int x = 1; x < g.order(); ++x) {
      if (mask_contains(s, x)) continue;
      ElementMask bigger = closure_of(g, s | (1u << x));
      if (found.insert(bigger).second) work.push_back(bigger);
    }
  }
  return {found.begin(), found.end()};
}

inline bool is_normal_subgroup(const FiniteGroupTable& g, ElementMask n) {
  for (int a = 0; a < g.order(); ++a)
    for (int x = 0; x < g.order(); ++x)
      if (mask_contains(n, x) && !mask_contains(n, g.conjugate(a, x))) return false;
  return true;
}

inline bool map_preserves(const GroupMap& phi, ElementMask n, int order) {
  for (int x = 0; x < order; ++x)
    if (mask_contains(n, x) && !mask_contains(n, phi(x))) return false;
  return true;
}

// The subgroup as a group of its own, with translation tables to and from the
// parent's element indices.
struct SubgroupView {
  FiniteGroupTable table;
  std::vector<int> to_parent;
  std::vector<int> from_parent;  // -1 off the subgroup
};

inline SubgroupView subgroup_view(const FiniteGroupTable& g, ElementMask n) {
  std::vector<int> elems = mask_elements(n, g.order());
  std::vector<int> from((std::size_t)g.order(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) from[(std::size_t)elems[i]] = (int)i;
  int m = (int)elems.size();
  std::vector<int> t((std::size_t)(m * m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int ab = g.op(elems[(std::size_t)a], elems[(std::size_t)b]);
      if (from[(std::size_t)ab] < 0)
        throw std::invalid_argument("subgroup_view: set is not closed");
      t[(std::size_t)(a * m + b)] = from[(std::size_t)ab];
    }
  return {FiniteGroupTable(g.name() + "-sub", m, std::move(t)), std::move(elems),
          std::move(from)};
}

// The quotient by a normal subgroup, cosets represented by least elements.
struct QuotientView {
  FiniteGroupTable table;
  std::vector<int> coset_of;  // parent element -> coset index
  std::vector<int> rep_of;    // coset index -> least parent element
};

inline QuotientView quotient_view(const FiniteGroupTable& g, ElementMask n) {
  std::vector<int> coset((std::size_t)g.order(), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (coset[(std::size_t)x] >= 0) continue;
    int id = (int)reps.size();
    reps.push_back(x);
    for (int h = 0; h < g.order(); ++h)
      if (mask_contains(n, h)) coset[(std::size_t)g.op(x, h)] = id;
  }
  int q = (int)reps.size();
  std::vector<int> t((std::size_t)(q * q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      t[(std::size_t)(a * q + b)] =
          coset[(std::size_t)g.op(reps[(std::size_t)a], reps[(std::size_t)b])];
  return {FiniteGroupTable(g.name() + "-quot", q, std::move(t)), std::move(coset),
          std::move(reps)};
}

// ---- the exact sequence and the addition formula ----------------------------

struct ExactSequenceReport {
  int classes_in_subgroup = 0;
  int classes_in_group = 0;
  int classes_in_quotient = 0;
  bool projection_surjective = false;
  bool image_equals_fiber = false;

  bool exact() const { return projection_surjective && image_equals_fiber; }
};

// Verifies, by explicit class computation in N, G and G/N, that the induced
// sequence of twisted-class sets is exact: the projection is onto and the
// image of the inclusion is exactly the fiber over the class of the trivial
// coset.
inline ExactSequenceReport exact_sequence_check(const FiniteGroupTable& g, ElementMask n,
                                                const GroupMap& theta) {
  if (!is_normal_subgroup(g, n))
    throw std::invalid_argument("exact_sequence_check: subgroup is not normal");
  if (!map_preserves(theta, n, g.order()))
    throw std::invalid_argument("exact_sequence_check: subgroup is not invariant");
  SubgroupView sub = subgroup_view(g, n);
  QuotientView quot = quotient_view(g, n);

  GroupMap theta_sub, theta_bar;
  for (int x : sub.to_parent) theta_sub.image.push_back(sub.from_parent[(std::size_t)theta(x)]);
  for (int r : quot.rep_of) theta_bar.image.push_back(quot.coset_of[(std::size_t)theta(r)]);

  TwistedClasses in_sub = twisted_classes(sub.table, theta_sub);
  TwistedClasses in_g = twisted_classes(g, theta);
  TwistedClasses in_quot = twisted_classes(quot.table, theta_bar);

  ExactSequenceReport rep;
  rep.classes_in_subgroup = in_sub.count();
  rep.classes_in_group = in_g.count();
  rep.classes_in_quotient = in_quot.count();

  // Projection of classes is well defined and surjective.
  std::vector<std::optional<int>> projected((std::size_t)in_g.count());
  for (int x = 0; x < g.order(); ++x) {
    int cls = in_g.class_of[(std::size_t)x];
    int img = in_quot.class_of[(std::size_t)quot.coset_of[(std::size_t)x]];
    if (projected[(std::size_t)cls] && *projected[(std::size_t)cls] != img)
      throw std::logic_error("exact_sequence_check: projection not constant on a class");
    projected[(std::size_t)cls] = img;
  }
  std::set<int> hit;
  for (const auto& v : projected) hit.insert(*v);
  rep.projection_surjective = (int)hit.size() == in_quot.count();

  // Image of the inclusion against the fiber over the trivial coset class.
  std::set<int> image, fiber;
  for (int x = 0; x < g.order(); ++x)
    if (mask_contains(n, x)) image.insert(in_g.class_of[(std::size_t)x]);
  int trivial = in_quot.class_of[(std::size_t)quot.coset_of[0]];
  for (int c = 0; c < in_g.count(); ++c)
    if (*projected[(std::size_t)c] == trivial) fiber.insert(c);
  rep.image_equals_fiber = image == fiber;
  return rep;
}

struct AdditionFormulaReport {
  bool hypothesis_holds = false;
  int violating_coset = -1;  // least representative of a coset with extra fixed points
  int lhs = 0;               // R(theta)
  int rhs = 0;               // sum over quotient classes of R(iota_alpha theta')
  std::vector<int> summands;

  bool verified() const { return hypothesis_holds && lhs == rhs; }
};

// Checks R(theta) = sum over [alpha N] of R(iota_alpha . theta') with both
// sides computed independently, under the fixed-point hypothesis on the
// quotient action.  A violated hypothesis is reported, not an error.
inline AdditionFormulaReport verify_addition_formula(const FiniteGroupTable& g, ElementMask n,
                                                     const GroupMap& theta) {
  if (!is_normal_subgroup(g, n))
    throw std::invalid_argument("verify_addition_formula: subgroup is not normal");
  if (!map_preserves(theta, n, g.order()))
    throw std::invalid_argument("verify_addition_formula: subgroup is not invariant");
  SubgroupView sub = subgroup_view(g, n);
  QuotientView quot = quotient_view(g, n);
  GroupMap theta_sub, theta_bar;
  for (int x : sub.to_parent) theta_sub.image.push_back(sub.from_parent[(std::size_t)theta(x)]);
  for (int r : quot.rep_of) theta_bar.image.push_back(quot.coset_of[(std::size_t)theta(r)]);

  AdditionFormulaReport rep;
  // Hypothesis: Fix(iota_{alpha N} . theta_bar) is trivial for every alpha.
  for (int a = 0; a < quot.table.order(); ++a) {
    int fixed = 0;
    for (int x = 0; x < quot.table.order(); ++x)
      if (quot.table.conjugate(a, theta_bar(x)) == x) ++fixed;
    if (fixed != 1) {
      rep.hypothesis_holds = false;
      rep.violating_coset = quot.rep_of[(std::size_t)a];
      return rep;
    }
  }
  rep.hypothesis_holds = true;

  rep.lhs = reidemeister_number(g, theta);
  TwistedClasses quot_classes = twisted_classes(quot.table, theta_bar);
  for (int c = 0; c < quot_classes.count(); ++c) {
    // Least parent element over the cosets in this class.
    int alpha = g.order();
    for (int x = 0; x < quot.table.order(); ++x)
      if (quot_classes.class_of[(std::size_t)x] == c)
        alpha = std::min(alpha, quot.rep_of[(std::size_t)x]);
    GroupMap twisted;
    for (int x : sub.to_parent)
      twisted.image.push_back(sub.from_parent[(std::size_t)g.conjugate(alpha, theta(x))]);
    rep.summands.push_back(reidemeister_number(sub.table, twisted));
    rep.rhs += rep.summands.back();
  }
  return rep;
}

struct PowerTrickReport {
  int pairs_checked = 0;
  int pairs_confirmed = 0;
  bool telescoping_verified = true;

  bool holds() const { return pairs_checked == pairs_confirmed && telescoping_verified; }
};

// For x, y fixed by theta and theta-twisted-conjugate via z, the n-th powers
// are theta^n-twisted-conjugate with the same witness: y^n = z^{-1} x^n
// theta^n(z).  Verified literally on every such pair.
inline PowerTrickReport power_trick_check(const FiniteGroupTable& g, const GroupMap& theta,
                                          int n) {
  if (n < 1) throw std::invalid_argument("power_trick_check: n must be positive");
  GroupMap theta_n = identity_map(g);
  for (int i = 0; i < n; ++i) theta_n = compose_maps(theta, theta_n);
  TwistedClasses base = twisted_classes(g, theta);
  TwistedClasses powered = twisted_classes(g, theta_n);
  PowerTrickReport rep;
  for (int x = 0; x < g.order(); ++x) {
    if (theta(x) != x) continue;
    for (int y = 0; y < g.order(); ++y) {
      if (theta(y) != y) continue;
      if (base.class_of[(std::size_t)x] != base.class_of[(std::size_t)y]) continue;
      ++rep.pairs_checked;
      // Witness gamma with y = gamma x theta(gamma^{-1}); z = gamma^{-1}.
      int gx = base.twister[(std::size_t)x];
      int gy = base.twister[(std::size_t)y];
      int gamma = g.op(gy, g.inverse(gx));
      int z = g.inverse(gamma);
      int xn = g.power(x, n);
      int yn = g.power(y, n);
      int telescoped = g.op(g.op(g.inverse(z), xn), theta_n(z));
      if (yn != telescoped) rep.telescoping_verified = false;
      if (powered.class_of[(std::size_t)xn] == powered.class_of[(std::size_t)yn])
        ++rep.pairs_confirmed;
    }
  }
  return rep;
}

// ---- exhaustive sweep -------------------------------------------------------

struct SweepTotals {
  std::int64_t triples = 0;           // (G, N, theta) with invariant normal N
  std::int64_t exact_ok = 0;          // exactness reports that came back exact
  std::int64_t formula_verified = 0;  // addition formula instances, both sides equal
  std::int64_t formula_mismatch = 0;
  std::int64_t hypothesis_violated = 0;
  std::int64_t power_pairs = 0;
  std::int64_t power_confirmed = 0;
  std::int64_t power_telescope_failures = 0;

  void merge(const SweepTotals& o) {
    triples += o.triples;
    exact_ok += o.exact_ok;
    formula_verified += o.formula_verified;
    formula_mismatch += o.formula_mismatch;
    hypothesis_violated += o.hypothesis_violated;
    power_pairs += o.power_pairs;
    power_confirmed += o.power_confirmed;
    power_telescope_failures += o.power_telescope_failures;
  }
};

// Exhaustive run over one group: every automorphism against every invariant
// normal subgroup, plus the power identity for the given exponents.
inline SweepTotals sweep_group(const FiniteGroupTable& g, const std::vector<int>& exponents) {
  SweepTotals totals;
  std::vector<GroupMap> autos = enumerate_automorphisms(g);
  std::vector<ElementMask> normals;
  for (ElementMask s : all_subgroups(g))
    if (is_normal_subgroup(g, s)) normals.push_back(s);
  for (const auto& theta : autos) {
    for (ElementMask n : normals) {
      if (!map_preserves(theta, n, g.order())) continue;
      ++totals.triples;
      if (exact_sequence_check(g, n, theta).exact()) ++totals.exact_ok;
      auto formula = verify_addition_formula(g, n, theta);
      if (!formula.hypothesis_holds)
        ++totals.hypothesis_violated;
      else if (formula.lhs == formula.rhs)
        ++totals.formula_verified;
      else
        ++totals.formula_mismatch;
    }
    for (int e : exponents) {
      auto rep = power_trick_check(g, theta, e);
      totals.power_pairs += rep.pairs_checked;
      totals.power_confirmed += rep.pairs_confirmed;
      if (!rep.telescoping_verified) ++totals.power_telescope_failures;
    }
  }
  return totals;
}

// Whole-catalog sweep, parallel over groups.
inline SweepTotals sweep_catalog(int max_order, const std::vector<int>& exponents,
                                 int jobs = 1) {
  std::vector<FiniteGroupTable> groups = group_catalog(max_order);
  SweepTotals totals;
  if (jobs <= 1) {
    for (const auto& g : groups) totals.merge(sweep_group(g, exponents));
    return totals;
  }
  std::vector<std::future<SweepTotals>> futures;
  std::size_t next = 0;
  while (next < groups.size()) {
    while ((int)futures.size() < jobs && next < groups.size()) {
      const FiniteGroupTable* gp = &groups[next++];
      futures.push_back(std::async(std::launch::async,
                                   [gp, &exponents] { return sweep_group(*gp, exponents); }));
    }
    totals.merge(futures.back().get());
    futures.pop_back();
  }
  for (auto& f : futures) totals.merge(f.get());
  return totals;
}

}  // namespace rinf::oracle
