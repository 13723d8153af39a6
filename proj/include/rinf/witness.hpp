#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "rinf/cycles.hpp"
#include "rinf/tailed_permutation.hpp"

namespace rinf {

// Fix(f) as a finite sporadic set below the threshold plus, per ray, the
// periodic pattern of residues the tail fixes from the threshold on.  An
// identity tail fixes every residue; a tail with some zero offsets fixes an
// arithmetic pattern; most tails fix nothing eventually.
struct FixedSet {
  std::int64_t threshold = 1;
  std::set<Point> sporadic;
  std::vector<std::set<std::int64_t>> fixed_residues;  // per ray, mod the tail period
  std::vector<std::int64_t> periods;

  static FixedSet of(const TailedPermutation& f) {
    FixedSet fs;
    fs.threshold = f.threshold();
    for (int j = 1; j <= f.ray_count(); ++j) {
      const Tail& t = f.tail(j);
      std::set<std::int64_t> fixed;
      if (t.target == j)
        for (std::int64_t a = 0; a < t.period(); ++a)
          if (t.offsets[(std::size_t)a] == 0) fixed.insert(a);
      fs.fixed_residues.push_back(std::move(fixed));
      fs.periods.push_back(t.period());
      for (std::int64_t s = 1; s < f.threshold(); ++s)
        if (f.evaluate({j, s}) == Point{j, s}) fs.sporadic.insert({j, s});
    }
    return fs;
  }

  bool contains(Point p) const {
    if (p.height < threshold) return sporadic.count(p) != 0;
    std::int64_t period = periods[(std::size_t)p.ray - 1];
    return fixed_residues[(std::size_t)p.ray - 1].count(p.height % period) != 0;
  }

  // Whether the two eventual patterns agree on every ray, which is exactly
  // finiteness of the symmetric difference of the fixed sets.
  static bool eventually_equal(const FixedSet& a, const FixedSet& b) {
    for (std::size_t r = 0; r < a.periods.size(); ++r) {
      std::int64_t l = std::lcm(a.periods[r], b.periods[r]);
      for (std::int64_t c = 0; c < l; ++c)
        if (a.fixed_residues[r].count(c % a.periods[r]) !=
            b.fixed_residues[r].count(c % b.periods[r]))
          return false;
    }
    return true;
  }
};

// delta(g, f) = |Fix(g) \ Fix(f)| - |Fix(f) \ Fix(g)|; defined only when the
// symmetric difference is finite, i.e. when the tails of g and f fix the
// same eventual patterns.  Invariant under finitary conjugation of g.
inline std::int64_t relative_fixed_index(const TailedPermutation& g,
                                         const TailedPermutation& f) {
  if (g.ray_count() != f.ray_count())
    throw std::invalid_argument("relative_fixed_index: ray counts differ");
  FixedSet fg = FixedSet::of(g), ff = FixedSet::of(f);
  if (!FixedSet::eventually_equal(fg, ff))
    throw IncomparableError("relative_fixed_index: fixed sets differ in infinitely many points");
  // Beyond both thresholds the fixed sets coincide pointwise, so the whole
  // difference lives below them.
  std::int64_t top = std::max(g.threshold(), f.threshold());
  std::int64_t delta = 0;
  for (int j = 1; j <= g.ray_count(); ++j)
    for (std::int64_t s = 1; s < top; ++s) {
      Point p{j, s};
      bool in_g = g.evaluate(p) == p, in_f = f.evaluate(p) == p;
      if (in_g && !in_f) ++delta;
      if (in_f && !in_g) --delta;
    }
  return delta;
}

// z f z^{-1} for finitary z.
inline TailedPermutation finitary_conjugate(const TailedPermutation& f,
                                            const TailedPermutation& z) {
  if (!z.is_finitary())
    throw std::invalid_argument("finitary_conjugate: conjugator has a nontrivial tail");
  return conjugate(z, f);
}

enum class CertificateKind { ShiftIndex, FixedIndex };

struct Witness {
  TailedPermutation tau;
  std::int64_t certificate = 0;
  CertificateKind kind = CertificateKind::FixedIndex;
};

namespace detail {

// First `count` finite cycles of f whose length satisfies `want`, in order of
// their least point.  Only valid when f has no infinite cycles.
inline std::vector<std::vector<Point>> leading_finite_cycles(
    const TailedPermutation& f, std::size_t count,
    const std::function<bool(std::size_t)>& want) {
  std::vector<std::vector<Point>> found;
  std::set<Point> visited;
  int n = f.ray_count();
  for (std::int64_t s = 1; found.size() < count; ++s) {
    if (s > 1000000) throw std::logic_error("leading_finite_cycles: ran away");
    for (int j = 1; j <= n && found.size() < count; ++j) {
      Point p{j, s};
      if (visited.count(p)) continue;
      std::vector<Point> orbit{p};
      for (Point q = f.evaluate(p); q != p; q = f.evaluate(q)) {
        orbit.push_back(q);
        if (orbit.size() > 1000000) throw std::logic_error("orbit is not finite");
      }
      for (const auto& q : orbit) visited.insert(q);
      if (orbit.size() >= 2 && want(orbit.size())) found.push_back(std::move(orbit));
    }
  }
  return found;
}

}  // namespace detail

// K finitary elements tau_1..tau_K such that the tau_j f lie in pairwise
// distinct S_infinity-conjugacy orbits, certified by pairwise distinct
// invariant values: the rail alignment index when f has an infinite cycle,
// the relative fixed index otherwise.
inline std::vector<Witness> witness_family(const TailedPermutation& f, int count) {
  if (count < 1) throw std::invalid_argument("witness_family: count must be positive");
  std::vector<Witness> out;
  int n = f.ray_count();

  if (f.is_finitary()) {
    // Pairwise distinct cycle types: tau_j f is a fresh (j+1)-cycle.
    std::int64_t base = f.threshold();
    for (const auto& [a, b] : f.table()) base = std::max(base, a.height + 1);
    TailedPermutation f_inv = f.inverse();
    for (int j = 1; j <= count; ++j) {
      std::map<Point, Point> cyc;
      for (int i = 0; i <= j; ++i)
        cyc[Point{1, base + i}] = Point{1, base + (i + 1) % (j + 1)};
      TailedPermutation c = TailedPermutation::from_finitary(n, cyc);
      TailedPermutation tau = compose(c, f_inv);
      out.push_back({tau, relative_fixed_index(compose(tau, f), f), CertificateKind::FixedIndex});
    }
    return out;
  }

  CycleStructure cs = cycle_decomposition(f);
  if (!cs.infinite_cycles.empty()) {
    const InfiniteCycleDescriptor& u = cs.infinite_cycles.front();
    for (int alpha = 1; alpha <= count; ++alpha) {
      TailedPermutation tau = TailedPermutation::transposition(n, u.point_at(0), u.point_at(alpha));
      CycleStructure spliced = cycle_decomposition(compose(tau, f));
      std::optional<std::int64_t> index;
      for (const auto& c : spliced.infinite_cycles) {
        try {
          index = cofinite_shift_index(c, u);
          break;
        } catch (const IncomparableError&) {
        }
      }
      if (!index) throw std::logic_error("witness_family: no comparable spliced cycle");
      out.push_back({tau, *index, CertificateKind::ShiftIndex});
    }
    return out;
  }

  bool long_cycles = false;
  for (const auto& fam : cs.periodic_families) long_cycles |= fam.pattern.size() >= 3;
  auto cycles = detail::leading_finite_cycles(
      f, (std::size_t)count,
      [&](std::size_t len) { return long_cycles ? len >= 3 : len == 2; });
  // Case of no infinite cycle: transpose the first two points of each of the
  // leading >=3-cycles (gains one fixed point each), or undo the leading
  // 2-cycles outright (gains two each) when all cycles are transpositions.
  std::map<Point, Point> moved;
  for (int k = 1; k <= count; ++k) {
    const auto& c = cycles[(std::size_t)k - 1];
    moved[c[0]] = c[1];
    moved[c[1]] = c[0];
    TailedPermutation tau = TailedPermutation::from_finitary(n, moved);
    out.push_back({tau, relative_fixed_index(compose(tau, f), f), CertificateKind::FixedIndex});
  }
  return out;
}

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reconstructs, on the first `window` points of the height-major ordering of
// {1..n} x N, the unique permutation g with theta = conjugation-by-g, from an
// oracle giving theta on transpositions.  Each image g(z_k) is read off as
// the common moved point of theta((z_k, z_{k+1})) and theta((z_k, z_{k+2})).
inline std::vector<std::pair<Point, Point>> recover_conjugator(
    const std::function<TailedPermutation(const TailedPermutation&)>& oracle, int n,
    int window) {
  auto nth_point = [n](int i) {
    return Point{1 + (i - 1) % n, 1 + (std::int64_t)((i - 1) / n)};
  };
  auto moved_pair = [](const TailedPermutation& t) {
    if (!t.is_finitary()) throw OracleError("oracle image is not induced by conjugation");
    auto s = t.support();
    if (s.size() != 2) throw OracleError("oracle image is not a transposition");
    return s;
  };
  std::vector<std::pair<Point, Point>> graph;
  for (int k = 1; k <= window; ++k) {
    auto s1 = moved_pair(oracle(TailedPermutation::transposition(n, nth_point(k), nth_point(k + 1))));
    auto s2 = moved_pair(oracle(TailedPermutation::transposition(n, nth_point(k), nth_point(k + 2))));
    std::vector<Point> common;
    for (const auto& p : s1)
      for (const auto& q : s2)
        if (p == q) common.push_back(p);
    if (common.size() != 1) throw OracleError("oracle images are not induced by conjugation");
    graph.emplace_back(nth_point(k), common.front());
  }
  return graph;
}

}  // namespace rinf
