#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "rinf/tailed_permutation.hpp"

namespace rinf {

// One arithmetic-progression tail of an infinite cycle: the points
// (ray, start), (ray, start + step), ... with step >= 1.
struct Rail {
  int ray = 1;
  std::int64_t start = 1;
  std::int64_t step = 1;

  bool contains(Point p) const {
    return p.ray == ray && p.height >= start && (p.height - start) % step == 0;
  }
  std::int64_t position(Point p) const { return (p.height - start) / step; }

  friend bool operator==(const Rail&, const Rail&) = default;
};

inline bool rails_intersect(const Rail& a, const Rail& b) {
  if (a.ray != b.ray) return false;
  return (a.start - b.start) % std::gcd(a.step, b.step) == 0;
}

// A doubly infinite cycle x = (x_k), k in Z, listed explicitly: going
// backward the heights climb the backward rail, then a finite middle
// segment, then the forward rail.  Index 0 is the first middle point
// (or the forward rail start when the middle is empty).  The data is
// canonicalized by absorbing rail-shaped middle points into the rails,
// so two descriptors are equal iff they denote the same cycle.
class InfiniteCycleDescriptor {
public:
  InfiniteCycleDescriptor(Rail backward, std::vector<Point> middle, Rail forward)
      : backward_(backward), middle_(std::move(middle)), forward_(forward) {
    canonicalize();
    validate();
  }

  const Rail& backward() const { return backward_; }
  const Rail& forward() const { return forward_; }
  const std::vector<Point>& middle() const { return middle_; }

  Point point_at(std::int64_t k) const {
    std::int64_t t = (std::int64_t)middle_.size();
    if (k < 0) return {backward_.ray, backward_.start + (-k - 1) * backward_.step};
    if (k < t) return middle_[(std::size_t)k];
    return {forward_.ray, forward_.start + (k - t) * forward_.step};
  }

  std::optional<std::int64_t> index_of(Point p) const {
    if (backward_.contains(p)) return -1 - backward_.position(p);
    for (std::size_t i = 0; i < middle_.size(); ++i)
      if (middle_[i] == p) return (std::int64_t)i;
    if (forward_.contains(p)) return (std::int64_t)middle_.size() + forward_.position(p);
    return std::nullopt;
  }

  bool contains(Point p) const { return index_of(p).has_value(); }

  // The cycle as a permutation: listed points advance, others stay put.
  Point evaluate(Point p) const {
    auto k = index_of(p);
    return k ? point_at(*k + 1) : p;
  }

  friend bool operator==(const InfiniteCycleDescriptor&, const InfiniteCycleDescriptor&) = default;

private:
  void canonicalize() {
    bool changed = true;
    while (changed) {
      changed = false;
      if (!middle_.empty() && forward_.start - forward_.step >= 1 &&
          middle_.back() == Point{forward_.ray, forward_.start - forward_.step}) {
        forward_.start -= forward_.step;
        middle_.pop_back();
        changed = true;
      }
      if (!middle_.empty() && backward_.start - backward_.step >= 1 &&
          middle_.front() == Point{backward_.ray, backward_.start - backward_.step}) {
        backward_.start -= backward_.step;
        middle_.erase(middle_.begin());
        changed = true;
      }
    }
  }

  void validate() const {
    if (backward_.step < 1 || forward_.step < 1 || backward_.start < 1 || forward_.start < 1)
      throw std::invalid_argument("cycle rail: start and step must be positive");
    if (rails_intersect(backward_, forward_))
      throw std::invalid_argument("cycle rails intersect");
    std::set<Point> seen;
    for (const auto& p : middle_) {
      if (backward_.contains(p) || forward_.contains(p) || !seen.insert(p).second)
        throw std::invalid_argument("cycle middle points repeat a listed point");
    }
  }

  Rail backward_;
  std::vector<Point> middle_;
  Rail forward_;
};

// Finite cycles that repeat forever up a ray in steps of `period`:
// the instances are {pattern + i*period : i >= 0}.
struct PeriodicFamily {
  std::vector<Point> pattern;
  std::int64_t period = 1;

  int anchor_ray() const { return pattern.front().ray; }
  std::int64_t anchor_residue() const { return pattern.front().height % period; }

  bool contains(Point p) const { return instance_of(p).has_value(); }

  std::optional<std::int64_t> instance_of(Point p) const {
    for (const auto& q : pattern)
      if (q.ray == p.ray && p.height >= q.height && (p.height - q.height) % period == 0)
        return (p.height - q.height) / period;
    return std::nullopt;
  }

  Point evaluate(Point p) const {
    auto inst = instance_of(p);
    if (!inst) return p;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      Point q = pattern[i];
      if (q.ray == p.ray && q.height + *inst * period == p.height) {
        Point next = pattern[(i + 1) % pattern.size()];
        return {next.ray, next.height + *inst * period};
      }
    }
    return p;
  }

  friend bool operator==(const PeriodicFamily&, const PeriodicFamily&) = default;
};

// Disjoint-cycle decomposition: explicit finite cycles, infinite cycle
// descriptors, and periodic families of finite cycles (each of infinite
// multiplicity).  Fixed points are not listed.
struct CycleStructure {
  std::vector<std::vector<Point>> finite_cycles;
  std::vector<InfiniteCycleDescriptor> infinite_cycles;
  std::vector<PeriodicFamily> periodic_families;

  bool empty() const {
    return finite_cycles.empty() && infinite_cycles.empty() && periodic_families.empty();
  }

  Point evaluate(Point p) const {
    for (const auto& c : finite_cycles)
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] == p) return c[(i + 1) % c.size()];
    for (const auto& d : infinite_cycles)
      if (d.contains(p)) return d.evaluate(p);
    for (const auto& fam : periodic_families)
      if (fam.contains(p)) return fam.evaluate(p);
    return p;
  }
};

// Cycle type c(f): how many cycles of each length, with infinity for the
// lengths realized by periodic families and for the infinite-cycle count
// when it would be unbounded (it never is for tailed permutations).  The
// fixed-point count completes the type into a full conjugacy invariant for
// the ambient symmetric group.
struct CycleType {
  std::map<std::int64_t, std::int64_t> finite_counts;  // length -> count (finite)
  std::set<std::int64_t> unbounded_lengths;            // lengths of infinite multiplicity
  std::int64_t infinite_cycles = 0;
  std::int64_t fixed_points = 0;  // ignored when infinitely_many_fixed
  bool infinitely_many_fixed = false;

  friend bool operator==(const CycleType&, const CycleType&) = default;

  // No cycles at all: the decomposition of the identity.
  bool all_zero() const {
    return finite_counts.empty() && unbounded_lengths.empty() && infinite_cycles == 0;
  }
};

namespace detail {

// Rotates a finite cycle so its least point comes first.
inline std::vector<Point> canonical_cycle(std::vector<Point> c) {
  auto it = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), it, c.end());
  return c;
}

struct ChannelScan {
  std::vector<PeriodicFamily> families;
  bool supported = true;
};

// Analytic scan of the eventual dynamics of f: per cycle of the ray-target
// permutation, the return map on heights is s -> s + D(s mod L).  Residue
// orbits with zero total shift yield periodic families; nonzero shifts are
// escape channels, representable as single-ray rails only when the ray is
// fixed and the offset preserves its residue class.
inline ChannelScan scan_channels(const TailedPermutation& f, std::int64_t family_floor) {
  ChannelScan out;
  int n = f.ray_count();
  std::vector<int> rho = f.ray_permutation();
  std::vector<bool> ray_seen((std::size_t)n + 1, false);
  for (int j0 = 1; j0 <= n; ++j0) {
    if (ray_seen[(std::size_t)j0]) continue;
    std::vector<int> cyc;
    for (int j = j0; !ray_seen[(std::size_t)j]; j = rho[(std::size_t)j - 1]) {
      ray_seen[(std::size_t)j] = true;
      cyc.push_back(j);
    }
    std::int64_t L = 1;
    for (int j : cyc) L = std::lcm(L, (std::int64_t)f.tail(j).period());
    if (L > 2520) throw std::overflow_error("cycle scan: combined tail period too large");
    // Return shift per residue class mod L.
    std::vector<std::int64_t> shift((std::size_t)L, 0);
    for (std::int64_t a = 0; a < L; ++a) {
      std::int64_t h = 0;
      int ray = j0;
      for (std::size_t step = 0; step < cyc.size(); ++step) {
        const Tail& t = f.tail(ray);
        std::int64_t r = ((a + h) % t.period() + t.period()) % t.period();
        h += t.offsets[(std::size_t)r];
        ray = t.target;
      }
      shift[(std::size_t)a] = h;
    }
    std::vector<bool> res_seen((std::size_t)L, false);
    for (std::int64_t a0 = 0; a0 < L; ++a0) {
      if (res_seen[(std::size_t)a0]) continue;
      std::vector<std::int64_t> orbit;
      std::int64_t total = 0;
      for (std::int64_t a = a0; !res_seen[(std::size_t)a];
           a = ((a + shift[(std::size_t)a]) % L + L) % L) {
        res_seen[(std::size_t)a] = true;
        orbit.push_back(a);
        total += shift[(std::size_t)a];
      }
      if (total == 0) {
        bool all_fixed = true;
        for (std::int64_t a : orbit) all_fixed = all_fixed && shift[(std::size_t)a] == 0;
        if (cyc.size() == 1 && orbit.size() == 1 && all_fixed) continue;  // fixed points
        std::int64_t amin = *std::min_element(orbit.begin(), orbit.end());
        Point start{j0, TailedPermutation::first_height_in_class(family_floor, amin, L)};
        std::vector<Point> pattern;
        Point p = start;
        do {
          pattern.push_back(p);
          p = f.evaluate(p);
        } while (p != start);
        out.families.push_back({detail::canonical_cycle(std::move(pattern)), L});
      } else if (cyc.size() != 1 || orbit.size() != 1) {
        out.supported = false;  // escaping channel that hops rays or residues
      }
    }
  }
  return out;
}

}  // namespace detail

// Disjoint-cycle decomposition of a tailed permutation.  Escaping orbits
// whose tails hop between rays or mix residue classes have no faithful
// single-ray rail description and are rejected.
inline CycleStructure cycle_decomposition(const TailedPermutation& f) {
  CycleStructure out;
  TailedPermutation fi = f.inverse();
  int n = f.ray_count();
  std::int64_t E = std::max<std::int64_t>({f.max_abs_offset(), fi.max_abs_offset(), 1});
  std::int64_t P = 1;
  for (int j = 1; j <= n; ++j)
    P = std::lcm(P, std::lcm((std::int64_t)f.tail(j).period(), (std::int64_t)fi.tail(j).period()));
  if (P > 2520) throw std::overflow_error("cycle_decomposition: tail periods too large");
  std::int64_t excursion = (std::int64_t)n * P * E;
  std::int64_t base = std::max(f.threshold(), fi.threshold());
  std::int64_t safe = base + excursion + 2;
  std::int64_t family_floor = safe + excursion + 2;
  std::int64_t high = family_floor + 2 * (excursion + P + 2);

  auto scan = detail::scan_channels(f, family_floor);
  if (!scan.supported)
    throw UnsupportedCycleError(
        "cycle_decomposition: escaping tails that permute rays or residues are not "
        "representable as rail descriptors");
  out.periodic_families = std::move(scan.families);

  auto in_family = [&](Point p) {
    for (const auto& fam : out.periodic_families)
      if (fam.contains(p)) return true;
    return false;
  };
  auto forward_rail_at = [&](Point p) -> std::optional<std::int64_t> {
    if (p.height < safe) return std::nullopt;
    const Tail& t = f.tail(p.ray);
    if (t.target != p.ray) return std::nullopt;
    std::int64_t d = t.offsets[(std::size_t)(p.height % t.period())];
    if (d <= 0 || d % t.period() != 0) return std::nullopt;
    return d;
  };
  auto backward_rail_at = [&](Point p) -> std::optional<std::int64_t> {
    if (p.height < safe) return std::nullopt;
    const Tail& t = fi.tail(p.ray);
    if (t.target != p.ray) return std::nullopt;
    std::int64_t d = t.offsets[(std::size_t)(p.height % t.period())];
    if (d <= 0 || d % t.period() != 0) return std::nullopt;
    return d;
  };

  std::set<Point> visited;
  const std::int64_t step_cap = 4 * n * (high + excursion) + 1000;
  for (std::int64_t s = 1; s <= high; ++s)
    for (int j = 1; j <= n; ++j) {
      Point seed{j, s};
      if (visited.count(seed) || in_family(seed) || f.evaluate(seed) == seed) continue;
      std::vector<Point> fwd_pts;
      std::optional<std::int64_t> fwd_step;
      Point cur = seed;
      bool closed = false;
      for (std::int64_t guard = 0;; ++guard) {
        if (guard > step_cap) throw std::logic_error("cycle_decomposition: walk did not resolve");
        if ((fwd_step = forward_rail_at(cur))) break;
        fwd_pts.push_back(cur);
        cur = f.evaluate(cur);
        if (cur == seed) { closed = true; break; }
      }
      if (closed) {
        for (const auto& p : fwd_pts) visited.insert(p);
        out.finite_cycles.push_back(detail::canonical_cycle(std::move(fwd_pts)));
        continue;
      }
      Rail fwd{cur.ray, cur.height, *fwd_step};
      std::vector<Point> back_pts;
      std::optional<std::int64_t> bwd_step;
      cur = fi.evaluate(seed);
      for (std::int64_t guard = 0;; ++guard) {
        if (guard > step_cap) throw std::logic_error("cycle_decomposition: walk did not resolve");
        if ((bwd_step = backward_rail_at(cur))) break;
        back_pts.push_back(cur);
        cur = fi.evaluate(cur);
      }
      Rail bwd{cur.ray, cur.height, *bwd_step};
      std::vector<Point> middle(back_pts.rbegin(), back_pts.rend());
      middle.insert(middle.end(), fwd_pts.begin(), fwd_pts.end());
      for (const auto& p : middle) visited.insert(p);
      for (std::int64_t h = fwd.start; h <= high; h += fwd.step) visited.insert({fwd.ray, h});
      for (std::int64_t h = bwd.start; h <= high; h += bwd.step) visited.insert({bwd.ray, h});
      out.infinite_cycles.emplace_back(bwd, std::move(middle), fwd);
    }
  return out;
}

inline CycleType cycle_type(const TailedPermutation& f) {
  CycleStructure cs = cycle_decomposition(f);
  CycleType t;
  for (const auto& fam : cs.periodic_families)
    t.unbounded_lengths.insert((std::int64_t)fam.pattern.size());
  for (const auto& c : cs.finite_cycles) {
    std::int64_t len = (std::int64_t)c.size();
    if (!t.unbounded_lengths.count(len)) ++t.finite_counts[len];
  }
  for (auto it = t.finite_counts.begin(); it != t.finite_counts.end();)
    it = t.unbounded_lengths.count(it->first) ? t.finite_counts.erase(it) : std::next(it);
  t.infinite_cycles = (std::int64_t)cs.infinite_cycles.size();
  for (int j = 1; j <= f.ray_count(); ++j) {
    const Tail& tail = f.tail(j);
    if (tail.target == j)
      for (std::int64_t d : tail.offsets)
        if (d == 0) t.infinitely_many_fixed = true;
    for (std::int64_t s = 1; s < f.threshold(); ++s)
      if (f.evaluate({j, s}) == Point{j, s}) ++t.fixed_points;
  }
  if (t.infinitely_many_fixed) t.fixed_points = 0;
  return t;
}

// (x_0, x_k) . x  =  u . v  with u the reindexed infinite cycle and
// v the finite cycle (x_0, ..., x_{k-1}).
inline std::pair<InfiniteCycleDescriptor, std::vector<Point>> splice_same_cycle(
    const InfiniteCycleDescriptor& x, std::int64_t k) {
  if (k <= 0) throw std::invalid_argument("splice_same_cycle: k must be positive");
  std::vector<Point> v;
  v.reserve((std::size_t)k);
  for (std::int64_t i = 0; i < k; ++i) v.push_back(x.point_at(i));
  std::int64_t t = (std::int64_t)x.middle().size();
  Rail fwd = x.forward();
  std::vector<Point> middle;
  if (k < t)
    middle.assign(x.middle().begin() + (std::ptrdiff_t)k, x.middle().end());
  else
    fwd.start += (k - t) * fwd.step;
  return {InfiniteCycleDescriptor(x.backward(), std::move(middle), fwd), std::move(v)};
}

// (x_0, y_0) . x y  =  u . v  crossing the two cycles at index 0.
inline std::pair<InfiniteCycleDescriptor, InfiniteCycleDescriptor> splice_two_cycles(
    const InfiniteCycleDescriptor& x, const InfiniteCycleDescriptor& y) {
  bool disjoint = !rails_intersect(x.backward(), y.backward()) &&
                  !rails_intersect(x.backward(), y.forward()) &&
                  !rails_intersect(x.forward(), y.backward()) &&
                  !rails_intersect(x.forward(), y.forward());
  for (const auto& p : x.middle()) disjoint = disjoint && !y.contains(p);
  for (const auto& p : y.middle()) disjoint = disjoint && !x.contains(p);
  if (!disjoint) throw std::invalid_argument("splice_two_cycles: cycles are not disjoint");
  InfiniteCycleDescriptor u(x.backward(), y.middle(), y.forward());
  InfiniteCycleDescriptor v(y.backward(), x.middle(), x.forward());
  return {std::move(u), std::move(v)};
}

// The conjugation-invariant alignment index between two cycles sharing both
// rails: the unique shift aligning forward tails minus the one aligning
// backward tails.  Finitary conjugation of the parent permutation changes
// finitely many listed points and so changes neither alignment residue.
inline std::int64_t cofinite_shift_index(const InfiniteCycleDescriptor& c,
                                         const InfiniteCycleDescriptor& ref) {
  const Rail &cf = c.forward(), &rf = ref.forward();
  const Rail &cb = c.backward(), &rb = ref.backward();
  if (cf.ray != rf.ray || cf.step != rf.step || (cf.start - rf.start) % cf.step != 0 ||
      cb.ray != rb.ray || cb.step != rb.step || (cb.start - rb.start) % cb.step != 0)
    throw IncomparableError("cofinite_shift_index: cycles do not share their rails");
  std::int64_t h = std::max(cf.start, rf.start);
  std::int64_t fwd_shift = ((std::int64_t)ref.middle().size() + (h - rf.start) / rf.step) -
                           ((std::int64_t)c.middle().size() + (h - cf.start) / cf.step);
  std::int64_t bwd_shift = (rb.start - cb.start) / cb.step;
  return fwd_shift - bwd_shift;
}

}  // namespace rinf
