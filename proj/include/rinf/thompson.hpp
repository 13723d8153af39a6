#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rinf/rational.hpp"

namespace rinf::thompson {

// Exact dyadic rational p / 2^k in canonical form (odd numerator or k = 0).
struct Dyadic {
  std::int64_t num = 0;
  int exp = 0;

  Dyadic() = default;
  Dyadic(std::int64_t n) : num(n), exp(0) {}
  Dyadic(std::int64_t n, int k) : num(n), exp(k) {
    if (k < 0 || k > 62) throw std::invalid_argument("Dyadic: exponent out of range");
    canonicalize();
  }

  void canonicalize() {
    if (num == 0) {
      exp = 0;
      return;
    }
    while (exp > 0 && num % 2 == 0) {
      num /= 2;
      --exp;
    }
  }

  static Dyadic with_exponent(std::int64_t n, int k) { return Dyadic(n, k); }

  bool is_integer() const { return exp == 0; }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    int k = std::max(a.exp, b.exp);
    if (k > 62) throw std::overflow_error("Dyadic: exponent overflow");
    return Dyadic(a.scaled_num(k) + b.scaled_num(k), k);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  Dyadic operator-() const {
    Dyadic d;
    d.num = -num;
    d.exp = exp;
    return d;
  }

  // Multiplication by 2^e, exact in both directions.
  Dyadic times_pow2(int e) const {
    if (num == 0) return Dyadic();
    Dyadic d = *this;
    if (e >= 0) {
      while (e > 0 && d.exp > 0) {
        --d.exp;
        --e;
      }
      for (; e > 0; --e) {
        if (d.num > (INT64_MAX >> 1) || d.num < (INT64_MIN >> 1))
          throw std::overflow_error("Dyadic: numerator overflow");
        d.num *= 2;
      }
    } else {
      d.exp += -e;
      if (d.exp > 62) throw std::overflow_error("Dyadic: exponent overflow");
    }
    return d;
  }

  std::int64_t scaled_num(int k) const {
    std::int64_t v = num;
    for (int i = exp; i < k; ++i) {
      if (v > (INT64_MAX >> 1) || v < (INT64_MIN >> 1))
        throw std::overflow_error("Dyadic: numerator overflow");
      v *= 2;
    }
    return v;
  }

  // Representative in [0, 1).
  Dyadic reduced_mod1() const {
    std::int64_t unit = (std::int64_t)1 << exp;
    std::int64_t r = ((num % unit) + unit) % unit;
    return Dyadic(r, exp);
  }

  Rational to_rational() const { return Rational(num, (std::int64_t)1 << exp); }

  std::string str() const {
    if (exp == 0) return std::to_string(num);
    return std::to_string(num) + "/2^" + std::to_string(exp);
  }

  static Dyadic parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Dyadic(std::stoll(s));
    std::string den = s.substr(slash + 1);
    if (den.rfind("2^", 0) != 0) throw std::invalid_argument("Dyadic: denominator must be 2^k");
    return Dyadic(std::stoll(s.substr(0, slash)), std::stoi(den.substr(2)));
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num == b.num && a.exp == b.exp;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) {
    int k = std::max(a.exp, b.exp);
    return a.scaled_num(k) < b.scaled_num(k);
  }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a == b || a < b; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return b <= a; }
};

// An orientation preserving piecewise linear self-map of the dyadic circle
// [0,1)/{0~1} with power-of-two slopes: an element of Thompson's circle
// group.  Canonical form: either a pure rotation, or breakpoints exactly at
// the slope changes; equality of the data decides equality of the maps.
class PLCircleMap {
public:
  // Identity map.
  PLCircleMap() : rotation_(Dyadic(0)) {}

  static PLCircleMap rotation(Dyadic offset) {
    PLCircleMap f;
    f.rotation_ = offset.reduced_mod1();
    return f;
  }

  static PLCircleMap identity() { return PLCircleMap(); }

  // Validates raw breakpoint data: strictly increasing dyadics in [0,1),
  // values in [0,1), slope exponents per segment, continuous around the
  // circle with total winding one.
  PLCircleMap(std::vector<Dyadic> breakpoints, std::vector<Dyadic> values,
              std::vector<int> slope_exponents) {
    if (breakpoints.empty()) throw std::invalid_argument("PLCircleMap: no breakpoints");
    if (breakpoints.size() != values.size() || values.size() != slope_exponents.size())
      throw std::invalid_argument("PLCircleMap: mismatched list lengths");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
      if (breakpoints[i] != breakpoints[i].reduced_mod1())
        throw std::invalid_argument("PLCircleMap: breakpoint outside [0,1)");
      if (values[i] != values[i].reduced_mod1())
        throw std::invalid_argument("PLCircleMap: value outside [0,1)");
      if (i + 1 < breakpoints.size() && !(breakpoints[i] < breakpoints[i + 1]))
        throw std::invalid_argument("PLCircleMap: breakpoints not strictly increasing");
    }
    // Continuity and degree one via the lift.
    Dyadic lift = values[0];
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
      Dyadic next_x =
          i + 1 < breakpoints.size() ? breakpoints[i + 1] : breakpoints[0] + Dyadic(1);
      Dyadic len = next_x - breakpoints[i];
      lift = lift + len.times_pow2(slope_exponents[i]);
      if (i + 1 < breakpoints.size()) {
        Dyadic expect = lift.reduced_mod1();
        if (expect != values[i + 1])
          throw std::invalid_argument("PLCircleMap: discontinuous at breakpoint " +
                                      breakpoints[i + 1].str());
      }
    }
    if (lift != values[0] + Dyadic(1))
      throw std::invalid_argument("PLCircleMap: map does not wind once around the circle");
    breaks_ = std::move(breakpoints);
    values_ = std::move(values);
    exps_ = std::move(slope_exponents);
    canonicalize();
  }

  bool is_rotation() const { return breaks_.empty(); }
  bool is_identity() const { return breaks_.empty() && rotation_.num == 0; }
  Dyadic rotation_offset() const { return rotation_; }

  const std::vector<Dyadic>& breakpoints() const { return breaks_; }
  const std::vector<Dyadic>& values() const { return values_; }
  const std::vector<int>& slope_exponents() const { return exps_; }

  // Membership in the stabilizer of the base point 0 ~ 1.
  bool fixes_base_point() const { return evaluate(Dyadic(0)) == Dyadic(0); }

  Dyadic evaluate(Dyadic x) const {
    x = x.reduced_mod1();
    if (is_rotation()) return (x + rotation_).reduced_mod1();
    std::size_t i = segment_of(x);
    // Lift x into [x_0, x_0 + 1): the offset matters mod 1 for slopes < 1.
    Dyadic from = x < breaks_[0] ? x + Dyadic(1) : x;
    return (values_[i] + (from - breaks_[i]).times_pow2(exps_[i])).reduced_mod1();
  }

  int slope_exponent_at(Dyadic x) const {
    x = x.reduced_mod1();
    if (is_rotation()) return 0;
    return exps_[segment_of(x)];
  }

  // Unique preimage, exact.
  Dyadic evaluate_inverse(Dyadic y) const {
    y = y.reduced_mod1();
    if (is_rotation()) return (y - rotation_).reduced_mod1();
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      Dyadic next_x = i + 1 < breaks_.size() ? breaks_[i + 1] : breaks_[0] + Dyadic(1);
      Dyadic len = next_x - breaks_[i];
      Dyadic offset = (y - values_[i]).reduced_mod1();
      Dyadic back = offset.times_pow2(-exps_[i]);
      if (back < len) return (breaks_[i] + back).reduced_mod1();
    }
    throw std::logic_error("PLCircleMap: inverse evaluation found no segment");
  }

  friend bool operator==(const PLCircleMap&, const PLCircleMap&) = default;

private:
  // Index of the segment containing x, where segment i starts at breaks_[i];
  // x below the first breakpoint belongs to the wrapping last segment.
  std::size_t segment_of(Dyadic x) const {
    if (x < breaks_[0]) return breaks_.size() - 1;
    std::size_t i = 0;
    while (i + 1 < breaks_.size() && breaks_[i + 1] <= x) ++i;
    return i;
  }

  void canonicalize() {
    // Drop breakpoints where the slope does not change; continuity holds by
    // construction.
    for (std::size_t i = 0; i < breaks_.size() && breaks_.size() > 1;) {
      std::size_t prev = (i + breaks_.size() - 1) % breaks_.size();
      if (exps_[prev] == exps_[i]) {
        // Check the value continues the previous segment without a jump;
        // the constructor verified interior joints, the wrap joint needs the
        // lift: a breakpoint at index 0 may still be a genuine wrap anchor.
        bool removable = true;
        if (i == 0) {
          Dyadic predicted =
              (values_[prev] + (breaks_[0] + Dyadic(1) - breaks_[prev]).times_pow2(exps_[prev]))
                  .reduced_mod1();
          removable = predicted == values_[0];
        }
        if (removable) {
          breaks_.erase(breaks_.begin() + (std::ptrdiff_t)i);
          values_.erase(values_.begin() + (std::ptrdiff_t)i);
          exps_.erase(exps_.begin() + (std::ptrdiff_t)i);
          continue;
        }
      }
      ++i;
    }
    if (breaks_.size() == 1) {
      // A single segment wraps the whole circle: necessarily slope one, so
      // the map is a rotation.
      rotation_ = (values_[0] - breaks_[0]).reduced_mod1();
      breaks_.clear();
      values_.clear();
      exps_.clear();
    } else if (breaks_.empty()) {
      rotation_ = rotation_.reduced_mod1();
    }
  }

  std::vector<Dyadic> breaks_;
  std::vector<Dyadic> values_;
  std::vector<int> exps_;
  Dyadic rotation_{0};
};

namespace detail {

// Rebuild a map from a candidate breakpoint superset and an exact evaluator.
inline PLCircleMap from_samples(std::vector<Dyadic> candidates,
                                const std::function<Dyadic(Dyadic)>& ev) {
  for (auto& c : candidates) c = c.reduced_mod1();
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (candidates.empty()) {
    Dyadic off = ev(Dyadic(0));
    return PLCircleMap::rotation(off);
  }
  std::vector<Dyadic> values;
  std::vector<int> exps;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Dyadic x = candidates[i];
    Dyadic next = i + 1 < candidates.size() ? candidates[i + 1] : candidates[0] + Dyadic(1);
    Dyadic y = ev(x);
    values.push_back(y);
    // Slope from the exact rise over the segment; candidate sets always
    // refine the true breakpoints, so each piece is affine.
    Dyadic len = next - x;
    Dyadic rise = (ev(next.reduced_mod1()) - y).reduced_mod1();
    if (rise.num == 0) rise = Dyadic(1);  // the image arc wraps fully: slope len^-1
    Rational slope = rise.to_rational() / len.to_rational();
    std::int64_t p = slope.num(), q = slope.den();
    auto log2_of = [](std::int64_t v) {
      int e = 0;
      while (v > 1) {
        if (v % 2 != 0) throw std::invalid_argument("PLCircleMap: slope is not a power of two");
        v /= 2;
        ++e;
      }
      return e;
    };
    exps.push_back(log2_of(p) - log2_of(q));
  }
  return PLCircleMap(std::move(candidates), std::move(values), std::move(exps));
}

}  // namespace detail

// f(g(x)), exact.
inline PLCircleMap compose(const PLCircleMap& f, const PLCircleMap& g) {
  if (f.is_rotation() && g.is_rotation())
    return PLCircleMap::rotation(f.rotation_offset() + g.rotation_offset());
  std::vector<Dyadic> candidates = g.breakpoints();
  for (const auto& b : f.breakpoints()) candidates.push_back(g.evaluate_inverse(b));
  return detail::from_samples(std::move(candidates),
                              [&](Dyadic x) { return f.evaluate(g.evaluate(x)); });
}

inline PLCircleMap inverse(const PLCircleMap& f) {
  if (f.is_rotation()) return PLCircleMap::rotation(-f.rotation_offset());
  std::vector<Dyadic> candidates = f.values();
  return detail::from_samples(std::move(candidates),
                              [&](Dyadic y) { return f.evaluate_inverse(y); });
}

// Conjugation by the reflection x -> 1 - x: an outer automorphism of the
// circle group, an involution.
inline PLCircleMap reflect_conjugate(const PLCircleMap& f) {
  auto mirror = [](Dyadic x) { return (Dyadic(1) - x).reduced_mod1(); };
  if (f.is_rotation()) return PLCircleMap::rotation(-f.rotation_offset());
  std::vector<Dyadic> candidates;
  for (const auto& b : f.breakpoints()) candidates.push_back(mirror(b));
  return detail::from_samples(std::move(candidates),
                              [&](Dyadic x) { return mirror(f.evaluate(mirror(x))); });
}

inline PLCircleMap power(const PLCircleMap& f, int m) {
  if (m == 0) throw std::invalid_argument("power: exponent must be nonzero");
  PLCircleMap base = m > 0 ? f : inverse(f);
  PLCircleMap acc = base;
  for (int i = 1; i < (m > 0 ? m : -m); ++i) acc = compose(acc, base);
  return acc;
}

// The support as exact open arcs.  Wraparound arcs are reported with
// end < start; the full circle appears as the single pair (0, 1).
struct SupportArcs {
  bool full_circle = false;
  std::vector<std::pair<Rational, Rational>> arcs;

  std::size_t component_count() const { return full_circle ? 1 : arcs.size(); }

  friend bool operator==(const SupportArcs&, const SupportArcs&) = default;
};

inline SupportArcs support_components(const PLCircleMap& f) {
  if (f.is_identity()) return {};
  if (f.is_rotation()) return {true, {{Rational(0), Rational(1)}}};
  // Fixed set pieces within one lifted fundamental domain [x_0, x_0 + 1).
  const auto& xs = f.breakpoints();
  std::vector<std::pair<Rational, Rational>> fixed;
  Dyadic lift = f.values()[0];
  // Align the lift branch so that the fixed equation reads L(x) = x + k.
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Dyadic x0 = xs[i];
    Dyadic x1 = i + 1 < xs.size() ? xs[i + 1] : xs[0] + Dyadic(1);
    int e = f.slope_exponents()[i];
    Rational a = x0.to_rational(), b = x1.to_rational(), v = lift.to_rational();
    Rational slope = e >= 0 ? Rational((std::int64_t)1 << e)
                            : Rational(1, (std::int64_t)1 << -e);
    for (std::int64_t k = -1; k <= 1; ++k) {
      // Solve v + slope (x - a) = x + k on [a, b].
      if (e == 0) {
        if (v - a == Rational(k)) fixed.emplace_back(a, b);
      } else {
        Rational root = (Rational(k) + a * slope - v) / (slope - Rational(1));
        if (a <= root && root <= b) fixed.emplace_back(root, root);
      }
    }
    lift = lift + (x1 - x0).times_pow2(e);
  }
  if (fixed.empty()) return {true, {{Rational(0), Rational(1)}}};
  // Merge the fixed pieces circularly (normalize into [base, base + 1)).
  Rational base = xs[0].to_rational();
  auto normalize = [&](Rational t) {
    while (t < base) t += Rational(1);
    while (t >= base + Rational(1)) t -= Rational(1);
    return t;
  };
  for (auto& piece : fixed) {
    Rational len = piece.second - piece.first;
    piece.first = normalize(piece.first);
    piece.second = piece.first + len;
  }
  std::sort(fixed.begin(), fixed.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  std::vector<std::pair<Rational, Rational>> merged;
  for (const auto& piece : fixed) {
    if (!merged.empty() && piece.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, piece.second,
                                      [](const Rational& x, const Rational& y) { return x < y; });
    else
      merged.push_back(piece);
  }
  // Wraparound merge between the last and first pieces.
  if (merged.size() > 1 && merged.back().second >= merged.front().first + Rational(1)) {
    merged.front().first = merged.back().first - Rational(1);
    merged.pop_back();
  }
  SupportArcs out;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const auto& cur = merged[i];
    const auto& nxt = merged[(i + 1) % merged.size()];
    Rational start = cur.second;
    Rational end = i + 1 == merged.size() ? nxt.first + Rational(1) : nxt.first;
    if (start == end) continue;  // touching fixed pieces
    auto wrap = [](Rational t) {
      while (t < Rational(0)) t += Rational(1);
      while (t >= Rational(1)) t -= Rational(1);
      return t;
    };
    out.arcs.emplace_back(wrap(start), wrap(end));
  }
  std::sort(out.arcs.begin(), out.arcs.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  return out;
}

inline std::size_t support_count(const PLCircleMap& f) {
  return support_components(f).component_count();
}

// The canonical one-bump element: slopes 2, 1, 1/2 over [0,1/8], [1/8,1/4],
// [1/4,1/2], identity above; support (0, 1/2).
inline PLCircleMap one_bump() {
  return PLCircleMap({Dyadic(0), Dyadic(1, 3), Dyadic(1, 2), Dyadic(1, 1)},
                     {Dyadic(0), Dyadic(1, 2), Dyadic(3, 3), Dyadic(1, 1)},
                     {1, 0, -1, 0});
}

// k disjoint affine copies of the bump inside (0, 1/2), one support
// component per copy.
inline PLCircleMap lower_half_element(int k) {
  if (k < 1) throw std::invalid_argument("lower_half_element: k must be positive");
  int level = 1;
  while ((1 << level) < 2 * k) ++level;
  ++level;  // intervals ((2i-2)/2^level, (2i-1)/2^level)
  std::vector<Dyadic> breaks, values;
  std::vector<int> exps;
  for (int i = 1; i <= k; ++i) {
    Dyadic a(2 * i - 2, level);
    // Scaled copy of the bump on [a, a + 2^-level]: internal breakpoints at
    // a, a + w/8, a + w/4, a + w/2 with slopes 2, 1, 1/2, then identity.
    breaks.push_back(a);
    values.push_back(a);
    exps.push_back(1);
    breaks.push_back(a + Dyadic(1, level + 3));
    values.push_back(a + Dyadic(1, level + 2));
    exps.push_back(0);
    breaks.push_back(a + Dyadic(1, level + 2));
    values.push_back(a + Dyadic(3, level + 3));
    exps.push_back(-1);
    breaks.push_back(a + Dyadic(1, level + 1));
    values.push_back(a + Dyadic(1, level + 1));
    exps.push_back(0);
  }
  return PLCircleMap(std::move(breaks), std::move(values), std::move(exps));
}

// The reflection-symmetric witness h_k = f_k . reflect(f_k): support halves
// mirror each other, 2k components in all, fixed by the reflection
// conjugation.
inline PLCircleMap mirror_element(int k) {
  PLCircleMap f = lower_half_element(k);
  return compose(f, reflect_conjugate(f));
}

struct PowerSupportReport {
  bool applicable = false;  // false when f has no fixed point
  bool equal = false;
  SupportArcs base;
  SupportArcs powered;
};

// supp(f^m) = supp(f), arc by arc, for maps with a fixed point (each support
// arc then lifts to an orientation preserving interval homeomorphism).
// Fixed-point-free maps are reported out of scope, not failed.
inline PowerSupportReport power_support_check(const PLCircleMap& f, int m) {
  if (m == 0) throw std::invalid_argument("power_support_check: exponent must be nonzero");
  PowerSupportReport rep;
  rep.base = support_components(f);
  if (!f.is_identity() && rep.base.full_circle) return rep;  // no fixed point
  rep.applicable = true;
  rep.powered = support_components(power(f, m));
  rep.equal = rep.base == rep.powered;
  return rep;
}

}  // namespace rinf::thompson
