#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rinf/linalg.hpp"

namespace rinf::sphere {

enum class PointTag { IsolatedRational, RationalLimit, Limit };

// One rational ray of a factor's character sphere: a primitive integer
// direction inside that factor's own coordinate block.
struct SpherePoint {
  int factor = 0;
  PointTag tag = PointTag::IsolatedRational;
  std::vector<std::int64_t> direction;

  void normalize() {
    std::int64_t g = 0;
    for (auto v : direction) g = std::gcd(g, v < 0 ? -v : v);
    if (g == 0) throw std::invalid_argument("SpherePoint: zero direction");
    for (auto& v : direction) v /= g;
  }

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

// A finite tagged set of rational rays spread over factor subspheres, with
// optional strict hemisphere functionals per factor.  The ambient space is
// the direct sum of the factor blocks in factor-id order.
class SpherePointSet {
public:
  SpherePointSet() = default;

  SpherePointSet(std::map<int, std::size_t> factor_dims, std::vector<SpherePoint> points,
                 std::map<int, std::vector<std::int64_t>> hemispheres = {})
      : dims_(std::move(factor_dims)), points_(std::move(points)),
        hemispheres_(std::move(hemispheres)) {
    for (auto& p : points_) {
      auto it = dims_.find(p.factor);
      if (it == dims_.end() || p.direction.size() != it->second)
        throw std::invalid_argument("SpherePointSet: point does not fit its factor block");
      p.normalize();
    }
    for (const auto& [f, functional] : hemispheres_) {
      auto it = dims_.find(f);
      if (it == dims_.end() || functional.size() != it->second)
        throw std::invalid_argument("SpherePointSet: certificate does not fit its factor");
    }
  }

  const std::vector<SpherePoint>& points() const { return points_; }
  const std::map<int, std::size_t>& factor_dims() const { return dims_; }

  std::size_t ambient_dim() const {
    std::size_t d = 0;
    for (const auto& [f, dim] : dims_) d += dim;
    return d;
  }

  std::size_t factor_offset(int factor) const {
    std::size_t off = 0;
    for (const auto& [f, dim] : dims_) {
      if (f == factor) return off;
      off += dim;
    }
    throw std::invalid_argument("SpherePointSet: unknown factor");
  }

  std::vector<std::int64_t> embedded(std::size_t point_index) const {
    const SpherePoint& p = points_.at(point_index);
    std::vector<std::int64_t> v(ambient_dim(), 0);
    std::size_t off = factor_offset(p.factor);
    for (std::size_t i = 0; i < p.direction.size(); ++i) v[off + i] = p.direction[i];
    return v;
  }

  bool certificate_accepts(const SpherePoint& p) const {
    auto it = hemispheres_.find(p.factor);
    if (it == hemispheres_.end()) return false;
    std::int64_t dot = 0;
    for (std::size_t i = 0; i < p.direction.size(); ++i)
      dot += it->second[i] * p.direction[i];
    return dot > 0;
  }

  bool has_certificate(int factor) const { return hemispheres_.count(factor) != 0; }

  const std::map<int, std::vector<std::int64_t>>& hemispheres() const { return hemispheres_; }

private:
  std::map<int, std::size_t> dims_;
  std::vector<SpherePoint> points_;
  std::map<int, std::vector<std::int64_t>> hemispheres_;
};

// Disjoint union of factor sphere data: the point counts add, the tags and
// certificates ride along, and the factor blocks embed as coordinate
// subspheres that meet nowhere.
inline SpherePointSet meinert_union(const std::vector<SpherePointSet>& factors) {
  std::map<int, std::size_t> dims;
  std::vector<SpherePoint> points;
  std::map<int, std::vector<std::int64_t>> hemis;
  for (const auto& part : factors) {
    for (const auto& [f, dim] : part.factor_dims())
      if (!dims.emplace(f, dim).second)
        throw std::invalid_argument("meinert_union: factor index sets overlap");
    for (const auto& p : part.points()) points.push_back(p);
    for (const auto& [f, functional] : part.hemispheres()) hemis.emplace(f, functional);
  }
  return SpherePointSet(std::move(dims), std::move(points), std::move(hemis));
}

struct OrbitSumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The orbit sum of one point under a permutation action on the set, returned
// as a primitive ambient integer vector.  The sum is guaranteed nonzero by a
// hemisphere certificate that must accept every orbit member in some factor,
// and it is fixed by the action since the action permutes the orbit.
inline std::vector<std::int64_t> invariant_discrete_character(
    const SpherePointSet& set, const std::vector<std::size_t>& action,
    std::size_t start = 0) {
  const auto& pts = set.points();
  if (pts.empty()) throw OrbitSumError("orbit sum: empty point set");
  if (action.size() != pts.size())
    throw std::invalid_argument("orbit sum: action size mismatch");
  std::vector<bool> hit(pts.size(), false);
  for (std::size_t i : action) {
    if (i >= pts.size() || hit[i]) throw std::invalid_argument("orbit sum: not a permutation");
    hit[i] = true;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[action[i]].tag != pts[i].tag)
      throw std::invalid_argument("orbit sum: action does not preserve tags");
    if (pts[action[i]].direction.size() != set.factor_dims().at(pts[action[i]].factor))
      throw std::invalid_argument("orbit sum: action breaks factor dimensions");
  }
  std::vector<std::size_t> orbit;
  for (std::size_t i = start; orbit.empty() || i != start; i = action[i]) orbit.push_back(i);
  // Some factor must certify every orbit member it contains, and contain one.
  bool certified = false;
  for (const auto& [f, dim] : set.factor_dims()) {
    bool any = false, all = true;
    for (std::size_t i : orbit) {
      if (pts[i].factor != f) continue;
      any = true;
      all = all && set.certificate_accepts(pts[i]);
    }
    if (any && all && set.has_certificate(f)) certified = true;
  }
  if (!certified)
    throw OrbitSumError("orbit sum may vanish: no hemisphere certificate covers the orbit");
  std::vector<std::int64_t> lambda(set.ambient_dim(), 0);
  for (std::size_t i : orbit) {
    auto v = set.embedded(i);
    for (std::size_t k = 0; k < v.size(); ++k) lambda[k] += v[k];
  }
  std::int64_t g = 0;
  for (auto v : lambda) g = std::gcd(g, v < 0 ? -v : v);
  if (g == 0) throw OrbitSumError("orbit sum may vanish: the sum is zero");
  for (auto& v : lambda) v /= g;
  return lambda;
}

}  // namespace rinf::sphere
