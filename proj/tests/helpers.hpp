#pragma once

#include <map>
#include <set>
#include <vector>

#include "rinf/cycles.hpp"
#include "rinf/rng.hpp"
#include "rinf/tailed_permutation.hpp"

namespace rinf::testing {

// Builds the element with the given tails and threshold whose finite part
// matches sources to uncovered heights in sorted order.
inline TailedPermutation with_canonical_table(int n, std::int64_t threshold,
                                              std::vector<Tail> tails) {
  std::set<Point> missing;
  for (int j = 1; j <= n; ++j) {
    const Tail& t = tails[(std::size_t)j - 1];
    int p = t.period();
    for (std::int64_t a = 0; a < p; ++a) {
      std::int64_t first_image = TailedPermutation::first_height_in_class(threshold, a, p) +
                                 t.offsets[(std::size_t)a];
      for (std::int64_t v = first_image - p; v >= 1; v -= p) missing.insert({t.target, v});
    }
  }
  if ((std::int64_t)missing.size() != (std::int64_t)n * (threshold - 1))
    throw std::invalid_argument("with_canonical_table: unbalanced tails");
  std::map<Point, Point> table;
  auto it = missing.begin();
  for (int j = 1; j <= n; ++j)
    for (std::int64_t s = 1; s < threshold; ++s) table[{j, s}] = *it++;
  return TailedPermutation(n, threshold, std::move(tails), std::move(table));
}

// Pure translation tails t_1..t_n (sum zero) with optional ray permutation.
inline TailedPermutation translation_element(int n, const std::vector<std::int64_t>& t,
                                             std::int64_t threshold = 1,
                                             const std::vector<int>* rho = nullptr) {
  std::vector<Tail> tails((std::size_t)n);
  for (int j = 1; j <= n; ++j) {
    tails[j - 1].target = rho ? (*rho)[j - 1] : j;
    tails[j - 1].offsets = {t[(std::size_t)j - 1]};
  }
  std::int64_t floor = 1;
  for (auto v : t) floor = std::max(floor, 1 - v);
  return with_canonical_table(n, std::max(threshold, floor), std::move(tails));
}

// The permutation that is k-cycles (s, s+1, ..., s+k-1) forever up `ray`,
// identity elsewhere.
inline TailedPermutation repeating_cycles_element(int n, int ray, int k) {
  std::vector<Tail> tails((std::size_t)n);
  for (int j = 1; j <= n; ++j) tails[j - 1].target = j;
  std::vector<std::int64_t> d((std::size_t)k);
  for (int a = 0; a < k; ++a) d[(std::size_t)a] = (a == k - 1) ? -(k - 1) : 1;
  // offsets indexed by height mod k; pattern starts at heights = 1 mod k
  std::vector<std::int64_t> rot((std::size_t)k);
  for (int a = 0; a < k; ++a) rot[(std::size_t)((a + 1) % k)] = d[(std::size_t)a];
  tails[ray - 1].offsets = rot;
  return with_canonical_table(n, 1, std::move(tails));
}

inline TailedPermutation random_finitary(Rng& rng, int n, std::int64_t top_height = 4) {
  std::vector<Point> pts;
  for (int j = 1; j <= n; ++j)
    for (std::int64_t s = 1; s <= top_height; ++s) pts.push_back({j, s});
  std::vector<Point> image = pts;
  rng.shuffle(image);
  std::map<Point, Point> moved;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] != image[i]) moved[pts[i]] = image[i];
  return TailedPermutation::from_finitary(n, moved);
}

// Random element with pure-translation tails, scrambled by a finitary factor.
inline TailedPermutation random_translation_tailed(Rng& rng, int n, bool permute_rays = false) {
  std::vector<std::int64_t> t((std::size_t)n, 0);
  std::int64_t sum = 0;
  for (int j = 0; j + 1 < n; ++j) {
    t[(std::size_t)j] = rng.range(-2, 2);
    sum += t[(std::size_t)j];
  }
  t[(std::size_t)n - 1] = -sum;
  std::vector<int> rho((std::size_t)n);
  if (permute_rays) {
    auto p = rng.permutation(n);
    for (int j = 0; j < n; ++j) rho[(std::size_t)j] = p[(std::size_t)j] + 1;
  } else {
    for (int j = 0; j < n; ++j) rho[(std::size_t)j] = j + 1;
  }
  TailedPermutation base =
      translation_element(n, t, 1 + (std::int64_t)rng.below(3), &rho);
  TailedPermutation z = random_finitary(rng, n, 3 + (std::int64_t)rng.below(3));
  return rng.coin() ? compose(base, z) : compose(z, base);
}

// Random element whose cycle structure is supported by rail descriptors:
// per ray, identity, a translation, or a repeating bounded-cycle pattern.
inline TailedPermutation random_supported_tailed(Rng& rng, int n) {
  std::vector<Tail> tails((std::size_t)n);
  std::vector<int> translation_rays;
  for (int j = 1; j <= n; ++j) {
    tails[j - 1].target = j;
    switch (rng.below(4)) {
      case 0: tails[j - 1].offsets = {0}; break;
      case 1:
        translation_rays.push_back(j);
        tails[j - 1].offsets = {0};
        break;
      case 2:
        tails[j - 1].offsets =
            rng.coin() ? std::vector<std::int64_t>{1, -1} : std::vector<std::int64_t>{-1, 1};
        break;
      default: {
        // 3-cycle pattern in one of its three rotations
        std::vector<std::int64_t> d{1, 1, -2};
        int r = (int)rng.below(3);
        std::vector<std::int64_t> rot(3);
        for (int a = 0; a < 3; ++a) rot[(std::size_t)((a + r) % 3)] = d[(std::size_t)a];
        tails[j - 1].offsets = rot;
        break;
      }
    }
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < translation_rays.size(); ++i) {
    std::int64_t v = (i + 1 == translation_rays.size()) ? -sum : rng.range(-2, 2);
    tails[(std::size_t)translation_rays[i] - 1].offsets = {v};
    sum += v;
  }
  // Threshold at least 3 keeps every pattern rotation above height 1.
  TailedPermutation base = with_canonical_table(n, 3 + (std::int64_t)rng.below(2), std::move(tails));
  TailedPermutation z = random_finitary(rng, n, 3 + (std::int64_t)rng.below(4));
  return rng.coin() ? compose(base, z) : compose(z, base);
}

// Exhaustive sanity oracle: is g = z f z^{-1} for some finitary z moving only
// the given points?  Small windows only.
inline bool conjugate_by_small_support(const TailedPermutation& f, const TailedPermutation& g,
                                       std::vector<Point> window) {
  std::vector<std::size_t> idx(window.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end());
  do {
    std::map<Point, Point> moved;
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (window[i] != window[idx[i]]) moved[window[i]] = window[idx[i]];
    TailedPermutation z = TailedPermutation::from_finitary(f.ray_count(), moved);
    if (conjugate(z, f) == g) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

}  // namespace rinf::testing
