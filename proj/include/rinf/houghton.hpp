#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rinf/linalg.hpp"
#include "rinf/tailed_permutation.hpp"

namespace rinf::houghton {

// An element of the Houghton group H_n: a tailed permutation whose tails are
// pure per-ray translations fixing each ray.  The translation amounts always
// sum to zero; this is forced by bijectivity and re-checked here.
class HoughtonElement {
public:
  explicit HoughtonElement(TailedPermutation f) : f_(std::move(f)) {
    if (!f_.has_translation_tails())
      throw std::invalid_argument("HoughtonElement: tails must be pure translations");
    std::int64_t sum = 0;
    for (int j = 1; j <= f_.ray_count(); ++j) {
      const Tail& t = f_.tail(j);
      if (t.target != j)
        throw std::invalid_argument("HoughtonElement: tails must fix every ray");
      sum += t.offsets[0];
    }
    if (sum != 0) throw std::invalid_argument("HoughtonElement: translation sum nonzero");
  }

  static HoughtonElement identity(int n) { return HoughtonElement(TailedPermutation(n)); }

  // Builds and validates an element from its translations and the finite
  // table of exceptions; points not listed follow the translation rule.
  static HoughtonElement make(int n, const std::map<Point, Point>& exceptions,
                              const std::vector<std::int64_t>& t) {
    std::int64_t sum = 0;
    for (auto v : t) sum += v;
    if (sum != 0) throw std::invalid_argument("HoughtonElement: translation sum nonzero");
    std::vector<Tail> tails((std::size_t)n);
    std::int64_t bound = 1;
    for (int j = 1; j <= n; ++j) {
      tails[j - 1].target = j;
      tails[j - 1].offsets = {t[(std::size_t)j - 1]};
      bound = std::max(bound, 1 - t[(std::size_t)j - 1]);
    }
    for (const auto& [a, b] : exceptions) bound = std::max(bound, a.height + 1);
    std::map<Point, Point> table;
    for (int j = 1; j <= n; ++j)
      for (std::int64_t s = 1; s < bound; ++s) {
        Point x{j, s};
        auto it = exceptions.find(x);
        Point y = it != exceptions.end() ? it->second
                                         : Point{j, s + t[(std::size_t)j - 1]};
        if (y.height < 1)
          throw std::invalid_argument("HoughtonElement: image below height 1");
        if (y != x) table.emplace(x, y);
      }
    return HoughtonElement(TailedPermutation(n, bound, std::move(tails), std::move(table)));
  }

  const TailedPermutation& permutation() const { return f_; }
  int ray_count() const { return f_.ray_count(); }
  Point evaluate(Point p) const { return f_.evaluate(p); }
  bool is_identity() const { return f_.is_identity(); }

  HoughtonElement inverse() const { return HoughtonElement(f_.inverse()); }

  friend HoughtonElement operator*(const HoughtonElement& a, const HoughtonElement& b) {
    return HoughtonElement(compose(a.f_, b.f_));
  }

  friend bool operator==(const HoughtonElement&, const HoughtonElement&) = default;

private:
  TailedPermutation f_;
};

// The translation part (t_1, ..., t_n); a homomorphism onto the sum-zero
// lattice with kernel the finitary permutations.
inline std::vector<std::int64_t> translation_part(const HoughtonElement& h) {
  return h.permutation().translation_parts();
}

// The standard generator: height shift up ray p fed by ray n, a single
// infinite cycle through both rays.
inline HoughtonElement generator(int n, int p) {
  if (p < 1 || p >= n) throw std::invalid_argument("generator: need 1 <= p < n");
  std::vector<std::int64_t> t((std::size_t)n, 0);
  t[(std::size_t)p - 1] = 1;
  t[(std::size_t)n - 1] = -1;
  return HoughtonElement::make(n, {{Point{n, 1}, Point{p, 1}}}, t);
}

// The product of one k-cycle ((i,1),...,(i,k)) on every ray: an element of
// order k fixed by every ray relabeling.
inline HoughtonElement torsion_witness(int n, int k) {
  if (k < 1) throw std::invalid_argument("torsion_witness: k must be positive");
  std::map<Point, Point> table;
  for (int i = 1; i <= n; ++i)
    for (std::int64_t s = 1; s <= k; ++s)
      table[Point{i, s}] = Point{i, s % k + 1};
  return HoughtonElement::make(n, table, std::vector<std::int64_t>((std::size_t)n, 0));
}

// Order by iterated composition; orders beyond the cap are reported as an
// error rather than claimed infinite.
inline std::int64_t element_order(const HoughtonElement& h, std::int64_t cap = 10000) {
  HoughtonElement acc = h;
  for (std::int64_t k = 1; k <= cap; ++k) {
    if (acc.is_identity()) return k;
    acc = acc * h;
  }
  throw std::domain_error("element_order: exceeded iteration cap");
}

// The ray-relabeling action psi_sigma: conjugation by (j,s) -> (sigma(j),s).
inline HoughtonElement relabel_action(const std::vector<int>& sigma, const HoughtonElement& h) {
  return HoughtonElement(h.permutation().relabel_rays(sigma));
}

// An element of the normalizer of H_n in S(M_n): translation tails with an
// arbitrary ray permutation.
class NormalizerElement {
public:
  explicit NormalizerElement(TailedPermutation f) : f_(std::move(f)) {
    if (!f_.has_translation_tails())
      throw std::invalid_argument("NormalizerElement: tails must be pure translations");
  }

  const TailedPermutation& permutation() const { return f_; }
  int ray_count() const { return f_.ray_count(); }

  friend NormalizerElement operator*(const NormalizerElement& a, const NormalizerElement& b) {
    return NormalizerElement(compose(a.f_, b.f_));
  }

  friend bool operator==(const NormalizerElement&, const NormalizerElement&) = default;

private:
  TailedPermutation f_;
};

// The ray permutation p -> i_p read off the tails; identity exactly when the
// element lies in H_n.
inline std::vector<int> ray_permutation_of(const NormalizerElement& f) {
  return f.permutation().ray_permutation();
}

// An automorphism of H_n in normal form: the relabeling part followed by an
// inner part, phi = psi_sigma . inner_g.
struct HoughtonAutomorphism {
  std::vector<int> sigma;  // 1-based ray permutation
  HoughtonElement inner;

  int ray_count() const { return inner.ray_count(); }

  HoughtonElement apply(const HoughtonElement& h) const {
    const TailedPermutation& g = inner.permutation();
    return HoughtonElement(
        compose(g, compose(h.permutation(), g.inverse())).relabel_rays(sigma));
  }

  // Semidirect product law: (s1, g1)(s2, g2) = (s1 s2, psi_{s2}^{-1}(g1) g2).
  friend HoughtonAutomorphism operator*(const HoughtonAutomorphism& a,
                                        const HoughtonAutomorphism& b) {
    int n = a.inner.ray_count();
    std::vector<int> sigma((std::size_t)n), inv_b((std::size_t)n);
    for (int j = 1; j <= n; ++j) sigma[j - 1] = a.sigma[(std::size_t)b.sigma[j - 1] - 1];
    for (int j = 1; j <= n; ++j) inv_b[(std::size_t)b.sigma[j - 1] - 1] = j;
    HoughtonElement moved = relabel_action(inv_b, a.inner);
    return {sigma, moved * b.inner};
  }
};

// Splits a normalizer element as ray relabeling times Houghton element, the
// normal form of the automorphism it induces by conjugation.
inline HoughtonAutomorphism decompose_automorphism(const NormalizerElement& f) {
  std::vector<int> sigma = ray_permutation_of(f);
  std::vector<int> inv((std::size_t)sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) inv[(std::size_t)sigma[j] - 1] = (int)j + 1;
  TailedPermutation g = compose(TailedPermutation::ray_relabel_map(inv), f.permutation());
  return {sigma, HoughtonElement(std::move(g))};
}

// The matrix of the induced automorphism of the translation lattice in the
// basis {e_p - e_n : p < n}, together with the rank of its fixed sublattice.
struct TranslationAction {
  Mat matrix;
  std::size_t fixed_rank;
};

inline TranslationAction translation_matrix(const HoughtonAutomorphism& phi) {
  int n = phi.ray_count();
  if (n < 2) throw std::invalid_argument("translation_matrix: need n >= 2");
  std::size_t m = (std::size_t)n - 1;
  Mat M(m, zero_vec(m));
  for (int p = 1; p < n; ++p) {
    int sp = phi.sigma[(std::size_t)p - 1];
    int sn = phi.sigma[(std::size_t)n - 1];
    if (sp < n) M[(std::size_t)sp - 1][(std::size_t)p - 1] += Rational(1);
    if (sn < n) M[(std::size_t)sn - 1][(std::size_t)p - 1] -= Rational(1);
  }
  Mat shifted = M;
  for (std::size_t i = 0; i < m; ++i) shifted[i][i] -= Rational(1);
  return {std::move(M), kernel_basis(std::move(shifted)).size()};
}

// A character of H_n written over the generators chi_1..chi_n of the dual of
// the translation lattice, which satisfy the single relation sum chi_j = 0.
// Stored with the last coordinate normalized to zero.
struct RayCharacter {
  std::vector<std::int64_t> coords;

  static RayCharacter of(std::vector<std::int64_t> c) {
    std::int64_t last = c.back();
    for (auto& v : c) v -= last;
    return {std::move(c)};
  }

  bool is_zero() const {
    for (auto v : coords)
      if (v != 0) return false;
    return true;
  }

  // Precomposition with psi_sigma: coefficients pull back along sigma.
  RayCharacter act_by(const std::vector<int>& sigma) const {
    std::vector<std::int64_t> out(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
      out[i] = coords[(std::size_t)sigma[i] - 1];
    return of(std::move(out));
  }

  friend bool operator==(const RayCharacter&, const RayCharacter&) = default;
};

// Sum of the sigma-orbit of chi_1; zero exactly when sigma is an n-cycle.
inline RayCharacter character_orbit_sum(const std::vector<int>& sigma) {
  std::vector<std::int64_t> c(sigma.size(), 0);
  int j = 1;
  do {
    c[(std::size_t)j - 1] = 1;
    j = sigma[(std::size_t)j - 1];
  } while (j != 1);
  return RayCharacter::of(std::move(c));
}

}  // namespace rinf::houghton
