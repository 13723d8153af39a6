#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rinf/linalg.hpp"

namespace rinf::sphere {

struct NotRealizableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoWitnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Index bookkeeping for the basis {chi_{ij} : i != j} of the character
// lattice, ordered lexicographically by (i, j).
struct PairBasis {
  int n;

  int dim() const { return n * (n - 1); }

  int index(int i, int j) const {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
      throw std::invalid_argument("PairBasis: bad pair");
    return (i - 1) * (n - 1) + (j - 1) - (j > i ? 1 : 0);
  }

  std::pair<int, int> pair_of(int idx) const {
    int i = idx / (n - 1) + 1;
    int r = idx % (n - 1) + 1;
    int j = r + (r >= i ? 1 : 0);
    return {i, j};
  }
};

// An exact rational character in the pair basis.
struct RationalCharacter {
  int n = 2;
  Vec coords;

  static RationalCharacter zero(int n) {
    return {n, zero_vec((std::size_t)(n * (n - 1)))};
  }

  static RationalCharacter basis(int n, int i, int j) {
    RationalCharacter c = zero(n);
    c.coords[(std::size_t)PairBasis{n}.index(i, j)] = Rational(1);
    return c;
  }

  Rational at(int i, int j) const { return coords[(std::size_t)PairBasis{n}.index(i, j)]; }

  bool is_zero() const { return is_zero_vec(coords); }

  friend RationalCharacter operator+(const RationalCharacter& a, const RationalCharacter& b) {
    return {a.n, add(a.coords, b.coords)};
  }
  friend RationalCharacter operator*(const Rational& c, const RationalCharacter& a) {
    return {a.n, scale(c, a.coords)};
  }
  friend bool operator==(const RationalCharacter&, const RationalCharacter&) = default;
};

// A signed permutation matrix T = DP stored by columns: T e_i = sign[i] *
// e_{image[i]} with sign in {+1,-1}.
struct MonomialMatrix {
  std::vector<int> image;
  std::vector<int> sign;

  int dim() const { return (int)image.size(); }

  Vec apply(const Vec& v) const {
    Vec out = zero_vec(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      out[(std::size_t)image[i]] += Rational(sign[i]) * v[i];
    return out;
  }

  Mat to_matrix() const {
    Mat m((std::size_t)dim(), zero_vec((std::size_t)dim()));
    for (int i = 0; i < dim(); ++i)
      m[(std::size_t)image[(std::size_t)i]][(std::size_t)i] = Rational(sign[(std::size_t)i]);
    return m;
  }

  // Matrix product: (a * b) e_i = a(b e_i).
  friend MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b) {
    MonomialMatrix out;
    out.image.resize(b.image.size());
    out.sign.resize(b.sign.size());
    for (std::size_t i = 0; i < b.image.size(); ++i) {
      out.image[i] = a.image[(std::size_t)b.image[i]];
      out.sign[i] = b.sign[i] * a.sign[(std::size_t)b.image[i]];
    }
    return out;
  }

  // The matrix induced on the pair basis by a ray permutation and a table of
  // signs per ordered pair.
  static MonomialMatrix from_pair_action(int n, const std::vector<int>& sigma,
                                         const std::vector<int>& signs) {
    PairBasis basis{n};
    MonomialMatrix m;
    m.image.resize((std::size_t)basis.dim());
    m.sign = signs;
    if ((int)signs.size() != basis.dim())
      throw std::invalid_argument("from_pair_action: bad sign table size");
    for (int idx = 0; idx < basis.dim(); ++idx) {
      auto [i, j] = basis.pair_of(idx);
      m.image[(std::size_t)idx] =
          basis.index(sigma[(std::size_t)i - 1], sigma[(std::size_t)j - 1]);
    }
    return m;
  }

  friend bool operator==(const MonomialMatrix&, const MonomialMatrix&) = default;
};

// Splits a matrix known to be monomial with entries 0, +1, -1 into its
// diagonal and permutation parts; anything else is not the abelianized action
// of an automorphism.
inline MonomialMatrix dp_decompose(const Mat& m) {
  MonomialMatrix out;
  std::size_t dim = m.size();
  out.image.assign(dim, -1);
  out.sign.assign(dim, 0);
  std::vector<bool> row_used(dim, false);
  for (std::size_t col = 0; col < dim; ++col) {
    if (m[col].size() != dim) throw std::invalid_argument("dp_decompose: not square");
    int found = 0;
    for (std::size_t row = 0; row < dim; ++row) {
      const Rational& v = m[row][col];
      if (v.is_zero()) continue;
      ++found;
      if (v != Rational(1) && v != Rational(-1))
        throw NotRealizableError("dp_decompose: entry is not a unit");
      if (row_used[row]) throw NotRealizableError("dp_decompose: column targets collide");
      row_used[row] = true;
      out.image[col] = (int)row;
      out.sign[col] = v == Rational(1) ? 1 : -1;
    }
    if (found != 1) throw NotRealizableError("dp_decompose: not monomial");
  }
  return out;
}

struct CycleEigenvector {
  Vec vector;
  int eigenvalue;           // +1 or -1
  std::vector<int> cycle;   // the supporting index cycle
  int cycle_sign_product;   // product of the signs along the cycle
};

// One real eigenvector per supporting cycle of the index permutation, where
// one exists: the lambda-weighted orbit sum w = sum lambda^r T^r e satisfies
// T w = lambda w whenever lambda^k equals the cycle's sign product.  A cycle
// of even length with sign product -1 acts as a rotation and contributes no
// real eigenvector at all.
inline std::vector<CycleEigenvector> cycle_eigenvectors(const MonomialMatrix& t) {
  std::vector<CycleEigenvector> out;
  std::vector<bool> seen((std::size_t)t.dim(), false);
  for (int start = 0; start < t.dim(); ++start) {
    if (seen[(std::size_t)start]) continue;
    std::vector<int> cycle;
    for (int i = start; !seen[(std::size_t)i]; i = t.image[(std::size_t)i]) {
      seen[(std::size_t)i] = true;
      cycle.push_back(i);
    }
    int eps = 1;
    for (int i : cycle) eps *= t.sign[(std::size_t)i];
    int k = (int)cycle.size();
    std::optional<int> lambda;
    if (eps == 1)
      lambda = 1;
    else if (k % 2 == 1)
      lambda = -1;
    if (!lambda) continue;
    Vec w = zero_vec((std::size_t)t.dim());
    Rational coeff(1);
    for (int r = 0; r < k; ++r) {
      int slot = cycle[(std::size_t)r];
      w[(std::size_t)slot] += coeff;
      coeff *= Rational(*lambda * t.sign[(std::size_t)slot]);
    }
    out.push_back({std::move(w), *lambda, std::move(cycle), eps});
  }
  return out;
}

struct PairAction {
  std::vector<int> sigma;       // 1-based ray permutation
  std::vector<int> pair_signs;  // epsilon_{ij} per slot, lex order
};

// Reads off the unique ray permutation sigma with slot (i,j) -> (sigma i,
// sigma j), together with all the signs; a slot permutation incompatible
// with every sigma is rejected.
inline PairAction eta_extraction(const MonomialMatrix& m, int n) {
  PairBasis basis{n};
  if (m.dim() != basis.dim())
    throw std::invalid_argument("eta_extraction: dimension mismatch");
  std::vector<int> sigma((std::size_t)n, 0);
  for (int idx = 0; idx < basis.dim(); ++idx) {
    auto [i, j] = basis.pair_of(idx);
    auto [p, q] = basis.pair_of(m.image[(std::size_t)idx]);
    for (auto [from, to] : {std::pair{i, p}, std::pair{j, q}}) {
      int& slot = sigma[(std::size_t)from - 1];
      if (slot == 0)
        slot = to;
      else if (slot != to)
        throw NotRealizableError("eta_extraction: slots are inconsistent with a ray permutation");
    }
  }
  std::vector<bool> hit((std::size_t)n, false);
  for (int v : sigma) {
    if (v == 0 || hit[(std::size_t)v - 1])
      throw NotRealizableError("eta_extraction: no ray permutation fits");
    hit[(std::size_t)v - 1] = true;
  }
  return {std::move(sigma), m.sign};
}

struct UVWitness {
  RationalCharacter u;
  RationalCharacter v;
  int eigenvalue;           // common eigenvalue of u and v
  std::pair<int, int> distinguished;  // the ordered pair relabeled to (1,2)
  std::vector<int> relabel;           // 1-based, maps distinguished to (1,2)
};

namespace detail {

inline std::vector<int> slot_orbit(const MonomialMatrix& m, int start) {
  std::vector<int> orbit{start};
  for (int i = m.image[(std::size_t)start]; i != start; i = m.image[(std::size_t)i])
    orbit.push_back(i);
  return orbit;
}

inline std::optional<Vec> orbit_eigenvector(const MonomialMatrix& m,
                                            const std::vector<int>& orbit, int lambda) {
  int eps = 1;
  for (int i : orbit) eps *= m.sign[(std::size_t)i];
  int k = (int)orbit.size();
  bool achievable = (lambda == 1 && eps == 1) || (lambda == -1 && eps == (k % 2 ? -1 : 1));
  if (!achievable) return std::nullopt;
  Vec w = zero_vec((std::size_t)m.dim());
  Rational coeff(1);
  for (int r = 0; r < k; ++r) {
    int slot = orbit[(std::size_t)r];
    w[(std::size_t)slot] += coeff;
    coeff *= Rational(lambda * m.sign[(std::size_t)slot]);
  }
  return w;
}

// The relabeling sending i -> 1 and j -> 2, filling the rest in order.
inline std::vector<int> relabel_to_front(int n, int i, int j) {
  std::vector<int> out((std::size_t)n, 0);
  out[(std::size_t)i - 1] = 1;
  out[(std::size_t)j - 1] = 2;
  int next = 3;
  for (int r = 1; r <= n; ++r)
    if (r != i && r != j) out[(std::size_t)r - 1] = next++;
  return out;
}

}  // namespace detail

// Eigenvectors u and v with a common eigenvalue such that u has a chi_{ij}
// component and v a chi_{ji} component on orbits that do not meet: the raw
// material for the commutator argument.  The pair (i,j) follows the cycle
// analysis of the ray permutation, falling back to an exhaustive scan when
// the preferred pair's orbits carry no common real eigenvalue.
inline UVWitness build_uv(const MonomialMatrix& m, int n,
                          std::optional<int> require_eigenvalue = std::nullopt) {
  PairAction act = eta_extraction(m, n);
  PairBasis basis{n};
  bool moved = false;
  for (int r = 1; r <= n; ++r) moved = moved || act.sigma[(std::size_t)r - 1] != r;
  if (!moved)
    throw std::invalid_argument(
        "build_uv: the ray permutation is trivial; use the fixed-character route");

  auto try_pair = [&](int i, int j) -> std::optional<UVWitness> {
    auto orbit_u = detail::slot_orbit(m, basis.index(i, j));
    auto orbit_v = detail::slot_orbit(m, basis.index(j, i));
    for (int s : orbit_u)
      if (s == basis.index(j, i)) return std::nullopt;  // same orbit
    for (int lambda : {require_eigenvalue.value_or(1), require_eigenvalue.value_or(-1)}) {
      auto wu = detail::orbit_eigenvector(m, orbit_u, lambda);
      auto wv = detail::orbit_eigenvector(m, orbit_v, lambda);
      if (wu && wv)
        return UVWitness{{n, std::move(*wu)},
                         {n, std::move(*wv)},
                         lambda,
                         {i, j},
                         detail::relabel_to_front(n, i, j)};
    }
    return std::nullopt;
  };

  // Cycle of length > 2: take i inside it and j its successor.
  std::vector<bool> seen((std::size_t)n + 1, false);
  for (int r = 1; r <= n; ++r) {
    if (seen[(std::size_t)r]) continue;
    std::vector<int> cyc;
    for (int x = r; !seen[(std::size_t)x]; x = act.sigma[(std::size_t)x - 1]) {
      seen[(std::size_t)x] = true;
      cyc.push_back(x);
    }
    if (cyc.size() > 2)
      if (auto w = try_pair(cyc[0], act.sigma[(std::size_t)cyc[0] - 1])) return *w;
  }
  // Product of disjoint transpositions: transposition member with a fixed
  // point, or with a member of another transposition.
  int a = 0, fixed = 0, other = 0;
  for (int r = 1; r <= n && a == 0; ++r)
    if (act.sigma[(std::size_t)r - 1] != r) a = r;
  for (int r = 1; r <= n && fixed == 0; ++r)
    if (act.sigma[(std::size_t)r - 1] == r) fixed = r;
  for (int r = 1; r <= n && other == 0; ++r)
    if (act.sigma[(std::size_t)r - 1] != r && r != a && r != act.sigma[(std::size_t)a - 1])
      other = r;
  if (fixed)
    if (auto w = try_pair(a, fixed)) return *w;
  if (other)
    if (auto w = try_pair(a, other)) return *w;
  // Exhaustive fallback over ordered pairs.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (auto w = try_pair(i, j)) return *w;
    }
  throw NoWitnessError("build_uv: no pair of disjoint orbits carries a common real eigenvalue");
}

// The commutator pairing read off the distinguished coordinates: with (p,q)
// the (chi_{ij}, chi_{ji}) coefficients of b and (r,s) those of c, the image
// of [beta,gamma] in the rank-one commutator quotient is p s - q r.
inline std::int64_t commutator_index(const RationalCharacter& b, const RationalCharacter& c,
                                     std::pair<int, int> distinguished = {1, 2}) {
  auto [i, j] = distinguished;
  Rational p = b.at(i, j), q = b.at(j, i);
  Rational r = c.at(i, j), s = c.at(j, i);
  return (p * s - q * r).as_integer();
}

struct InvariantCharacter {
  RationalCharacter lambda;
};

struct CommutatorWitness {
  UVWitness uv;
  std::int64_t index;
};

// Matrices with no fixed character and no eigenvalue -1 pair in the required
// position; every supporting cycle is an even rotation block.
struct NoRealWitness {
  std::string reason;
};

using GnWitness = std::variant<InvariantCharacter, CommutatorWitness, NoRealWitness>;

// The full pipeline: a nonzero fixed character when 1 is an eigenvalue,
// otherwise an eigenvalue -1 pair (u, v) with nonzero commutator index.
inline GnWitness gn_witness(const MonomialMatrix& m, int n) {
  PairAction act = eta_extraction(m, n);
  for (const auto& ev : cycle_eigenvectors(m))
    if (ev.eigenvalue == 1) return InvariantCharacter{{n, ev.vector}};
  bool moved = false;
  for (int r = 1; r <= n; ++r) moved = moved || act.sigma[(std::size_t)r - 1] != r;
  if (!moved) {
    // No eigenvalue 1 with a trivial ray permutation means m = -identity.
    UVWitness w{RationalCharacter::basis(n, 1, 2),
                RationalCharacter::basis(n, 2, 1),
                -1,
                {1, 2},
                detail::relabel_to_front(n, 1, 2)};
    return CommutatorWitness{std::move(w), 1};
  }
  try {
    UVWitness w = build_uv(m, n, -1);
    std::int64_t index = commutator_index(w.u, w.v, w.distinguished);
    return CommutatorWitness{std::move(w), index};
  } catch (const NoWitnessError& e) {
    return NoRealWitness{e.what()};
  }
}

// ---- the Sigma-complement of the pure symmetric automorphism group ---------

struct SubspaceBasis {
  std::string label;
  std::vector<RationalCharacter> spanning;
};

inline SubspaceBasis make_A(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return {"A(" + std::to_string(i) + "," + std::to_string(j) + ")",
          {RationalCharacter::basis(n, i, j), RationalCharacter::basis(n, j, i)}};
}

inline SubspaceBasis make_B(int n, int i, int j, int k) {
  int s[3] = {i, j, k};
  std::sort(s, s + 3);
  i = s[0], j = s[1], k = s[2];
  auto diff = [n](int a, int b, int c, int d) {
    return RationalCharacter::basis(n, a, b) + Rational(-1) * RationalCharacter::basis(n, c, d);
  };
  return {"B(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")",
          {diff(i, j, k, j), diff(j, k, i, k), diff(k, i, j, i)}};
}

inline bool subspace_contains(const SubspaceBasis& s, const RationalCharacter& chi) {
  Mat rows;
  for (const auto& v : s.spanning) rows.push_back(v.coords);
  std::size_t base = rank(rows);
  rows.push_back(chi.coords);
  return rank(rows) == base;
}

struct InA {
  int i, j;
  friend bool operator==(const InA&, const InA&) = default;
};
struct InB {
  int i, j, k;
  friend bool operator==(const InB&, const InB&) = default;
};
struct Outside {
  friend bool operator==(const Outside&, const Outside&) = default;
};

using MembershipResult = std::variant<InA, InB, Outside>;

// Membership of a nonzero character in the union of the A and B subspaces,
// decided by exact rank comparison, first match in lexicographic order.
inline MembershipResult sigma_c_membership(int n, const RationalCharacter& chi) {
  if (n < 3) throw std::invalid_argument("sigma_c_membership: need n >= 3");
  if (chi.is_zero()) throw std::invalid_argument("sigma_c_membership: zero character");
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (subspace_contains(make_A(n, i, j), chi)) return InA{i, j};
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        if (subspace_contains(make_B(n, i, j, k), chi)) return InB{i, j, k};
  return Outside{};
}

}  // namespace rinf::sphere
