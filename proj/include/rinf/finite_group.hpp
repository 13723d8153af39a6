#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rinf::oracle {

// A finite group as a Cayley table.  Elements are indices 0..order-1 with 0
// the identity; associativity, identity and inverses are checked on
// construction, exhaustively.
class FiniteGroupTable {
public:
  FiniteGroupTable(std::string name, int order, std::vector<int> mult)
      : name_(std::move(name)), order_(order), mult_(std::move(mult)) {
    if (order_ < 1 || (int)mult_.size() != order_ * order_)
      throw std::invalid_argument("FiniteGroupTable: bad table size");
    for (int v : mult_)
      if (v < 0 || v >= order_) throw std::invalid_argument("FiniteGroupTable: entry out of range");
    for (int a = 0; a < order_; ++a)
      if (op(0, a) != a || op(a, 0) != a)
        throw std::invalid_argument("FiniteGroupTable: 0 is not an identity");
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c)
          if (op(op(a, b), c) != op(a, op(b, c)))
            throw std::invalid_argument("FiniteGroupTable: not associative");
    inv_.assign((std::size_t)order_, -1);
    for (int a = 0; a < order_; ++a) {
      for (int b = 0; b < order_; ++b)
        if (op(a, b) == 0 && op(b, a) == 0) inv_[(std::size_t)a] = b;
      if (inv_[(std::size_t)a] < 0)
        throw std::invalid_argument("FiniteGroupTable: missing inverse");
    }
  }

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  int op(int a, int b) const { return mult_[(std::size_t)(a * order_ + b)]; }
  int inverse(int a) const { return inv_[(std::size_t)a]; }
  int conjugate(int g, int x) const { return op(op(g, x), inverse(g)); }

  int element_order(int a) const {
    int k = 1;
    for (int acc = a; acc != 0; acc = op(acc, a)) ++k;
    return k;
  }

  int power(int a, int e) const {
    int acc = 0;
    for (int i = 0; i < e; ++i) acc = op(acc, a);
    return acc;
  }

private:
  std::string name_;
  int order_;
  std::vector<int> mult_;
  std::vector<int> inv_;
};

// A map between groups given by its value table; homomorphism and bijectivity
// are checked exhaustively against the supplied groups.
struct GroupMap {
  std::vector<int> image;

  int operator()(int x) const { return image[(std::size_t)x]; }

  friend bool operator==(const GroupMap&, const GroupMap&) = default;
};

inline bool is_homomorphism(const FiniteGroupTable& src, const FiniteGroupTable& dst,
                            const GroupMap& f) {
  if ((int)f.image.size() != src.order()) return false;
  for (int v : f.image)
    if (v < 0 || v >= dst.order()) return false;
  for (int a = 0; a < src.order(); ++a)
    for (int b = 0; b < src.order(); ++b)
      if (f(src.op(a, b)) != dst.op(f(a), f(b))) return false;
  return true;
}

inline bool is_bijective(const GroupMap& f) {
  std::vector<bool> hit(f.image.size(), false);
  for (int v : f.image) {
    if (hit[(std::size_t)v]) return false;
    hit[(std::size_t)v] = true;
  }
  return true;
}

inline bool is_automorphism(const FiniteGroupTable& g, const GroupMap& f) {
  return (int)f.image.size() == g.order() && is_bijective(f) && is_homomorphism(g, g, f);
}

inline GroupMap identity_map(const FiniteGroupTable& g) {
  GroupMap m;
  m.image.resize((std::size_t)g.order());
  std::iota(m.image.begin(), m.image.end(), 0);
  return m;
}

inline GroupMap compose_maps(const GroupMap& f, const GroupMap& g) {
  GroupMap m;
  m.image.reserve(g.image.size());
  for (int v : g.image) m.image.push_back(f(v));
  return m;
}

inline GroupMap inner_map(const FiniteGroupTable& g, int a) {
  GroupMap m;
  m.image.reserve((std::size_t)g.order());
  for (int x = 0; x < g.order(); ++x) m.image.push_back(g.conjugate(a, x));
  return m;
}

inline GroupMap inverse_map(const GroupMap& f) {
  GroupMap m;
  m.image.assign(f.image.size(), 0);
  for (std::size_t x = 0; x < f.image.size(); ++x) m.image[(std::size_t)f.image[x]] = (int)x;
  return m;
}

// ---- constructors ----------------------------------------------------------

inline FiniteGroupTable cyclic_group(int m) {
  std::vector<int> t((std::size_t)(m * m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[(std::size_t)(a * m + b)] = (a + b) % m;
  return FiniteGroupTable("C" + std::to_string(m), m, std::move(t));
}

// Dihedral group of order 2m: index i + m*e encodes r^i s^e.
inline FiniteGroupTable dihedral_group(int m) {
  int n = 2 * m;
  std::vector<int> t((std::size_t)(n * n));
  for (int i = 0; i < m; ++i)
    for (int e = 0; e < 2; ++e)
      for (int j = 0; j < m; ++j)
        for (int f = 0; f < 2; ++f) {
          int rot = ((e ? i - j : i + j) % m + m) % m;
          t[(std::size_t)((i + m * e) * n + (j + m * f))] = rot + m * (e ^ f);
        }
  return FiniteGroupTable("D" + std::to_string(m), n, std::move(t));
}

namespace detail {

inline std::vector<std::vector<int>> permutations_of(int k) {
  std::vector<int> p((std::size_t)k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline bool even_permutation(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0;
}

inline FiniteGroupTable permutation_group(std::string name,
                                          std::vector<std::vector<int>> elems) {
  // Identity first, then reindex so composition closes.
  std::stable_sort(elems.begin(), elems.end(),
                   [](const auto& a, const auto& b) { return a < b; });
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = (int)i;
  int n = (int)elems.size();
  std::vector<int> t((std::size_t)(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod(elems[(std::size_t)a].size());
      for (std::size_t x = 0; x < prod.size(); ++x)
        prod[x] = elems[(std::size_t)a][(std::size_t)elems[(std::size_t)b][x]];
      t[(std::size_t)(a * n + b)] = index.at(prod);
    }
  return FiniteGroupTable(std::move(name), n, std::move(t));
}

}  // namespace detail

inline FiniteGroupTable symmetric_group(int k) {
  return detail::permutation_group("S" + std::to_string(k), detail::permutations_of(k));
}

inline FiniteGroupTable alternating_group(int k) {
  std::vector<std::vector<int>> evens;
  for (auto& p : detail::permutations_of(k))
    if (detail::even_permutation(p)) evens.push_back(p);
  return detail::permutation_group("A" + std::to_string(k), std::move(evens));
}

inline FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b) {
  int n = a.order() * b.order();
  std::vector<int> t((std::size_t)(n * n));
  auto enc = [&](int x, int y) { return x * b.order() + y; };
  for (int x1 = 0; x1 < a.order(); ++x1)
    for (int y1 = 0; y1 < b.order(); ++y1)
      for (int x2 = 0; x2 < a.order(); ++x2)
        for (int y2 = 0; y2 < b.order(); ++y2)
          t[(std::size_t)(enc(x1, y1) * n + enc(x2, y2))] =
              enc(a.op(x1, x2), b.op(y1, y2));
  return FiniteGroupTable(a.name() + "x" + b.name(), n, std::move(t));
}

// The built-in corpus for exhaustive sweeps, every member of order <= cap.
inline std::vector<FiniteGroupTable> group_catalog(int cap) {
  std::vector<FiniteGroupTable> out;
  auto keep = [&](FiniteGroupTable g) {
    if (g.order() <= cap) out.push_back(std::move(g));
  };
  for (int m = 1; m <= std::min(cap, 24); ++m) keep(cyclic_group(m));
  for (int m = 3; 2 * m <= std::min(cap, 24); ++m) keep(dihedral_group(m));
  keep(symmetric_group(3));
  if (cap >= 24) keep(symmetric_group(4));
  keep(alternating_group(4));
  const int c2 = 2, c3 = 3, c4 = 4;
  keep(direct_product(cyclic_group(c2), cyclic_group(c2)));
  keep(direct_product(cyclic_group(c2), cyclic_group(c4)));
  keep(direct_product(cyclic_group(c2), cyclic_group(6)));
  keep(direct_product(cyclic_group(c2), cyclic_group(8)));
  keep(direct_product(cyclic_group(c2), cyclic_group(10)));
  keep(direct_product(cyclic_group(c2), cyclic_group(12)));
  keep(direct_product(cyclic_group(c3), cyclic_group(c3)));
  keep(direct_product(cyclic_group(c3), cyclic_group(6)));
  keep(direct_product(cyclic_group(c4), cyclic_group(c4)));
  keep(direct_product(cyclic_group(c2), direct_product(cyclic_group(c2), cyclic_group(c2))));
  keep(direct_product(cyclic_group(c2), direct_product(cyclic_group(c2), cyclic_group(c4))));
  keep(direct_product(
      cyclic_group(c2),
      direct_product(cyclic_group(c2), direct_product(cyclic_group(c2), cyclic_group(c2)))));
  keep(direct_product(cyclic_group(c2), dihedral_group(3)));
  keep(direct_product(cyclic_group(c2), dihedral_group(4)));
  keep(direct_product(cyclic_group(c2), dihedral_group(5)));
  keep(direct_product(cyclic_group(c2), dihedral_group(6)));
  keep(direct_product(cyclic_group(c3), symmetric_group(3)));
  keep(direct_product(cyclic_group(c2), alternating_group(4)));
  return out;
}

// ---- automorphism enumeration ----------------------------------------------

// A small generating set found greedily by closing least-index elements.
inline std::vector<int> generating_set(const FiniteGroupTable& g) {
  std::vector<int> gens;
  std::vector<bool> closed((std::size_t)g.order(), false);
  closed[0] = true;
  int covered = 1;
  while (covered < g.order()) {
    int pick = 0;
    while (closed[(std::size_t)pick]) ++pick;
    gens.push_back(pick);
    // close under multiplication by the new generator set
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < g.order(); ++a) {
        if (!closed[(std::size_t)a]) continue;
        for (int b : gens) {
          int ab = g.op(a, b);
          if (!closed[(std::size_t)ab]) {
            closed[(std::size_t)ab] = true;
            ++covered;
            grew = true;
          }
        }
      }
    }
  }
  return gens;
}

// All automorphisms of g, by backtracking over generator images filtered by
// element order, then exhaustive homomorphism verification.
inline std::vector<GroupMap> enumerate_automorphisms(const FiniteGroupTable& g,
                                                     int order_bound = 24) {
  if (g.order() > order_bound)
    throw std::invalid_argument("enumerate_automorphisms: order exceeds bound");
  std::vector<int> gens = generating_set(g);
  // Breadth-first words: each element as (previous element) * generator.
  std::vector<int> via_elem((std::size_t)g.order(), -1), via_gen((std::size_t)g.order(), -1);
  std::vector<int> bfs_order{0};
  {
    std::vector<bool> seen((std::size_t)g.order(), false);
    seen[0] = true;
    for (std::size_t qi = 0; qi < bfs_order.size(); ++qi) {
      int a = bfs_order[qi];
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        int ab = g.op(a, gens[gi]);
        if (!seen[(std::size_t)ab]) {
          seen[(std::size_t)ab] = true;
          via_elem[(std::size_t)ab] = a;
          via_gen[(std::size_t)ab] = (int)gi;
          bfs_order.push_back(ab);
        }
      }
    }
  }
  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    int ord = g.element_order(gens[gi]);
    for (int x = 0; x < g.order(); ++x)
      if (g.element_order(x) == ord) candidates[gi].push_back(x);
  }
  std::vector<GroupMap> found;
  std::vector<int> pick(gens.size(), 0);
  std::vector<int> image((std::size_t)g.order());
  auto try_assignment = [&]() {
    image[0] = 0;
    for (int x : bfs_order) {
      if (x == 0) continue;
      image[(std::size_t)x] = g.op(image[(std::size_t)via_elem[(std::size_t)x]],
                                   pick[(std::size_t)via_gen[(std::size_t)x]]);
    }
    GroupMap f{image};
    if (is_bijective(f) && is_homomorphism(g, g, f)) found.push_back(std::move(f));
  };
  // Odometer over candidate tuples.
  std::vector<std::size_t> idx(gens.size(), 0);
  for (;;) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi)
      pick[gi] = candidates[gi][idx[gi]];
    try_assignment();
    std::size_t pos = 0;
    while (pos < gens.size() && ++idx[pos] == candidates[pos].size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == gens.size()) break;
  }
  return found;
}

}  // namespace rinf::oracle
