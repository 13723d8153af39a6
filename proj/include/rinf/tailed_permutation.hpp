#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "rinf/point.hpp"

namespace rinf {

// Eventual behaviour of a permutation on one ray: every point (j,s) with
// s >= threshold is sent to (target, s + offsets[s mod period]).
struct Tail {
  int target = 1;
  std::vector<std::int64_t> offsets{0};  // indexed by height mod period

  int period() const { return (int)offsets.size(); }
  bool is_identity(int ray) const {
    return target == ray && offsets.size() == 1 && offsets[0] == 0;
  }
  std::int64_t min_offset() const { return *std::min_element(offsets.begin(), offsets.end()); }
  std::int64_t max_offset() const { return *std::max_element(offsets.begin(), offsets.end()); }

  friend bool operator==(const Tail&, const Tail&) = default;
};

// A bijection of {1..n} x N given by a finite exception table below a
// threshold and eventually periodic translation tails above it.  This class
// is closed under composition and inversion; it contains the finitary
// permutations, the Houghton elements and their normalizer in S(M_n), and
// products of infinitely many bounded cycles in periodic patterns.
//
// Values are immutable once constructed; construction validates global
// bijectivity and brings the data to a canonical form, so structural
// equality decides functional equality.
class TailedPermutation {
public:
  TailedPermutation() : TailedPermutation(1) {}

  explicit TailedPermutation(int n)
      : n_(n), threshold_(1), tails_((std::size_t)check_ray_count(n)) {
    for (int j = 1; j <= n_; ++j) tails_[j - 1].target = j;
  }

  TailedPermutation(int n, std::int64_t threshold, std::vector<Tail> tails,
                    std::map<Point, Point> table)
      : n_(check_ray_count(n)),
        threshold_(threshold),
        tails_(std::move(tails)),
        table_(std::move(table)) {
    validate();
    normalize();
  }

  static TailedPermutation identity(int n) { return TailedPermutation(n); }

  // Finitary element from an explicit list of moved points.
  static TailedPermutation from_finitary(int n, const std::map<Point, Point>& moved) {
    std::int64_t top = 1;
    for (const auto& [a, b] : moved) top = std::max({top, a.height + 1, b.height + 1});
    std::vector<Tail> tails((std::size_t)n);
    for (int j = 1; j <= n; ++j) tails[j - 1].target = j;
    return TailedPermutation(n, top, std::move(tails), moved);
  }

  static TailedPermutation transposition(int n, Point a, Point b) {
    if (a == b) throw std::invalid_argument("transposition: equal points");
    return from_finitary(n, {{a, b}, {b, a}});
  }

  // The permutation (j,s) -> (sigma(j), s); sigma is 1-based of size n.
  static TailedPermutation ray_relabel_map(const std::vector<int>& sigma) {
    int n = (int)sigma.size();
    std::vector<Tail> tails((std::size_t)n);
    for (int j = 1; j <= n; ++j) tails[j - 1].target = sigma[j - 1];
    return TailedPermutation(n, 1, std::move(tails), {});
  }

  int ray_count() const { return n_; }
  std::int64_t threshold() const { return threshold_; }
  const std::vector<Tail>& tails() const { return tails_; }
  const Tail& tail(int ray) const { return tails_[(std::size_t)ray - 1]; }
  const std::map<Point, Point>& table() const { return table_; }

  Point evaluate(Point x) const {
    check_point(x);
    if (x.height >= threshold_) {
      const Tail& t = tail(x.ray);
      return {t.target, x.height + t.offsets[(std::size_t)(x.height % t.period())]};
    }
    auto it = table_.find(x);
    return it == table_.end() ? x : it->second;
  }

  Point operator()(Point x) const { return evaluate(x); }

  bool is_identity() const {
    if (!table_.empty()) return false;
    for (int j = 1; j <= n_; ++j)
      if (!tail(j).is_identity(j)) return false;
    return true;
  }

  bool is_finitary() const {
    for (int j = 1; j <= n_; ++j)
      if (!tail(j).is_identity(j)) return false;
    return true;
  }

  // Moved points of a finitary element.
  std::vector<Point> support() const {
    if (!is_finitary()) throw std::domain_error("support: element is not finitary");
    std::vector<Point> s;
    for (const auto& [a, b] : table_)
      if (a != b) s.push_back(a);
    return s;
  }

  // Ray-target permutation j -> rho(j).
  std::vector<int> ray_permutation() const {
    std::vector<int> rho((std::size_t)n_);
    for (int j = 1; j <= n_; ++j) rho[j - 1] = tail(j).target;
    return rho;
  }

  bool has_translation_tails() const {
    for (const auto& t : tails_)
      if (t.period() != 1) return false;
    return true;
  }

  // Per-ray translation amounts; requires all periods 1.
  std::vector<std::int64_t> translation_parts() const {
    if (!has_translation_tails())
      throw std::domain_error("translation_parts: tails are not pure translations");
    std::vector<std::int64_t> t((std::size_t)n_);
    for (int j = 1; j <= n_; ++j) t[j - 1] = tail(j).offsets[0];
    return t;
  }

  std::int64_t max_abs_offset() const {
    std::int64_t m = 0;
    for (const auto& t : tails_) {
      m = std::max(m, t.max_offset() < 0 ? -t.max_offset() : t.max_offset());
      m = std::max(m, t.min_offset() < 0 ? -t.min_offset() : t.min_offset());
    }
    return m;
  }

  int max_period() const {
    int p = 1;
    for (const auto& t : tails_) p = std::max(p, t.period());
    return p;
  }

  // f(g(x)).
  friend TailedPermutation compose(const TailedPermutation& f, const TailedPermutation& g) {
    if (f.n_ != g.n_) throw std::invalid_argument("compose: ray counts differ");
    int n = f.n_;
    std::vector<Tail> tails((std::size_t)n);
    std::int64_t bound = std::max(g.threshold_, f.threshold_ + g.max_abs_offset());
    for (int j = 1; j <= n; ++j) {
      const Tail& tg = g.tail(j);
      const Tail& tf = f.tail(tg.target);
      std::int64_t period = std::lcm((std::int64_t)tg.period(), (std::int64_t)tf.period());
      if (period > 2520) throw std::overflow_error("compose: tail period too large");
      Tail h;
      h.target = tf.target;
      h.offsets.assign((std::size_t)period, 0);
      for (std::int64_t a = 0; a < period; ++a) {
        std::int64_t d1 = tg.offsets[(std::size_t)(a % tg.period())];
        std::int64_t mid = ((a + d1) % tf.period() + tf.period()) % tf.period();
        h.offsets[(std::size_t)a] = d1 + tf.offsets[(std::size_t)mid];
      }
      tails[j - 1] = std::move(h);
    }
    std::map<Point, Point> table;
    for (int j = 1; j <= n; ++j)
      for (std::int64_t s = 1; s < bound; ++s) {
        Point x{j, s};
        Point y = f.evaluate(g.evaluate(x));
        if (y != x) table.emplace(x, y);
      }
    return TailedPermutation(n, bound, std::move(tails), std::move(table));
  }

  TailedPermutation inverse() const {
    std::vector<Tail> tails((std::size_t)n_);
    std::int64_t bound = 1;
    for (int j = 1; j <= n_; ++j) {
      const Tail& t = tail(j);
      int p = t.period();
      Tail& inv = tails[(std::size_t)t.target - 1];
      inv.target = j;
      inv.offsets.assign((std::size_t)p, 0);
      for (std::int64_t a = 0; a < p; ++a) {
        std::int64_t sa = first_height_in_class(threshold_, a, p);
        std::int64_t image = sa + t.offsets[(std::size_t)a];
        std::int64_t b = ((a + t.offsets[(std::size_t)a]) % p + p) % p;
        inv.offsets[(std::size_t)b] = -t.offsets[(std::size_t)a];
        bound = std::max(bound, image);
      }
    }
    std::map<Point, Point> table;
    std::int64_t scan = bound + max_abs_offset() + max_period() + 1;
    for (int j = 1; j <= n_; ++j)
      for (std::int64_t s = 1; s <= scan; ++s) {
        Point x{j, s};
        Point y = evaluate(x);
        if (y.height < bound && y != x) table.emplace(y, x);
      }
    return TailedPermutation(n_, bound, std::move(tails), std::move(table));
  }

  // sigma f sigma^{-1} where sigma permutes rays and fixes heights.
  TailedPermutation relabel_rays(const std::vector<int>& sigma) const {
    if ((int)sigma.size() != n_) throw std::invalid_argument("relabel_rays: size mismatch");
    std::vector<Tail> tails((std::size_t)n_);
    for (int j = 1; j <= n_; ++j) {
      Tail t = tail(j);
      t.target = sigma[(std::size_t)t.target - 1];
      tails[(std::size_t)sigma[j - 1] - 1] = std::move(t);
    }
    std::map<Point, Point> table;
    for (const auto& [a, b] : table_)
      table.emplace(Point{sigma[(std::size_t)a.ray - 1], a.height},
                    Point{sigma[(std::size_t)b.ray - 1], b.height});
    return TailedPermutation(n_, threshold_, std::move(tails), std::move(table));
  }

  friend bool operator==(const TailedPermutation&, const TailedPermutation&) = default;

  // Smallest height h >= floor with h = residue mod period.
  static std::int64_t first_height_in_class(std::int64_t floor, std::int64_t residue,
                                            std::int64_t period) {
    std::int64_t r = ((residue - floor) % period + period) % period;
    return floor + r;
  }

private:
  static int check_ray_count(int n) {
    if (n < 1) throw std::invalid_argument("TailedPermutation: ray count must be positive");
    return n;
  }

  void check_point(Point x) const {
    if (x.ray < 1 || x.ray > n_ || x.height < 1)
      throw std::invalid_argument("point outside {1..n} x N: " + x.str());
  }

  void validate() const {
    if (threshold_ < 1) throw std::invalid_argument("threshold must be >= 1");
    if ((int)tails_.size() != n_) throw std::invalid_argument("one tail per ray required");
    std::vector<bool> hit((std::size_t)n_, false);
    for (int j = 1; j <= n_; ++j) {
      const Tail& t = tail(j);
      if (t.target < 1 || t.target > n_) throw std::invalid_argument("tail target out of range");
      if (t.offsets.empty()) throw std::invalid_argument("tail needs at least one offset");
      if (hit[(std::size_t)t.target - 1])
        throw std::invalid_argument("not a bijection: ray targets collide");
      hit[(std::size_t)t.target - 1] = true;
      int p = t.period();
      std::vector<bool> res((std::size_t)p, false);
      for (std::int64_t a = 0; a < p; ++a) {
        std::int64_t b = ((a + t.offsets[(std::size_t)a]) % p + p) % p;
        if (res[(std::size_t)b])
          throw std::invalid_argument("not a bijection: tail residues collide");
        res[(std::size_t)b] = true;
        if (first_height_in_class(threshold_, a, p) + t.offsets[(std::size_t)a] < 1)
          throw std::invalid_argument("not a bijection: tail image below height 1");
      }
    }
    // Heights the tails miss must be covered by the finite part, exactly.
    std::set<Point> missing;
    for (int j = 1; j <= n_; ++j) {
      const Tail& t = tail(j);
      int p = t.period();
      for (std::int64_t a = 0; a < p; ++a) {
        std::int64_t first_image =
            first_height_in_class(threshold_, a, p) + t.offsets[(std::size_t)a];
        for (std::int64_t v = first_image - p; v >= 1; v -= p) missing.insert({t.target, v});
      }
    }
    std::set<Point> images;
    for (const auto& [a, b] : table_) {
      check_point(a);
      check_point(b);
      if (a.height >= threshold_)
        throw std::invalid_argument("table entry at or above threshold");
    }
    for (int j = 1; j <= n_; ++j)
      for (std::int64_t s = 1; s < threshold_; ++s) {
        Point x{j, s};
        auto it = table_.find(x);
        Point y = it == table_.end() ? x : it->second;
        if (!images.insert(y).second)
          throw std::invalid_argument("not a bijection: finite images collide at " + y.str());
      }
    if (images != missing)
      throw std::invalid_argument("not a bijection: finite part does not match tail complement");
  }

  void normalize() {
    for (auto& t : tails_) {
      int p = t.period();
      for (int q = 1; q < p; ++q) {
        if (p % q != 0) continue;
        bool periodic = true;
        for (int a = 0; a < p && periodic; ++a)
          periodic = t.offsets[(std::size_t)a] == t.offsets[(std::size_t)((a + q) % p)];
        if (periodic) {
          t.offsets.resize((std::size_t)q);
          break;
        }
      }
    }
    for (auto it = table_.begin(); it != table_.end();)
      it = (it->first == it->second) ? table_.erase(it) : std::next(it);
    while (threshold_ > 1) {
      std::int64_t h = threshold_ - 1;
      bool reducible = true;
      for (int j = 1; j <= n_ && reducible; ++j) {
        Point x{j, h};
        auto it = table_.find(x);
        Point actual = it == table_.end() ? x : it->second;
        const Tail& t = tail(j);
        Point predicted{t.target, h + t.offsets[(std::size_t)(h % t.period())]};
        reducible = actual == predicted;
      }
      if (!reducible) break;
      for (int j = 1; j <= n_; ++j) table_.erase(Point{j, h});
      threshold_ = h;
    }
  }

  int n_;
  std::int64_t threshold_;
  std::vector<Tail> tails_;
  std::map<Point, Point> table_;
};

inline TailedPermutation conjugate(const TailedPermutation& z, const TailedPermutation& f) {
  return compose(compose(z, f), z.inverse());
}

}  // namespace rinf
