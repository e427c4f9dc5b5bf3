#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgv/errors.hpp"

namespace kgv {

// Finite group given by a Cayley table. The constructor verifies the table
// is a group (closure, identity, inverses, associativity).
class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<std::vector<int>> table) {
    n_ = static_cast<int>(table.size());
    if (n_ == 0) throw GroupError("empty Cayley table");
    mul_.assign(n_ * n_, 0);
    for (int a = 0; a < n_; ++a) {
      if (static_cast<int>(table[a].size()) != n_) throw GroupError("Cayley table not square");
      for (int b = 0; b < n_; ++b) {
        if (table[a][b] < 0 || table[a][b] >= n_)
          throw GroupError("Cayley table entry out of range");
        mul_[a * n_ + b] = table[a][b];
      }
    }
    id_ = -1;
    for (int e = 0; e < n_; ++e) {
      bool ok = true;
      for (int a = 0; a < n_; ++a)
        if (mul(e, a) != a || mul(a, e) != a) {
          ok = false;
          break;
        }
      if (ok) {
        id_ = e;
        break;
      }
    }
    if (id_ < 0) throw GroupError("Cayley table has no identity");
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b)
        if (mul(a, b) == id_ && mul(b, a) == id_) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] < 0) throw GroupError("element " + std::to_string(a) + " has no inverse");
    }
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw GroupError("Cayley table not associative at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ")");
  }

  static FiniteGroup cyclic(int n) {
    if (n < 1) throw GroupError("cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t));
  }

  // Permutations of {0,1,2} in lexicographic one-line order; composition
  // (ab)(x) = a(b(x)). Smallest nonabelian group.
  static FiniteGroup symmetric3() {
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto index_of = [&](const int p[3]) {
      for (int i = 0; i < 6; ++i)
        if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
      return -1;
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        int comp[3];
        for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];
        t[a][b] = index_of(comp);
      }
    return FiniteGroup(std::move(t));
  }

  int order() const { return n_; }
  int identity() const { return id_; }
  int mul(int a, int b) const { return mul_.at(a * n_ + b); }
  int inv(int a) const { return inv_.at(a); }

  std::vector<std::vector<int>> table() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
  }

 private:
  int n_ = 0, id_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
};

// The Ore semigroups this library works with: N^d, Z^d, and finite groups.
// Elements are coordinate vectors; a finite-group element is a single index.
class Monoid {
 public:
  enum class Kind { nat, integers, finite };
  using Elt = std::vector<long long>;

  static Monoid nat(int d) { return Monoid(Kind::nat, d, {}); }
  static Monoid integers(int d) { return Monoid(Kind::integers, d, {}); }
  static Monoid finite(FiniteGroup g) { return Monoid(Kind::finite, 1, std::move(g)); }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const FiniteGroup& group() const {
    if (kind_ != Kind::finite) throw GroupError("not a finite-group monoid");
    return *group_;
  }
  bool is_group() const { return kind_ != Kind::nat; }

  Elt identity() const {
    return kind_ == Kind::finite ? Elt{group_->identity()} : Elt(dim_, 0);
  }

  bool is_element(const Elt& a) const {
    if (static_cast<int>(a.size()) != dim_) return false;
    switch (kind_) {
      case Kind::nat:
        for (long long v : a)
          if (v < 0) return false;
        return true;
      case Kind::integers:
        return true;
      case Kind::finite:
        return a[0] >= 0 && a[0] < group_->order();
    }
    return false;
  }

  Elt mul(const Elt& a, const Elt& b) const {
    require(a);
    require(b);
    if (kind_ == Kind::finite) return {group_->mul(static_cast<int>(a[0]), static_cast<int>(b[0]))};
    Elt r(dim_);
    for (int i = 0; i < dim_; ++i)
      if (__builtin_add_overflow(a[i], b[i], &r[i])) throw DegreeError("monoid overflow");
    return r;
  }

  std::optional<Elt> inv(const Elt& a) const {
    require(a);
    switch (kind_) {
      case Kind::nat: {
        for (long long v : a)
          if (v != 0) return std::nullopt;
        return a;
      }
      case Kind::integers: {
        Elt r(dim_);
        for (int i = 0; i < dim_; ++i) r[i] = -a[i];
        return r;
      }
      case Kind::finite:
        return Elt{group_->inv(static_cast<int>(a[0]))};
    }
    return std::nullopt;
  }

  // x, y with x·t = y·u. Existence for every pair is the (left) Ore
  // condition; these monoids satisfy it constructively:
  //   N^d, Z^d : x = (t∨u) - t, y = (t∨u) - u  (componentwise join);
  //   group    : x = u·t⁻¹, y = identity.
  std::pair<Elt, Elt> ore_pair(const Elt& t, const Elt& u) const {
    require(t);
    require(u);
    if (kind_ == Kind::finite) {
      Elt x{group_->mul(static_cast<int>(u[0]), group_->inv(static_cast<int>(t[0])))};
      return {x, identity()};
    }
    Elt x(dim_), y(dim_);
    for (int i = 0; i < dim_; ++i) {
      long long j = t[i] > u[i] ? t[i] : u[i];
      x[i] = j - t[i];
      y[i] = j - u[i];
    }
    return {x, y};
  }

  // Generating set used to present actions: unit vectors for N^d, unit
  // vectors and their negatives for Z^d, all non-identity elements for a
  // finite group.
  std::vector<Elt> generators() const {
    std::vector<Elt> out;
    switch (kind_) {
      case Kind::nat:
        for (int i = 0; i < dim_; ++i) {
          Elt e(dim_, 0);
          e[i] = 1;
          out.push_back(e);
        }
        break;
      case Kind::integers:
        for (int i = 0; i < dim_; ++i) {
          Elt e(dim_, 0);
          e[i] = 1;
          out.push_back(e);
          e[i] = -1;
          out.push_back(e);
        }
        break;
      case Kind::finite:
        for (int a = 0; a < group_->order(); ++a)
          if (a != group_->identity()) out.push_back(Elt{a});
        break;
    }
    return out;
  }

  // Box [lo, hi] enumerated lexicographically; a finite group enumerates all
  // of its elements regardless of the bounds.
  std::vector<Elt> box(const Elt& lo, const Elt& hi) const {
    if (kind_ == Kind::finite) {
      std::vector<Elt> out;
      for (int a = 0; a < group_->order(); ++a) out.push_back(Elt{a});
      return out;
    }
    if (static_cast<int>(lo.size()) != dim_ || static_cast<int>(hi.size()) != dim_)
      throw DegreeError("window rank mismatch");
    for (int i = 0; i < dim_; ++i)
      if (lo[i] > hi[i]) throw DegreeError("empty monoid window");
    if (kind_ == Kind::nat)
      for (long long v : lo)
        if (v < 0) throw DegreeError("window below zero in N^d");
    std::vector<Elt> out;
    Elt cur = lo;
    while (true) {
      out.push_back(cur);
      int i = dim_ - 1;
      while (i >= 0) {
        if (cur[i] < hi[i]) {
          ++cur[i];
          break;
        }
        cur[i] = lo[i];
        --i;
      }
      if (i < 0) break;
    }
    return out;
  }

  bool in_box(const Elt& a, const Elt& lo, const Elt& hi) const {
    if (kind_ == Kind::finite) return is_element(a);
    for (int i = 0; i < dim_; ++i)
      if (a[i] < lo[i] || a[i] > hi[i]) return false;
    return true;
  }

  // Enveloping group: N^d sits inside Z^d; groups are their own envelope.
  Monoid envelope() const { return kind_ == Kind::nat ? integers(dim_) : *this; }

  std::string str(const Elt& a) const {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(a[i]);
    }
    return s;
  }

  // Like str() but safe inside generated ids ('.' instead of ',').
  std::string tag(const Elt& a) const {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i) s += '.';
      s += std::to_string(a[i]);
    }
    return s;
  }

  bool operator==(const Monoid& o) const {
    if (kind_ != o.kind_ || dim_ != o.dim_) return false;
    if (kind_ == Kind::finite) return group_->table() == o.group_->table();
    return true;
  }

 private:
  Monoid(Kind k, int d, std::optional<FiniteGroup> g) : kind_(k), dim_(d), group_(std::move(g)) {
    if (kind_ != Kind::finite && (d < 1 || d > 16)) throw DegreeError("monoid dimension out of range");
  }

  void require(const Elt& a) const {
    if (!is_element(a)) throw DegreeError("element does not belong to the monoid");
  }

  Kind kind_;
  int dim_;
  std::optional<FiniteGroup> group_;
};

}  // namespace kgv
