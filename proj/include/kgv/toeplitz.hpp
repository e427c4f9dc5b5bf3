#pragma once

#include <map>
#include <optional>
#include <vector>

#include "kgv/errors.hpp"
#include "kgv/matrix.hpp"
#include "kgv/monoid.hpp"

namespace kgv {

// A finite coordinate patch of the sequence space over a semigroup: the
// basis vectors are the box elements, matrix units address pairs of them,
// and left translations act partially (images that leave the box are
// dropped, and the corresponding columns count as boundary, not as data).
class WindowSpace {
 public:
  WindowSpace(const Monoid& s, const Monoid::Elt& lo, const Monoid::Elt& hi)
      : s_(s), pts_(s.box(lo, hi)) {
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i) index_[pts_[i]] = i;
  }

  const Monoid& monoid() const { return s_; }
  int dim() const { return static_cast<int>(pts_.size()); }
  const std::vector<Monoid::Elt>& points() const { return pts_; }
  const Monoid::Elt& point(int i) const { return pts_.at(i); }

  std::optional<int> at(const Monoid::Elt& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Monoid::Elt& t) const { return index_.count(t) != 0; }

  // Matrix unit e_t (x) conj(e_u); both points must lie in the window.
  ScalarMat E(const Monoid::Elt& t, const Monoid::Elt& u) const {
    auto i = at(t), j = at(u);
    if (!i || !j)
      throw PreconditionError("matrix unit (" + s_.str(t) + "," + s_.str(u) +
                              ") leaves the window");
    return ScalarMat::unit(dim(), *i, *j);
  }

  // Partial left translation: e_t -> e_{u·t} where the image stays inside.
  ScalarMat translation(const Monoid::Elt& u) const {
    ScalarMat m(dim());
    for (int j = 0; j < dim(); ++j)
      if (auto i = at(s_.mul(u, pts_[j]))) m.add_entry(*i, j, CRat::one());
    return m;
  }

  // Columns on which translation(u) genuinely represents the isometry: the
  // translate must stay inside the window.
  bool interior_for(const Monoid::Elt& u, int col) const {
    return contains(s_.mul(u, pts_.at(col)));
  }

 private:
  Monoid s_;
  std::vector<Monoid::Elt> pts_;
  std::map<Monoid::Elt, int> index_;
};

}  // namespace kgv
