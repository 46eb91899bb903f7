#include "hgk/cech.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "hgk/detail/keyed.hpp"
#include "hgk/error.hpp"

namespace hgk {

FiniteCover::FiniteCover(std::vector<std::string> ambient, std::vector<std::vector<Index>> pieces)
    : FiniteCover(std::move(ambient), std::move(pieces), true) {}

FiniteCover FiniteCover::unchecked(std::vector<std::string> ambient, std::vector<std::vector<Index>> pieces) {
  return FiniteCover(std::move(ambient), std::move(pieces), false);
}

FiniteCover::FiniteCover(std::vector<std::string> ambient, std::vector<std::vector<Index>> pieces, bool check)
    : ambient_(std::move(ambient)), pieces_(std::move(pieces)) {
  std::set<std::string> names(ambient_.begin(), ambient_.end());
  if (names.size() != ambient_.size()) throw InvalidArgument("cover: repeated point in the ambient set");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    auto& p = pieces_[i];
    std::sort(p.begin(), p.end());
    if (std::adjacent_find(p.begin(), p.end()) != p.end())
      throw InvalidArgument("cover: piece " + std::to_string(i) + " repeats a point");
    if (!p.empty() && p.back() >= ambient_.size())
      throw InvalidArgument("cover: piece " + std::to_string(i) + " has a point outside the ambient set");
  }
  if (check && !covers()) {
    std::vector<bool> hit(ambient_.size(), false);
    for (const auto& p : pieces_)
      for (Index y : p) hit[y] = true;
    for (std::size_t y = 0; y < hit.size(); ++y)
      if (!hit[y]) throw InvalidArgument("cover: point '" + ambient_[y] + "' lies in no piece");
  }
}

bool FiniteCover::covers() const {
  std::vector<bool> hit(ambient_.size(), false);
  for (const auto& p : pieces_)
    for (Index y : p) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<Index> FiniteCover::intersection(const std::vector<int>& indices) const {
  std::vector<Index> cur(ambient_.size());
  for (Index y = 0; y < cur.size(); ++y) cur[y] = y;
  for (int i : indices) {
    const auto& p = pieces_.at(static_cast<std::size_t>(i));
    std::vector<Index> next;
    std::set_intersection(cur.begin(), cur.end(), p.begin(), p.end(), std::back_inserter(next));
    cur = std::move(next);
  }
  return cur;
}

CoverKey cover_key(const std::vector<int>& tuple) {
  CoverKey k = tuple;
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

std::string to_string(const CoverKey& key) {
  if (key.empty()) return "Y";
  std::string s;
  for (std::size_t i = 0; i < key.size(); ++i) s += (i ? "," : "") + std::to_string(key[i]);
  return s;
}

// ---- presheaves ----

namespace {

bool strict_subset(const CoverKey& a, const CoverKey& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

CoverKey with(CoverKey k, int i) {
  k.insert(std::upper_bound(k.begin(), k.end(), i), i);
  return k;
}

}  // namespace

Presheaf::Presheaf(std::map<CoverKey, FGAbelianGroup> values, Restrictions restrictions)
    : values_(std::move(values)), restrictions_(std::move(restrictions)) {
  for (const auto& [key, g] : values_)
    if (key != cover_key(key)) throw InvariantViolation("presheaf key " + to_string(key) + " is not sorted");
  for (const auto& [pair, r] : restrictions_) {
    const auto& [from, to] = pair;
    const std::string name = to_string(from) + ">" + to_string(to);
    if (!has_value(from) || !has_value(to))
      throw InvariantViolation("restriction " + name + " between keys without values");
    if (!(r.source() == value(from)) || !(r.target() == value(to)))
      throw InvariantViolation("restriction " + name + " has the wrong source or target");
    if (from == to) {
      if (!(r == AbHom::identity(value(from))))
        throw InvariantViolation("restriction " + name + " along the identity is not the identity");
    } else if (!strict_subset(from, to)) {
      throw InvariantViolation("restriction " + name + " is not along an inclusion");
    }
  }
  // Composites agree with direct restrictions and do not depend on the
  // order in which indices are added.
  for (const auto& [pair, r] : restrictions_) {
    const auto& [from, to] = pair;
    if (to.size() < from.size() + 2) continue;
    for (int i : to) {
      if (std::binary_search(from.begin(), from.end(), i)) continue;
      const auto mid = with(from, i);
      if (!has_value(mid)) continue;
      const auto first = restrictions_.find({from, mid});
      if (first == restrictions_.end()) continue;
      try {
        if (!(compose(restriction(mid, to), first->second) == r))
          throw InvariantViolation("restrictions " + to_string(from) + ">" + to_string(mid) + ">" + to_string(to) +
                                   " do not compose to " + to_string(from) + ">" + to_string(to));
      } catch (const InvalidArgument&) {
      }
    }
  }
  for (const auto& [key, g] : values_)
    for (const auto& [other, h] : values_) {
      if (other.size() != key.size() + 2 || !strict_subset(key, other)) continue;
      std::vector<int> extra;
      std::set_difference(other.begin(), other.end(), key.begin(), key.end(), std::back_inserter(extra));
      const auto a = with(key, extra[0]), b = with(key, extra[1]);
      const auto s1 = restrictions_.find({key, a}), s2 = restrictions_.find({a, other});
      const auto t1 = restrictions_.find({key, b}), t2 = restrictions_.find({b, other});
      if (s1 == restrictions_.end() || s2 == restrictions_.end() || t1 == restrictions_.end() ||
          t2 == restrictions_.end())
        continue;
      if (!(compose(s2->second, s1->second) == compose(t2->second, t1->second)))
        throw InvariantViolation("restrictions from " + to_string(key) + " to " + to_string(other) +
                                 " depend on the path");
    }
}

const FGAbelianGroup& Presheaf::value(const CoverKey& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw InvalidArgument("presheaf has no value on " + to_string(key));
  return it->second;
}

AbHom Presheaf::restriction(const CoverKey& from, const CoverKey& to) const {
  if (from == to) return AbHom::identity(value(from));
  if (auto it = restrictions_.find({from, to}); it != restrictions_.end()) return it->second;
  if (!strict_subset(from, to))
    throw InvalidArgument("no restriction from " + to_string(from) + " to " + to_string(to));
  for (int i : to) {
    if (std::binary_search(from.begin(), from.end(), i)) continue;
    const auto mid = with(from, i);
    auto it = restrictions_.find({from, mid});
    if (it == restrictions_.end()) continue;
    return compose(restriction(mid, to), it->second);
  }
  throw InvalidArgument("no restriction from " + to_string(from) + " to " + to_string(to));
}

namespace {

// Nonempty keys with nonempty intersection, plus the empty key.
std::vector<CoverKey> live_keys(const FiniteCover& c) {
  const auto k = c.piece_count();
  if (k > 20) throw InvalidArgument("cover has too many pieces");
  check_enumeration(static_cast<double>(std::size_t{1} << k));
  std::vector<CoverKey> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    CoverKey key;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) key.push_back(static_cast<int>(i));
    if (key.empty() || !c.intersection(key).empty()) out.push_back(key);
  }
  return out;
}

template <class ValueFn, class RestrictFn>
Presheaf build_presheaf(const FiniteCover& c, ValueFn&& value, RestrictFn&& restrict) {
  std::map<CoverKey, FGAbelianGroup> values;
  Presheaf::Restrictions res;
  const auto keys = live_keys(c);
  for (const auto& k : keys) values.emplace(k, value(k));
  for (const auto& k : keys)
    for (std::size_t i = 0; i < c.piece_count(); ++i) {
      const int ii = static_cast<int>(i);
      if (std::binary_search(k.begin(), k.end(), ii)) continue;
      const auto bigger = with(k, ii);
      if (!values.count(bigger)) continue;
      res.emplace(std::make_pair(k, bigger), restrict(k, bigger, values.at(k), values.at(bigger)));
    }
  return Presheaf(std::move(values), std::move(res));
}

}  // namespace

Presheaf constant_presheaf(const FiniteCover& c, const FGAbelianGroup& A) {
  return build_presheaf(
      c, [&](const CoverKey&) { return A; },
      [&](const CoverKey&, const CoverKey&, const FGAbelianGroup&, const FGAbelianGroup&) {
        return AbHom::identity(A);
      });
}

Presheaf function_presheaf(const FiniteCover& c, const FGAbelianGroup& A) {
  const auto m = A.moduli();
  const std::size_t g = m.size();
  auto presentation = [&](const CoverKey& k) {
    Vector moduli;
    for (std::size_t p = 0; p < c.intersection(k).size(); ++p) moduli.insert(moduli.end(), m.begin(), m.end());
    return canonical_presentation(moduli);
  };
  std::map<CoverKey, Subquotient> pres;
  for (const auto& k : live_keys(c)) pres.emplace(k, presentation(k));
  return build_presheaf(
      c, [&](const CoverKey& k) { return pres.at(k).group; },
      [&](const CoverKey& from, const CoverKey& to, const FGAbelianGroup&, const FGAbelianGroup&) {
        const auto big = c.intersection(from), small = c.intersection(to);
        const auto& pf = pres.at(from);
        const auto& pt = pres.at(to);
        Matrix P(small.size() * g, big.size() * g);
        for (std::size_t q = 0; q < small.size(); ++q) {
          const auto pos = static_cast<std::size_t>(std::lower_bound(big.begin(), big.end(), small[q]) - big.begin());
          for (std::size_t t = 0; t < g; ++t) P(q * g + t, pos * g + t) = 1;
        }
        const Matrix cols = P * pf.representatives;
        std::vector<Vector> out;
        for (std::size_t j = 0; j < cols.cols(); ++j) out.push_back(pt.coordinates(cols.column(j)));
        return AbHom(pf.group, pt.group, Matrix::from_columns(pt.group.generators(), out));
      });
}

// ---- nerve ----

SimplicialMorphism cech_nerve(const FiniteCover& c, int N) {
  if (N < 0) throw InvalidArgument("negative truncation");
  using Key = std::pair<Index, std::vector<int>>;
  const auto k = c.piece_count();
  std::vector<std::vector<int>> containing(c.ambient().size());
  for (std::size_t i = 0; i < k; ++i)
    for (Index y : c.pieces()[i]) containing[y].push_back(static_cast<int>(i));
  std::vector<std::vector<Key>> levels(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    double total = 0;
    for (const auto& ps : containing) total += std::pow(static_cast<double>(ps.size()), n + 1);
    check_enumeration(total);
    for (Index y = 0; y < c.ambient().size(); ++y) {
      const auto& ps = containing[y];
      if (ps.empty()) continue;
      std::vector<std::size_t> pos(static_cast<std::size_t>(n) + 1, 0);
      while (true) {
        std::vector<int> t;
        for (auto p : pos) t.push_back(ps[p]);
        levels[static_cast<std::size_t>(n)].push_back({y, t});
        std::size_t p = pos.size();
        while (p > 0 && ++pos[p - 1] == ps.size()) pos[--p] = 0;
        if (p == 0) break;
      }
    }
  }
  auto nerve = make_sset(detail::keyed_data(
      N, levels,
      [](int, int j, const Key& key) {
        Key out = key;
        out.second.erase(out.second.begin() + j);
        return out;
      },
      [](int, int j, const Key& key) {
        Key out = key;
        out.second.insert(out.second.begin() + j, key.second[static_cast<std::size_t>(j)]);
        return out;
      },
      [&](int, const Key& key) {
        std::string s = c.ambient()[key.first] + ":";
        for (std::size_t i = 0; i < key.second.size(); ++i) s += (i ? "," : "") + std::to_string(key.second[i]);
        return s;
      }));
  auto base = make_sset(constant(c.ambient(), N));
  std::vector<std::vector<Index>> comps;
  for (const auto& level : levels) {
    comps.emplace_back();
    for (const auto& key : level) comps.back().push_back(key.first);
  }
  return SimplicialMorphism(nerve, base, comps);
}

CheckReport verify_nerve_trivial(const FiniteCover& c, int N) {
  auto r = is_trivial_relative(cech_nerve(c, N), 1, finite_set_site());
  r.check = "cech-nerve-trivial";
  return r;
}

// ---- complexes ----

namespace {

ChainComplex cochains(const FiniteCover& c, const Presheaf& F, int top, bool increasing) {
  if (top < 0) throw InvalidArgument("negative degree");
  const auto k = c.piece_count();
  std::vector<std::vector<std::vector<int>>> tuples(static_cast<std::size_t>(top) + 2);
  for (int n = 0; n <= top; ++n) {
    check_enumeration(std::pow(static_cast<double>(k), n + 1));
    auto& out = tuples[static_cast<std::size_t>(n)];
    if (k == 0) continue;
    std::vector<int> t(static_cast<std::size_t>(n) + 1, 0);
    while (true) {
      bool ok = !increasing || std::adjacent_find(t.begin(), t.end(), std::greater_equal<int>()) == t.end();
      if (ok && !c.intersection(t).empty()) out.push_back(t);
      std::size_t p = t.size();
      while (p > 0 && ++t[p - 1] == static_cast<int>(k)) t[--p] = 0;
      if (p == 0) break;
    }
  }
  struct Degree {
    std::vector<std::size_t> offsets;
    std::map<std::vector<int>, std::size_t> index;
    Subquotient canon;
  };
  std::vector<Degree> deg;
  ChainComplex C;
  C.orientation = Orientation::cochain;
  for (int n = 0; n <= top; ++n) {
    Degree d;
    Vector moduli;
    for (const auto& t : tuples[static_cast<std::size_t>(n)]) {
      d.index.emplace(t, d.offsets.size());
      d.offsets.push_back(moduli.size());
      const auto m = F.value(cover_key(t)).moduli();
      moduli.insert(moduli.end(), m.begin(), m.end());
    }
    d.offsets.push_back(moduli.size());
    d.canon = canonical_presentation(moduli);
    C.groups.push_back(d.canon.group);
    deg.push_back(std::move(d));
  }
  for (int n = 0; n < top; ++n) {
    const auto& lo = deg[static_cast<std::size_t>(n)];
    const auto& hi = deg[static_cast<std::size_t>(n) + 1];
    Matrix P(hi.offsets.back(), lo.offsets.back());
    for (const auto& [t, ti] : hi.index) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        std::vector<int> face = t;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
        const auto fi = lo.index.at(face);
        const AbHom res = F.restriction(cover_key(face), cover_key(t));
        const Matrix& r = res.matrix();
        const Int sign = j % 2 == 0 ? 1 : -1;
        for (std::size_t a = 0; a < r.rows(); ++a)
          for (std::size_t b = 0; b < r.cols(); ++b)
            P(hi.offsets[ti] + a, lo.offsets[fi] + b) =
                checked_add(P(hi.offsets[ti] + a, lo.offsets[fi] + b), checked_mul(sign, r(a, b)));
      }
    }
    const Matrix cols = P * lo.canon.representatives;
    std::vector<Vector> out;
    for (std::size_t j = 0; j < cols.cols(); ++j) out.push_back(hi.canon.coordinates(cols.column(j)));
    C.differentials.emplace_back(lo.canon.group, hi.canon.group,
                                 Matrix::from_columns(hi.canon.group.generators(), out));
  }
  C.validate();
  return C;
}

std::vector<FGAbelianGroup> cohomology_upto(const ChainComplex& C, int degrees) {
  auto h = homology(C);
  h.resize(static_cast<std::size_t>(degrees) + 1);
  return h;
}

}  // namespace

ChainComplex cech_complex(const FiniteCover& c, const Presheaf& F, int top) { return cochains(c, F, top, false); }

ChainComplex alternating_complex(const FiniteCover& c, const Presheaf& F, int top) {
  return cochains(c, F, top, true);
}

std::vector<FGAbelianGroup> cech_cohomology(const FiniteCover& c, const Presheaf& F, int degrees) {
  if (degrees < 0) throw InvalidArgument("negative degree");
  return cohomology_upto(cech_complex(c, F, degrees + 1), degrees);
}

std::vector<FGAbelianGroup> alternating_cohomology(const FiniteCover& c, const Presheaf& F, int degrees) {
  if (degrees < 0) throw InvalidArgument("negative degree");
  return cohomology_upto(alternating_complex(c, F, degrees + 1), degrees);
}

}  // namespace hgk
