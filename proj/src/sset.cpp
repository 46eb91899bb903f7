#include "hgk/sset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hgk/detail/keyed.hpp"
#include "hgk/error.hpp"

namespace hgk {

namespace {

constexpr Index kUnset = static_cast<Index>(-1);

std::string lvl(int l) { return std::to_string(l); }

void check_shape(const SimplicialSet::Data& d) {
  const int N = d.truncation;
  if (N < 0) throw InvalidArgument("simplicial set: negative truncation");
  const auto levels = static_cast<std::size_t>(N) + 1;
  if (d.names.size() != levels || d.faces.size() != levels || d.degeneracies.size() != levels)
    throw InvalidArgument("simplicial set: expected " + std::to_string(levels) + " levels");
  for (int l = 0; l <= N; ++l) {
    const auto L = static_cast<std::size_t>(l);
    const std::size_t n = d.names[L].size();
    std::set<std::string_view> seen;
    for (const auto& s : d.names[L])
      if (!seen.insert(s).second)
        throw InvalidArgument("simplicial set: duplicate simplex '" + s + "' at level " + lvl(l));
    const std::size_t expected_faces = l == 0 ? 0 : L + 1;
    if (d.faces[L].size() != expected_faces)
      throw InvalidArgument("simplicial set: level " + lvl(l) + " needs " +
                            std::to_string(expected_faces) + " face maps");
    for (std::size_t j = 0; j < d.faces[L].size(); ++j) {
      const auto& f = d.faces[L][j];
      if (f.size() != n)
        throw InvalidArgument("simplicial set: face d" + std::to_string(j) + " at level " + lvl(l) +
                              " is not total");
      for (Index v : f)
        if (v >= d.names[L - 1].size())
          throw InvalidArgument("simplicial set: face d" + std::to_string(j) + " at level " +
                                lvl(l) + " out of range");
    }
    const std::size_t expected_degens = l == N ? 0 : L + 1;
    if (d.degeneracies[L].size() != expected_degens)
      throw InvalidArgument("simplicial set: level " + lvl(l) + " needs " +
                            std::to_string(expected_degens) + " degeneracy maps");
    for (std::size_t j = 0; j < d.degeneracies[L].size(); ++j) {
      const auto& s = d.degeneracies[L][j];
      if (s.size() != n)
        throw InvalidArgument("simplicial set: degeneracy s" + std::to_string(j) + " at level " +
                              lvl(l) + " is not total");
      for (Index v : s)
        if (v >= d.names[L + 1].size())
          throw InvalidArgument("simplicial set: degeneracy s" + std::to_string(j) +
                                " at level " + lvl(l) + " out of range");
    }
  }
}

}  // namespace

SimplicialSet::SimplicialSet(Data data) : SimplicialSet(std::move(data), true) {}

SimplicialSet SimplicialSet::unchecked(Data data) { return SimplicialSet(std::move(data), false); }

SimplicialSet::SimplicialSet(Data data, bool check_identities) : data_(std::move(data)) {
  check_shape(data_);
  lookup_.resize(data_.names.size());
  for (std::size_t l = 0; l < data_.names.size(); ++l)
    for (std::size_t i = 0; i < data_.names[l].size(); ++i)
      lookup_[l].emplace(data_.names[l][i], static_cast<Index>(i));
  if (check_identities) {
    if (auto v = identity_violation()) throw InvariantViolation(*v);
  }
  build_decompositions();
}

void SimplicialSet::build_decompositions() {
  const int N = data_.truncation;
  epi_.assign(static_cast<std::size_t>(N) + 1, {});
  root_.assign(static_cast<std::size_t>(N) + 1, {});
  for (int l = 0; l <= N; ++l) {
    const auto L = static_cast<std::size_t>(l);
    const std::size_t n = size(l);
    root_[L].assign(n, kUnset);
    std::vector<std::optional<MonotoneMap>> epis(n);
    if (l > 0) {
      for (Index y = 0; y < size(l - 1); ++y) {
        for (int j = l - 1; j >= 0; --j) {
          const Index s = degeneracy(l - 1, j, y);
          if (root_[L][s] != kUnset) continue;
          root_[L][s] = root_[L - 1][y];
          epis[s] = compose(epi_[L - 1][y], MonotoneMap::codegeneracy(j, l - 1));
        }
      }
    }
    epi_[L].reserve(n);
    for (Index x = 0; x < n; ++x) {
      if (root_[L][x] == kUnset) {
        root_[L][x] = x;
        epi_[L].push_back(MonotoneMap::identity(l));
      } else {
        epi_[L].push_back(*epis[x]);
      }
    }
  }
}

std::optional<Index> SimplicialSet::find(int level, std::string_view name) const {
  if (level < 0 || level > truncation()) return std::nullopt;
  const auto& m = lookup_[static_cast<std::size_t>(level)];
  auto it = m.find(name);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

Index SimplicialSet::act(const MonotoneMap& theta, Index x) const {
  if (theta.codomain() > truncation() || theta.domain() > truncation())
    throw TruncationTooSmall(truncation(), std::max(theta.codomain(), theta.domain()));
  const auto [epi, mono] = epi_mono_factor(theta);
  int level = mono.codomain();
  Index cur = x;
  const auto om = mono.omitted();
  for (auto it = om.rbegin(); it != om.rend(); ++it) cur = face(level--, *it, cur);
  for (int t : epi.repeats()) cur = degeneracy(level++, t, cur);
  return cur;
}

Index SimplicialSet::vertex(int level, Index x, int i) const {
  return act(MonotoneMap(level, {i}), x);
}

bool SimplicialSet::is_degenerate(int level, Index x) const {
  return !epi_[static_cast<std::size_t>(level)][x].is_identity();
}

const MonotoneMap& SimplicialSet::decomposition_epi(int level, Index x) const {
  return epi_.at(static_cast<std::size_t>(level)).at(x);
}

Index SimplicialSet::decomposition_root(int level, Index x) const {
  return root_.at(static_cast<std::size_t>(level)).at(x);
}

std::vector<Index> SimplicialSet::nondegenerate(int level) const {
  std::vector<Index> out;
  for (Index x = 0; x < size(level); ++x)
    if (!is_degenerate(level, x)) out.push_back(x);
  return out;
}

std::optional<std::string> SimplicialSet::identity_violation() const {
  const int N = truncation();
  auto where = [&](int l, Index x) { return " on simplex '" + name(l, x) + "' at level " + lvl(l); };
  for (int l = 2; l <= N; ++l)
    for (Index x = 0; x < size(l); ++x)
      for (int j = 1; j <= l; ++j)
        for (int i = 0; i < j; ++i)
          if (face(l - 1, i, face(l, j, x)) != face(l - 1, j - 1, face(l, i, x)))
            return "d" + std::to_string(i) + " d" + std::to_string(j) + " != d" +
                   std::to_string(j - 1) + " d" + std::to_string(i) + where(l, x);
  for (int l = 0; l + 2 <= N; ++l)
    for (Index x = 0; x < size(l); ++x)
      for (int j = 0; j <= l; ++j)
        for (int i = 0; i <= j; ++i)
          if (degeneracy(l + 1, i, degeneracy(l, j, x)) !=
              degeneracy(l + 1, j + 1, degeneracy(l, i, x)))
            return "s" + std::to_string(i) + " s" + std::to_string(j) + " != s" +
                   std::to_string(j + 1) + " s" + std::to_string(i) + where(l, x);
  for (int l = 0; l < N; ++l)
    for (Index x = 0; x < size(l); ++x)
      for (int j = 0; j <= l; ++j) {
        const Index s = degeneracy(l, j, x);
        for (int i = 0; i <= l + 1; ++i) {
          const Index lhs = face(l + 1, i, s);
          Index rhs;
          if (i < j)
            rhs = degeneracy(l - 1, j - 1, face(l, i, x));
          else if (i == j || i == j + 1)
            rhs = x;
          else
            rhs = degeneracy(l - 1, j, face(l, i - 1, x));
          if (lhs != rhs)
            return "d" + std::to_string(i) + " s" + std::to_string(j) +
                   " violates the mixed identity" + where(l, x);
        }
      }
  return std::nullopt;
}

std::pair<MonotoneMap, SimplexId> nondegenerate_decomposition(const SimplicialSet& X,
                                                              SimplexId s) {
  if (s.level < 0 || s.level > X.truncation() || s.index >= X.size(s.level))
    throw InvalidArgument("nondegenerate_decomposition: simplex out of range");
  const MonotoneMap& epi = X.decomposition_epi(s.level, s.index);
  return {epi, SimplexId{epi.codomain(), X.decomposition_root(s.level, s.index)}};
}

// ---- morphisms ----

SimplicialMorphism::SimplicialMorphism(SSetPtr source, SSetPtr target,
                                       std::vector<std::vector<Index>> components)
    : SimplicialMorphism(std::move(source), std::move(target), std::move(components), true) {}

SimplicialMorphism SimplicialMorphism::unchecked(SSetPtr source, SSetPtr target,
                                                 std::vector<std::vector<Index>> components) {
  return SimplicialMorphism(std::move(source), std::move(target), std::move(components), false);
}

SimplicialMorphism::SimplicialMorphism(SSetPtr source, SSetPtr target,
                                       std::vector<std::vector<Index>> components, bool check)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!source_ || !target_) throw InvalidArgument("morphism: null endpoint");
  if (source_->truncation() != target_->truncation())
    throw InvalidArgument("morphism: truncation mismatch");
  if (components_.size() != static_cast<std::size_t>(source_->truncation()) + 1)
    throw InvalidArgument("morphism: wrong number of components");
  for (int l = 0; l <= source_->truncation(); ++l) {
    const auto& c = components_[static_cast<std::size_t>(l)];
    if (c.size() != source_->size(l))
      throw InvalidArgument("morphism: component at level " + lvl(l) + " is not total");
    for (Index v : c)
      if (v >= target_->size(l))
        throw InvalidArgument("morphism: component at level " + lvl(l) + " out of range");
  }
  if (check) {
    if (auto v = violation()) throw InvariantViolation(*v);
  }
}

SimplicialMorphism SimplicialMorphism::identity(SSetPtr X) {
  std::vector<std::vector<Index>> comps;
  for (int l = 0; l <= X->truncation(); ++l) {
    std::vector<Index> c(X->size(l));
    std::iota(c.begin(), c.end(), Index{0});
    comps.push_back(std::move(c));
  }
  return SimplicialMorphism(X, X, std::move(comps), false);
}

std::optional<std::string> SimplicialMorphism::violation() const {
  const auto& S = *source_;
  const auto& T = *target_;
  for (int l = 0; l <= S.truncation(); ++l)
    for (Index x = 0; x < S.size(l); ++x) {
      const Index fx = (*this)(l, x);
      if (l > 0)
        for (int j = 0; j <= l; ++j)
          if ((*this)(l - 1, S.face(l, j, x)) != T.face(l, j, fx))
            return "morphism does not commute with d" + std::to_string(j) + " on '" + S.name(l, x) +
                   "' at level " + lvl(l);
      if (l < S.truncation())
        for (int j = 0; j <= l; ++j)
          if ((*this)(l + 1, S.degeneracy(l, j, x)) != T.degeneracy(l, j, fx))
            return "morphism does not commute with s" + std::to_string(j) + " on '" +
                   S.name(l, x) + "' at level " + lvl(l);
    }
  return std::nullopt;
}

bool SimplicialMorphism::is_levelwise_bijective() const {
  for (int l = 0; l <= truncation(); ++l) {
    if (source_->size(l) != target_->size(l)) return false;
    std::vector<bool> hit(target_->size(l), false);
    for (Index v : component(l)) {
      if (hit[v]) return false;
      hit[v] = true;
    }
  }
  return true;
}

SimplicialMorphism compose(const SimplicialMorphism& g, const SimplicialMorphism& f) {
  if (f.target_ptr() != g.source_ptr() && f.target().data().names != g.source().data().names)
    throw InvalidArgument("compose: morphisms are not composable");
  std::vector<std::vector<Index>> comps(f.components().size());
  for (std::size_t l = 0; l < comps.size(); ++l)
    for (Index v : f.components()[l]) comps[l].push_back(g.components()[l][v]);
  return SimplicialMorphism::unchecked(f.source_ptr(), g.target_ptr(), std::move(comps));
}

// ---- constructions ----

namespace {

std::string map_name(const std::vector<int>& v, int n) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (n > 9 && i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

SimplicialSet standard_simplex(int n, int N) {
  if (n < 0 || N < 0) throw InvalidArgument("standard_simplex: negative argument");
  std::vector<std::vector<std::vector<int>>> levels;
  for (int i = 0; i <= N; ++i) {
    std::vector<std::vector<int>> lv;
    for (const auto& f : all_monotone_maps(i, n)) lv.push_back(f.values());
    levels.push_back(std::move(lv));
  }
  return SimplicialSet(detail::keyed_data(
      N, levels,
      [](int, int j, const std::vector<int>& v) {
        auto w = v;
        w.erase(w.begin() + j);
        return w;
      },
      [](int, int j, const std::vector<int>& v) {
        auto w = v;
        w.insert(w.begin() + j, v[static_cast<std::size_t>(j)]);
        return w;
      },
      [n](int, const std::vector<int>& v) { return map_name(v, n); }));
}

SimplicialSet boundary(int n, int N) {
  if (n < 0) throw InvalidArgument("boundary: negative ordinal");
  const SimplicialSet D = standard_simplex(n, N);
  return subobject(D, [&](int level, Index x) {
    std::set<int> image;
    for (int i = 0; i <= level; ++i) image.insert(D.vertex(level, x, i));
    return static_cast<int>(image.size()) < n + 1;
  });
}

SimplicialSet horn(int n, int k, int N) {
  if (n < 1 || k < 0 || k > n)
    throw InvalidArgument("horn: invalid (n, k) = (" + std::to_string(n) + ", " +
                          std::to_string(k) + ")");
  const SimplicialSet D = standard_simplex(n, N);
  return subobject(D, [&](int level, Index x) {
    std::set<int> image;
    for (int i = 0; i <= level; ++i) image.insert(D.vertex(level, x, i));
    for (int t = 0; t <= n; ++t)
      if (t != k && !image.count(t)) return true;
    return false;
  });
}

SimplicialSet constant(const std::vector<std::string>& points, int N) {
  if (N < 0) throw InvalidArgument("constant: negative truncation");
  SimplicialSet::Data d;
  d.truncation = N;
  std::vector<Index> id(points.size());
  std::iota(id.begin(), id.end(), Index{0});
  for (int l = 0; l <= N; ++l) {
    d.names.push_back(points);
    d.faces.emplace_back(l == 0 ? 0 : static_cast<std::size_t>(l) + 1, id);
    d.degeneracies.emplace_back(l == N ? 0 : static_cast<std::size_t>(l) + 1, id);
  }
  return SimplicialSet(std::move(d));
}

SimplicialSet truncate(const SimplicialSet& X, int m) {
  if (m < 0 || m > X.truncation())
    throw InvalidArgument("truncate: level " + std::to_string(m) + " out of range");
  SimplicialSet::Data d;
  d.truncation = m;
  const auto& src = X.data();
  for (int l = 0; l <= m; ++l) {
    const auto L = static_cast<std::size_t>(l);
    d.names.push_back(src.names[L]);
    d.faces.push_back(src.faces[L]);
    d.degeneracies.push_back(l == m ? std::vector<std::vector<Index>>{} : src.degeneracies[L]);
  }
  return SimplicialSet::unchecked(std::move(d));
}

SimplicialSet product(const SimplicialSet& X, const SimplicialSet& Y) {
  if (X.truncation() != Y.truncation()) throw InvalidArgument("product: truncation mismatch");
  const int N = X.truncation();
  SimplicialSet::Data d;
  d.truncation = N;
  d.names.resize(static_cast<std::size_t>(N) + 1);
  d.faces.resize(static_cast<std::size_t>(N) + 1);
  d.degeneracies.resize(static_cast<std::size_t>(N) + 1);
  for (int l = 0; l <= N; ++l) {
    const auto L = static_cast<std::size_t>(l);
    const std::size_t nx = X.size(l), ny = Y.size(l);
    check_enumeration(static_cast<double>(nx) * static_cast<double>(ny));
    for (Index a = 0; a < nx; ++a)
      for (Index b = 0; b < ny; ++b) d.names[L].push_back("(" + X.name(l, a) + "," + Y.name(l, b) + ")");
    auto pair_map = [&](int tl, const std::vector<Index>& fx, const std::vector<Index>& fy) {
      std::vector<Index> out;
      out.reserve(nx * ny);
      const auto nyt = static_cast<Index>(Y.size(tl));
      for (Index a = 0; a < nx; ++a)
        for (Index b = 0; b < ny; ++b) out.push_back(fx[a] * nyt + fy[b]);
      return out;
    };
    if (l > 0)
      for (int j = 0; j <= l; ++j)
        d.faces[L].push_back(pair_map(l - 1, X.face_map(l, j), Y.face_map(l, j)));
    if (l < N)
      for (int j = 0; j <= l; ++j)
        d.degeneracies[L].push_back(pair_map(l + 1, X.degeneracy_map(l, j), Y.degeneracy_map(l, j)));
  }
  return SimplicialSet::unchecked(std::move(d));
}

SimplicialSet disjoint_union(const SimplicialSet& X, const SimplicialSet& Y) {
  if (X.truncation() != Y.truncation()) throw InvalidArgument("disjoint_union: truncation mismatch");
  const int N = X.truncation();
  SimplicialSet::Data d;
  d.truncation = N;
  d.names.resize(static_cast<std::size_t>(N) + 1);
  d.faces.resize(static_cast<std::size_t>(N) + 1);
  d.degeneracies.resize(static_cast<std::size_t>(N) + 1);
  for (int l = 0; l <= N; ++l) {
    const auto L = static_cast<std::size_t>(l);
    for (const auto& s : X.names(l)) d.names[L].push_back("0." + s);
    for (const auto& s : Y.names(l)) d.names[L].push_back("1." + s);
    auto glue = [&](const std::vector<Index>& fx, const std::vector<Index>& fy, std::size_t shift) {
      std::vector<Index> out(fx);
      for (Index v : fy) out.push_back(v + static_cast<Index>(shift));
      return out;
    };
    if (l > 0)
      for (int j = 0; j <= l; ++j)
        d.faces[L].push_back(glue(X.face_map(l, j), Y.face_map(l, j), X.size(l - 1)));
    if (l < N)
      for (int j = 0; j <= l; ++j)
        d.degeneracies[L].push_back(
            glue(X.degeneracy_map(l, j), Y.degeneracy_map(l, j), X.size(l + 1)));
  }
  return SimplicialSet::unchecked(std::move(d));
}

SimplicialSet subobject(const SimplicialSet& X,
                        const std::function<bool(int level, Index x)>& keep) {
  const int N = X.truncation();
  std::vector<std::vector<Index>> renumber(static_cast<std::size_t>(N) + 1);
  SimplicialSet::Data d;
  d.truncation = N;
  d.names.resize(static_cast<std::size_t>(N) + 1);
  d.faces.resize(static_cast<std::size_t>(N) + 1);
  d.degeneracies.resize(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<Index>> kept(static_cast<std::size_t>(N) + 1);
  for (int l = 0; l <= N; ++l) {
    const auto L = static_cast<std::size_t>(l);
    renumber[L].assign(X.size(l), kUnset);
    for (Index x = 0; x < X.size(l); ++x)
      if (keep(l, x)) {
        renumber[L][x] = static_cast<Index>(kept[L].size());
        kept[L].push_back(x);
        d.names[L].push_back(X.name(l, x));
      }
  }
  auto remap = [&](int from, int to, const std::vector<Index>& f) {
    std::vector<Index> out;
    for (Index x : kept[static_cast<std::size_t>(from)]) {
      const Index y = renumber[static_cast<std::size_t>(to)][f[x]];
      if (y == kUnset) throw InvalidArgument("subobject: selection not closed under operators");
      out.push_back(y);
    }
    return out;
  };
  for (int l = 0; l <= N; ++l) {
    const auto L = static_cast<std::size_t>(l);
    if (l > 0)
      for (int j = 0; j <= l; ++j) d.faces[L].push_back(remap(l, l - 1, X.face_map(l, j)));
    if (l < N)
      for (int j = 0; j <= l; ++j) d.degeneracies[L].push_back(remap(l, l + 1, X.degeneracy_map(l, j)));
  }
  return SimplicialSet::unchecked(std::move(d));
}

std::vector<std::vector<Index>> connected_components(const SimplicialSet& X) {
  const std::size_t n = X.size(0);
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> find = [&](Index a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  if (X.truncation() >= 1)
    for (Index e = 0; e < X.size(1); ++e) {
      const Index a = find(X.face(1, 0, e)), b = find(X.face(1, 1, e));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<Index>> out;
  std::vector<Index> slot(n, kUnset);
  for (Index v = 0; v < n; ++v) {
    const Index r = find(v);
    if (slot[r] == kUnset) {
      slot[r] = static_cast<Index>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(v);
  }
  return out;
}

}  // namespace hgk
