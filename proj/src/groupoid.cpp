#include "hgk/groupoid.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "hgk/detail/keyed.hpp"
#include "hgk/error.hpp"
#include "hgk/kan.hpp"

namespace hgk {

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                               std::vector<Index> composition, std::vector<Index> identities,
                               std::vector<Index> inverses)
    : FiniteGroupoid(std::move(objects), std::move(arrows), std::move(composition),
                     std::move(identities), std::move(inverses), true) {}

FiniteGroupoid FiniteGroupoid::unchecked(std::vector<std::string> objects, std::vector<Arrow> arrows,
                                         std::vector<Index> composition, std::vector<Index> identities,
                                         std::vector<Index> inverses) {
  return FiniteGroupoid(std::move(objects), std::move(arrows), std::move(composition),
                        std::move(identities), std::move(inverses), false);
}

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                               std::vector<Index> composition, std::vector<Index> identities,
                               std::vector<Index> inverses, bool check)
    : objects_(std::move(objects)),
      arrows_(std::move(arrows)),
      composition_(std::move(composition)),
      identities_(std::move(identities)),
      inverses_(std::move(inverses)) {
  const std::size_t A = arrows_.size();
  if (composition_.size() != A * A) throw InvalidArgument("groupoid: composition table has wrong size");
  if (identities_.size() != objects_.size()) throw InvalidArgument("groupoid: one identity per object required");
  if (inverses_.size() != A) throw InvalidArgument("groupoid: one inverse per arrow required");
  for (const auto& a : arrows_)
    if (a.source >= objects_.size() || a.target >= objects_.size())
      throw InvalidArgument("groupoid: arrow '" + a.name + "' has an unknown endpoint");
  for (Index v : composition_)
    if (v != kNone && v >= A) throw InvalidArgument("groupoid: composite out of range");
  for (Index v : identities_)
    if (v >= A) throw InvalidArgument("groupoid: identity out of range");
  for (Index v : inverses_)
    if (v >= A) throw InvalidArgument("groupoid: inverse out of range");
  if (check) {
    if (auto v = law_violation()) throw InvariantViolation(*v);
  }
}

std::vector<Index> FiniteGroupoid::homs(Index x, Index y) const {
  std::vector<Index> out;
  for (Index f = 0; f < arrows_.size(); ++f)
    if (arrows_[f].source == x && arrows_[f].target == y) out.push_back(f);
  return out;
}

std::optional<std::string> FiniteGroupoid::law_violation() const {
  std::set<std::string> seen;
  for (const auto& o : objects_)
    if (!seen.insert(o).second) return "duplicate object '" + o + "'";
  seen.clear();
  for (const auto& a : arrows_)
    if (!seen.insert(a.name).second) return "duplicate arrow '" + a.name + "'";
  const auto A = static_cast<Index>(arrows_.size());
  auto nm = [&](Index f) { return "'" + arrows_[f].name + "'"; };
  for (Index x = 0; x < objects_.size(); ++x) {
    const Index e = identities_[x];
    if (arrows_[e].source != x || arrows_[e].target != x)
      return "identity of '" + objects_[x] + "' is not an endomorphism";
  }
  for (Index g = 0; g < A; ++g)
    for (Index f = 0; f < A; ++f) {
      const Index gf = compose(g, f);
      const bool composable = arrows_[g].source == arrows_[f].target;
      if (composable && gf == kNone) return "missing composite " + nm(g) + " . " + nm(f);
      if (!composable && gf != kNone) return "composite of non-composable " + nm(g) + " . " + nm(f);
      if (composable && (arrows_[gf].source != arrows_[f].source || arrows_[gf].target != arrows_[g].target))
        return "composite " + nm(g) + " . " + nm(f) + " has wrong endpoints";
    }
  for (Index f = 0; f < A; ++f) {
    const auto& a = arrows_[f];
    if (compose(f, identities_[a.source]) != f || compose(identities_[a.target], f) != f)
      return "identity law fails for " + nm(f);
    const Index inv = inverses_[f];
    if (arrows_[inv].source != a.target || arrows_[inv].target != a.source)
      return "inverse of " + nm(f) + " has wrong endpoints";
    if (compose(inv, f) != identities_[a.source] || compose(f, inv) != identities_[a.target])
      return "inverse law fails for " + nm(f);
  }
  for (Index h = 0; h < A; ++h)
    for (Index g = 0; g < A; ++g) {
      if (arrows_[h].source != arrows_[g].target) continue;
      const Index hg = compose(h, g);
      for (Index f = 0; f < A; ++f) {
        if (arrows_[g].source != arrows_[f].target) continue;
        if (compose(h, compose(g, f)) != compose(hg, f))
          return "associativity fails on " + nm(h) + ", " + nm(g) + ", " + nm(f);
      }
    }
  return std::nullopt;
}

// ---- builders ----

namespace {

struct TableBuilder {
  std::vector<std::string> objects;
  std::vector<FiniteGroupoid::Arrow> arrows;

  FiniteGroupoid build(const std::function<Index(Index, Index)>& comp,
                       const std::function<Index(Index)>& ident, const std::function<Index(Index)>& inv) {
    const std::size_t A = arrows.size();
    std::vector<Index> table(A * A, FiniteGroupoid::kNone);
    for (Index g = 0; g < A; ++g)
      for (Index f = 0; f < A; ++f)
        if (arrows[g].source == arrows[f].target) table[g * A + f] = comp(g, f);
    std::vector<Index> ids, invs;
    for (Index x = 0; x < objects.size(); ++x) ids.push_back(ident(x));
    for (Index f = 0; f < A; ++f) invs.push_back(inv(f));
    return FiniteGroupoid(objects, arrows, std::move(table), std::move(ids), std::move(invs));
  }
};

}  // namespace

FiniteGroupoid cyclic_group(int n) {
  if (n < 1) throw InvalidArgument("cyclic_group: order must be positive");
  TableBuilder b;
  b.objects = {"*"};
  for (int k = 0; k < n; ++k) b.arrows.push_back({std::to_string(k), 0, 0});
  const auto N = static_cast<Index>(n);
  return b.build([N](Index g, Index f) { return (g + f) % N; }, [](Index) { return Index{0}; },
                 [N](Index f) { return (N - f) % N; });
}

FiniteGroupoid symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  TableBuilder b;
  b.objects = {"*"};
  for (const auto& q : perms)
    b.arrows.push_back({std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]), 0, 0});
  auto find = [&](const std::array<int, 3>& q) {
    return static_cast<Index>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  return b.build(
      [&](Index g, Index f) {
        std::array<int, 3> r{};
        for (int i = 0; i < 3; ++i) r[static_cast<std::size_t>(i)] = perms[g][static_cast<std::size_t>(perms[f][static_cast<std::size_t>(i)])];
        return find(r);
      },
      [](Index) { return Index{0}; },
      [&](Index f) {
        std::array<int, 3> r{};
        for (int i = 0; i < 3; ++i) r[static_cast<std::size_t>(perms[f][static_cast<std::size_t>(i)])] = i;
        return find(r);
      });
}

FiniteGroupoid discrete_groupoid(const std::vector<std::string>& objects) {
  TableBuilder b;
  b.objects = objects;
  for (Index x = 0; x < objects.size(); ++x) b.arrows.push_back({"id_" + objects[x], x, x});
  return b.build([](Index g, Index) { return g; }, [](Index x) { return x; }, [](Index f) { return f; });
}

FiniteGroupoid indiscrete_groupoid(const std::vector<std::string>& objects) {
  TableBuilder b;
  b.objects = objects;
  const auto n = static_cast<Index>(objects.size());
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) b.arrows.push_back({objects[x] + ">" + objects[y], x, y});
  return b.build([n](Index g, Index f) { return (f / n) * n + g % n; },
                 [n](Index x) { return x * n + x; }, [n](Index f) { return (f % n) * n + f / n; });
}

FiniteGroupoid connected_groupoid(int objects, int n) {
  if (objects < 1 || n < 1) throw InvalidArgument("connected_groupoid: sizes must be positive");
  TableBuilder b;
  const auto K = static_cast<Index>(objects), N = static_cast<Index>(n);
  for (Index i = 0; i < K; ++i) b.objects.push_back("x" + std::to_string(i));
  // arrow (i, j, r) sits at (i * K + j) * N + r
  for (Index i = 0; i < K; ++i)
    for (Index j = 0; j < K; ++j)
      for (Index r = 0; r < N; ++r)
        b.arrows.push_back({"x" + std::to_string(i) + ">x" + std::to_string(j) + ":" + std::to_string(r), i, j});
  auto at = [K, N](Index i, Index j, Index r) { return (i * K + j) * N + r; };
  return b.build(
      [&](Index g, Index f) {
        const Index fi = f / (K * N), fr = f % N, gj = (g / N) % K, gr = g % N;
        return at(fi, gj, (fr + gr) % N);
      },
      [&](Index x) { return at(x, x, 0); },
      [&](Index f) {
        const Index i = f / (K * N), j = (f / N) % K, r = f % N;
        return at(j, i, (N - r) % N);
      });
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  std::vector<std::string> objects;
  for (const auto& o : a.objects()) objects.push_back("0." + o);
  for (const auto& o : b.objects()) objects.push_back("1." + o);
  const auto oa = static_cast<Index>(a.object_count());
  const auto na = static_cast<Index>(a.arrow_count());
  std::vector<FiniteGroupoid::Arrow> arrows;
  for (const auto& f : a.arrows()) arrows.push_back({"0." + f.name, f.source, f.target});
  for (const auto& f : b.arrows()) arrows.push_back({"1." + f.name, f.source + oa, f.target + oa});
  const std::size_t A = arrows.size();
  std::vector<Index> table(A * A, FiniteGroupoid::kNone);
  for (Index g = 0; g < A; ++g)
    for (Index f = 0; f < A; ++f) {
      if (g < na && f < na) table[g * A + f] = a.compose(g, f);
      else if (g >= na && f >= na) {
        const Index c = b.compose(g - na, f - na);
        table[g * A + f] = c == FiniteGroupoid::kNone ? c : c + na;
      }
    }
  std::vector<Index> ids, invs;
  for (Index v : a.identities()) ids.push_back(v);
  for (Index v : b.identities()) ids.push_back(v + na);
  for (Index v : a.inverses()) invs.push_back(v);
  for (Index v : b.inverses()) invs.push_back(v + na);
  return FiniteGroupoid(std::move(objects), std::move(arrows), std::move(table), std::move(ids),
                        std::move(invs));
}

std::optional<std::string> isomorphism_violation(const FiniteGroupoid& a, const FiniteGroupoid& b,
                                                 const GroupoidIsomorphism& iso) {
  if (iso.objects.size() != a.object_count() || a.object_count() != b.object_count())
    return "object map is not a bijection";
  if (iso.arrows.size() != a.arrow_count() || a.arrow_count() != b.arrow_count())
    return "arrow map is not a bijection";
  std::vector<bool> hit(b.object_count(), false);
  for (Index v : iso.objects) {
    if (v >= b.object_count() || hit[v]) return "object map is not a bijection";
    hit[v] = true;
  }
  hit.assign(b.arrow_count(), false);
  for (Index v : iso.arrows) {
    if (v >= b.arrow_count() || hit[v]) return "arrow map is not a bijection";
    hit[v] = true;
  }
  for (Index f = 0; f < a.arrow_count(); ++f) {
    const auto& fa = a.arrow(f);
    const auto& fb = b.arrow(iso.arrows[f]);
    if (iso.objects[fa.source] != fb.source || iso.objects[fa.target] != fb.target)
      return "endpoints of '" + fa.name + "' not preserved";
    if (iso.arrows[a.inverse(f)] != b.inverse(iso.arrows[f])) return "inverse of '" + fa.name + "' not preserved";
  }
  for (Index x = 0; x < a.object_count(); ++x)
    if (iso.arrows[a.identity(x)] != b.identity(iso.objects[x]))
      return "identity of '" + a.object(x) + "' not preserved";
  for (Index g = 0; g < a.arrow_count(); ++g)
    for (Index f = 0; f < a.arrow_count(); ++f) {
      const Index gf = a.compose(g, f);
      if (gf == FiniteGroupoid::kNone) continue;
      if (iso.arrows[gf] != b.compose(iso.arrows[g], iso.arrows[f]))
        return "composite '" + a.arrow(g).name + "' . '" + a.arrow(f).name + "' not preserved";
    }
  return std::nullopt;
}

std::vector<std::vector<Index>> connected_components(const FiniteGroupoid& g) {
  const std::size_t n = g.object_count();
  std::vector<Index> comp(n, FiniteGroupoid::kNone);
  std::vector<std::vector<Index>> out;
  for (Index start = 0; start < n; ++start) {
    if (comp[start] != FiniteGroupoid::kNone) continue;
    // In a groupoid every arrow is invertible, so one pass over arrows from
    // the start object reaches its whole component.
    std::vector<Index> members;
    for (Index y = 0; y < n; ++y)
      if (y == start || !g.homs(start, y).empty()) {
        comp[y] = static_cast<Index>(out.size());
        members.push_back(y);
      }
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<Index> automorphisms(const FiniteGroupoid& g, Index x) { return g.homs(x, x); }

// ---- nerve ----

SimplicialSet nerve(const FiniteGroupoid& g, int N) {
  if (N < 0) throw InvalidArgument("nerve: negative truncation");
  using Key = std::vector<Index>;
  std::vector<std::vector<Key>> levels(static_cast<std::size_t>(N) + 1);
  for (Index x = 0; x < g.object_count(); ++x) levels[0].push_back({x});
  for (int l = 1; l <= N; ++l) {
    auto& cur = levels[static_cast<std::size_t>(l)];
    if (l == 1) {
      for (Index f = 0; f < g.arrow_count(); ++f) cur.push_back({f});
    } else {
      for (const Key& s : levels[static_cast<std::size_t>(l) - 1])
        for (Index f = 0; f < g.arrow_count(); ++f)
          if (g.arrow(f).source == g.arrow(s.back()).target) {
            Key t = s;
            t.push_back(f);
            cur.push_back(std::move(t));
          }
    }
    check_enumeration(static_cast<double>(cur.size()));
  }
  auto object_at = [&](int l, const Key& s, int j) -> Index {
    if (l == 0) return s[0];
    if (j < l) return g.arrow(s[static_cast<std::size_t>(j)]).source;
    return g.arrow(s.back()).target;
  };
  return SimplicialSet(detail::keyed_data(
      N, levels,
      [&](int l, int j, const Key& s) -> Key {
        if (l == 1) return {j == 0 ? g.arrow(s[0]).target : g.arrow(s[0]).source};
        Key t;
        for (int i = 0; i < l; ++i) {
          const auto I = static_cast<std::size_t>(i);
          if (j == 0 && i == 0) continue;
          if (j == l && i == l - 1) continue;
          if (j > 0 && j < l && i == j - 1) {
            t.push_back(g.compose(s[I + 1], s[I]));
            continue;
          }
          if (j > 0 && j < l && i == j) continue;
          t.push_back(s[I]);
        }
        return t;
      },
      [&](int l, int j, const Key& s) -> Key {
        const Index id = g.identity(object_at(l, s, j));
        if (l == 0) return {id};
        Key t = s;
        t.insert(t.begin() + j, id);
        return t;
      },
      [&](int l, const Key& s) -> std::string {
        if (l == 0) return g.object(s[0]);
        if (l == 1) return g.arrow(s[0]).name;
        std::vector<std::string> parts;
        for (Index f : s) parts.push_back(g.arrow(f).name);
        return detail::join_names(parts);
      }));
}

FiniteGroupoid fundamental_groupoid(const SimplicialSet& X) {
  const CheckReport rep = is_n_hypergroupoid(X, 1);
  if (!rep.passed())
    throw InvalidArgument("fundamental_groupoid: input is not a 1-hypergroupoid (" +
                          rep.failures.front().description + " at level " +
                          std::to_string(rep.failures.front().level) + ")");
  const MatchingMap inner = partial_matching_map(X, 2, 1);
  const MatchingMap outer = partial_matching_map(X, 2, 0);
  constexpr Index kAbsent = MatchingObject::kAbsent;

  std::vector<FiniteGroupoid::Arrow> arrows;
  for (Index f = 0; f < X.size(1); ++f) arrows.push_back({X.name(1, f), X.face(1, 1, f), X.face(1, 0, f)});
  const std::size_t A = arrows.size();
  std::vector<Index> table(A * A, FiniteGroupoid::kNone);
  for (Index g = 0; g < A; ++g)
    for (Index f = 0; f < A; ++f) {
      if (arrows[g].source != arrows[f].target) continue;
      const Index t = *inner.target.find({g, kAbsent, f});
      table[g * A + f] = X.face(2, 1, inner.fibers[t].front());
    }
  std::vector<Index> ids, invs;
  for (Index x = 0; x < X.size(0); ++x) ids.push_back(X.degeneracy(0, 0, x));
  for (Index f = 0; f < A; ++f) {
    const Index t = *outer.target.find({kAbsent, ids[arrows[f].source], f});
    invs.push_back(X.face(2, 0, outer.fibers[t].front()));
  }
  return FiniteGroupoid(X.names(0), std::move(arrows), std::move(table), std::move(ids), std::move(invs));
}

SimplicialMorphism edge_path_map(const SSetPtr& X, const SSetPtr& nerve_of_pi) {
  const int N = X->truncation();
  if (nerve_of_pi->truncation() != N) throw InvalidArgument("edge_path_map: truncation mismatch");
  auto edges = [](const SimplicialSet& S, int l, Index x) {
    std::vector<Index> e;
    for (int t = 0; t < l; ++t) e.push_back(S.act(MonotoneMap(l, {t, t + 1}), x));
    return e;
  };
  std::vector<std::vector<Index>> comps(static_cast<std::size_t>(N) + 1);
  for (int l = 0; l <= N; ++l) {
    const auto L = static_cast<std::size_t>(l);
    if (l <= 1) {
      for (Index x = 0; x < X->size(l); ++x) comps[L].push_back(x);
      continue;
    }
    std::map<std::vector<Index>, Index> lookup;
    for (Index s = 0; s < nerve_of_pi->size(l); ++s) lookup.emplace(edges(*nerve_of_pi, l, s), s);
    for (Index x = 0; x < X->size(l); ++x) {
      auto it = lookup.find(edges(*X, l, x));
      if (it == lookup.end()) throw InvariantViolation("edge_path_map: edge string not in the nerve");
      comps[L].push_back(it->second);
    }
  }
  return SimplicialMorphism(X, nerve_of_pi, std::move(comps));
}

// ---- local systems ----

void validate(const LocalSystemData& d) {
  if (!d.base) throw InvalidArgument("local system: missing base");
  const SimplicialSet& Y = *d.base;
  if (Y.truncation() < 1) throw InvalidArgument("local system: base must carry level 1");
  if (d.fibers.size() != Y.size(0)) throw InvalidArgument("local system: one fiber per vertex required");
  if (d.transitions.size() != Y.size(1)) throw InvalidArgument("local system: one transition per edge required");
  for (Index y = 0; y < Y.size(0); ++y) {
    std::set<std::string> seen;
    for (const auto& a : d.fibers[y])
      if (!seen.insert(a).second)
        throw InvalidArgument("local system: duplicate fiber element '" + a + "' over '" + Y.name(0, y) + "'");
  }
  for (Index z = 0; z < Y.size(1); ++z) {
    const auto& t = d.transitions[z];
    const std::size_t from = d.fibers[Y.face(1, 0, z)].size(), to = d.fibers[Y.face(1, 1, z)].size();
    if (t.size() != from || from != to)
      throw InvariantViolation("local system: transition on edge '" + Y.name(1, z) + "' is not a bijection");
    std::vector<bool> hit(to, false);
    for (Index v : t) {
      if (v >= to || hit[v])
        throw InvariantViolation("local system: transition on edge '" + Y.name(1, z) + "' is not a bijection");
      hit[v] = true;
    }
  }
  for (Index y = 0; y < Y.size(0); ++y) {
    const Index z = Y.degeneracy(0, 0, y);
    const auto& t = d.transitions[z];
    for (Index a = 0; a < t.size(); ++a)
      if (t[a] != a)
        throw InvariantViolation("local system: transition on degenerate edge '" + Y.name(1, z) +
                                 "' is not the identity");
  }
  if (Y.truncation() >= 2)
    for (Index w = 0; w < Y.size(2); ++w) {
      const auto& t0 = d.transitions[Y.face(2, 0, w)];
      const auto& t1 = d.transitions[Y.face(2, 1, w)];
      const auto& t2 = d.transitions[Y.face(2, 2, w)];
      for (Index a = 0; a < t1.size(); ++a)
        if (t2[t0[a]] != t1[a])
          throw InvariantViolation("local system: cocycle condition fails on 2-simplex '" + Y.name(2, w) + "'");
    }
}

SimplicialMorphism local_system_total(const LocalSystemData& d) {
  validate(d);
  const SSetPtr& base = d.base;
  const SimplicialSet& Y = *base;
  const int N = Y.truncation();
  std::vector<std::vector<Index>> inverse(d.transitions.size());
  for (std::size_t z = 0; z < d.transitions.size(); ++z) {
    inverse[z].resize(d.transitions[z].size());
    for (Index a = 0; a < d.transitions[z].size(); ++a) inverse[z][d.transitions[z][a]] = a;
  }
  // offset[l][w]: index of (w, 0) in X_l.
  std::vector<std::vector<Index>> offset(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<Index>> first_vertex(static_cast<std::size_t>(N) + 1);
  SimplicialSet::Data data;
  data.truncation = N;
  data.names.resize(static_cast<std::size_t>(N) + 1);
  data.faces.resize(static_cast<std::size_t>(N) + 1);
  data.degeneracies.resize(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<Index>> proj(static_cast<std::size_t>(N) + 1);
  for (int l = 0; l <= N; ++l) {
    const auto L = static_cast<std::size_t>(l);
    Index next = 0;
    for (Index w = 0; w < Y.size(l); ++w) {
      const Index v0 = Y.vertex(l, w, 0);
      first_vertex[L].push_back(v0);
      offset[L].push_back(next);
      for (const auto& a : d.fibers[v0]) {
        data.names[L].push_back(Y.name(l, w) + "/" + a);
        proj[L].push_back(w);
        ++next;
      }
    }
    check_enumeration(static_cast<double>(next));
  }
  for (int l = 0; l <= N; ++l) {
    const auto L = static_cast<std::size_t>(l);
    if (l > 0)
      for (int j = 0; j <= l; ++j) {
        std::vector<Index> f;
        for (Index w = 0; w < Y.size(l); ++w) {
          const Index fw = Y.face(l, j, w);
          const Index edge = l == 1 ? w : Y.act(MonotoneMap(l, {0, 1}), w);
          for (Index a = 0; a < d.fibers[first_vertex[L][w]].size(); ++a)
            f.push_back(offset[L - 1][fw] + (j == 0 ? inverse[edge][a] : a));
        }
        data.faces[L].push_back(std::move(f));
      }
    if (l < N)
      for (int j = 0; j <= l; ++j) {
        std::vector<Index> s;
        for (Index w = 0; w < Y.size(l); ++w)
          for (Index a = 0; a < d.fibers[first_vertex[L][w]].size(); ++a)
            s.push_back(offset[L + 1][Y.degeneracy(l, j, w)] + a);
        data.degeneracies[L].push_back(std::move(s));
      }
  }
  auto total = make_sset(std::move(data));
  return SimplicialMorphism(total, base, std::move(proj));
}

LocalSystemData descent_data(const SimplicialMorphism& f) {
  const CheckReport rep = is_cartesian(f);
  if (!rep.passed())
    throw InvalidArgument("descent_data: morphism is not Cartesian (" + rep.failures.front().description + ")");
  const SimplicialSet& X = f.source();
  const SimplicialSet& Y = f.target();
  if (Y.truncation() < 1) throw InvalidArgument("descent_data: base must carry level 1");
  LocalSystemData d;
  d.base = f.target_ptr();
  d.fibers.resize(Y.size(0));
  std::vector<Index> position(X.size(0));
  for (Index x = 0; x < X.size(0); ++x) {
    auto& fib = d.fibers[f(0, x)];
    position[x] = static_cast<Index>(fib.size());
    fib.push_back(X.name(0, x));
  }
  std::map<std::pair<Index, Index>, Index> lift;  // (z, d_0 x) -> x
  for (Index x = 0; x < X.size(1); ++x) lift.emplace(std::make_pair(f(1, x), X.face(1, 0, x)), x);
  std::vector<std::vector<Index>> over(Y.size(0));
  for (Index x = 0; x < X.size(0); ++x) over[f(0, x)].push_back(x);
  d.transitions.resize(Y.size(1));
  for (Index z = 0; z < Y.size(1); ++z)
    for (Index b : over[Y.face(1, 0, z)]) d.transitions[z].push_back(position[X.face(1, 1, lift.at({z, b}))]);
  return d;
}

std::optional<std::vector<std::vector<Index>>> find_local_system_isomorphism(const LocalSystemData& a,
                                                                            const LocalSystemData& b) {
  if (!a.base || !b.base) return std::nullopt;
  if (a.base != b.base && a.base->data().names != b.base->data().names) return std::nullopt;
  const SimplicialSet& Y = *a.base;
  const std::size_t V = Y.size(0);
  if (a.fibers.size() != V || b.fibers.size() != V) return std::nullopt;
  for (Index y = 0; y < V; ++y)
    if (a.fibers[y].size() != b.fibers[y].size()) return std::nullopt;
  auto invert = [](const std::vector<Index>& p) {
    std::vector<Index> q(p.size());
    for (Index i = 0; i < p.size(); ++i) q[p[i]] = i;
    return q;
  };
  auto comp = [](const std::vector<Index>& g, const std::vector<Index>& f) {
    std::vector<Index> r;
    for (Index v : f) r.push_back(g[v]);
    return r;
  };
  std::vector<std::vector<Index>> phi(V);
  std::vector<bool> set(V, false);
  const auto components = connected_components(Y);
  for (const auto& component : components) {
    const Index root = component.front();
    std::vector<Index> perm(a.fibers[root].size());
    std::iota(perm.begin(), perm.end(), Index{0});
    bool found = false;
    do {
      for (Index v : component) set[v] = false;
      phi[root] = perm;
      set[root] = true;
      bool ok = true;
      bool changed = true;
      while (changed && ok) {
        changed = false;
        for (Index z = 0; z < Y.size(1) && ok; ++z) {
          const Index s = Y.face(1, 0, z), t = Y.face(1, 1, z);
          const auto& ta = a.transitions[z];
          const auto& tb = b.transitions[z];
          if (set[s] && !set[t]) {
            phi[t] = comp(tb, comp(phi[s], invert(ta)));
            set[t] = changed = true;
          } else if (set[t] && !set[s]) {
            phi[s] = comp(invert(tb), comp(phi[t], ta));
            set[s] = changed = true;
          } else if (set[s] && set[t]) {
            ok = comp(phi[t], ta) == comp(tb, phi[s]);
          }
        }
      }
      if (ok) {
        found = true;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found) return std::nullopt;
  }
  return phi;
}

}  // namespace hgk
