#include "hgk/kan.hpp"

#include <algorithm>
#include <limits>

#include "hgk/error.hpp"

namespace hgk {

namespace {

constexpr Index kAbsent = MatchingObject::kAbsent;

MatchingObject enumerate_matching(const SimplicialSet& X, int m, std::optional<int> omitted) {
  MatchingObject mo;
  mo.level = m;
  mo.omitted = omitted;
  if (m == 0) {
    mo.tuples.push_back({});
    mo.index.emplace(std::vector<Index>{}, 0);
    return mo;
  }
  std::vector<int> present;
  for (int i = 0; i <= m; ++i)
    if (!omitted || *omitted != i) present.push_back(i);

  const int below = m - 1;
  const std::size_t n_below = X.size(below);
  // by_face[a][v]: simplices y of level m-1 with d_a y = v.
  std::vector<std::vector<std::vector<Index>>> by_face;
  if (m >= 2) {
    by_face.resize(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
      auto& bf = by_face[static_cast<std::size_t>(a)];
      bf.resize(X.size(m - 2));
      for (Index y = 0; y < n_below; ++y) bf[X.face(below, a, y)].push_back(y);
    }
  }
  std::vector<Index> all(n_below);
  for (Index y = 0; y < n_below; ++y) all[y] = y;

  std::vector<Index> cur(static_cast<std::size_t>(m) + 1, kAbsent);
  auto rec = [&](auto&& self, std::size_t p) -> void {
    if (p == present.size()) {
      mo.index.emplace(cur, static_cast<Index>(mo.tuples.size()));
      mo.tuples.push_back(cur);
      check_enumeration(static_cast<double>(mo.tuples.size()));
      return;
    }
    const int b = present[p];
    const std::vector<Index>* cands = &all;
    if (m >= 2 && p > 0) {
      const int a0 = present[0];
      cands = &by_face[static_cast<std::size_t>(a0)][X.face(below, b - 1, cur[static_cast<std::size_t>(a0)])];
    }
    for (Index y : *cands) {
      bool ok = true;
      if (m >= 2)
        for (std::size_t q = 1; q < p && ok; ++q) {
          const int a = present[q];
          ok = X.face(below, a, y) == X.face(below, b - 1, cur[static_cast<std::size_t>(a)]);
        }
      if (!ok) continue;
      cur[static_cast<std::size_t>(b)] = y;
      self(self, p + 1);
    }
    cur[static_cast<std::size_t>(b)] = kAbsent;
  };
  rec(rec, 0);
  return mo;
}

std::vector<Index> restriction_tuple(const SimplicialSet& X, int m, std::optional<int> omitted,
                                     Index x) {
  std::vector<Index> t(static_cast<std::size_t>(m) + (m == 0 ? 0 : 1), kAbsent);
  for (int i = 0; i <= m && m > 0; ++i)
    if (!omitted || *omitted != i) t[static_cast<std::size_t>(i)] = X.face(m, i, x);
  return t;
}

void check_level(const SimplicialSet& X, int m, std::optional<int> k) {
  if (m < 0 || m > X.truncation())
    throw InvalidArgument("matching object: level " + std::to_string(m) + " out of range");
  if (k) {
    if (m < 1) throw InvalidArgument("horn matching object needs m >= 1");
    if (*k < 0 || *k > m) throw InvalidArgument("horn index out of range");
  }
}

MatchingMap matching_map(const SimplicialSet& X, int m, std::optional<int> k) {
  check_level(X, m, k);
  MatchingMap mm{enumerate_matching(X, m, k), {}, {}};
  mm.fibers.resize(mm.target.size());
  for (Index x = 0; x < X.size(m); ++x) {
    auto t = mm.target.find(restriction_tuple(X, m, k, x));
    if (!t) throw InvariantViolation("matching map: faces of a simplex are not compatible");
    mm.image.push_back(*t);
    mm.fibers[*t].push_back(x);
  }
  return mm;
}

bool fibers_nonempty(const std::vector<std::vector<Index>>& fibers) {
  return std::all_of(fibers.begin(), fibers.end(), [](const auto& f) { return !f.empty(); });
}
bool fibers_small(const std::vector<std::vector<Index>>& fibers) {
  return std::all_of(fibers.begin(), fibers.end(), [](const auto& f) { return f.size() <= 1; });
}

}  // namespace

std::optional<Index> MatchingObject::find(const std::vector<Index>& tuple) const {
  auto it = index.find(tuple);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

MatchingObject horn_matching_object(const SimplicialSet& X, int m, int k) {
  check_level(X, m, k);
  return enumerate_matching(X, m, k);
}

MatchingObject boundary_matching_object(const SimplicialSet& X, int m) {
  check_level(X, m, std::nullopt);
  return enumerate_matching(X, m, std::nullopt);
}

bool MatchingMap::surjective() const { return fibers_nonempty(fibers); }
bool MatchingMap::injective() const { return fibers_small(fibers); }

MatchingMap partial_matching_map(const SimplicialSet& X, int m, int k) { return matching_map(X, m, k); }
MatchingMap boundary_matching_map(const SimplicialSet& X, int m) {
  return matching_map(X, m, std::nullopt);
}

RelativeMatchingMap relative_matching_map(const SimplicialMorphism& f, int m, std::optional<int> k) {
  const SimplicialSet& X = f.source();
  const SimplicialSet& Y = f.target();
  check_level(X, m, k);
  RelativeMatchingMap r;
  r.level = m;
  r.omitted = k;
  r.source_matching = enumerate_matching(X, m, k);
  const MatchingObject ymo = enumerate_matching(Y, m, k);

  // Y-simplices grouped by their restriction.
  std::vector<std::vector<Index>> y_over(ymo.size());
  for (Index y = 0; y < Y.size(m); ++y) {
    auto t = ymo.find(restriction_tuple(Y, m, k, y));
    if (!t) throw InvariantViolation("relative matching map: incompatible faces in target");
    y_over[*t].push_back(y);
  }
  std::map<std::pair<Index, Index>, Index> pair_index;
  for (Index h = 0; h < r.source_matching.size(); ++h) {
    std::vector<Index> pushed = r.source_matching.tuples[h];
    for (auto& e : pushed)
      if (e != kAbsent) e = f(m - 1, e);
    auto t = ymo.find(pushed);
    if (!t) throw InvariantViolation("relative matching map: image of a matching tuple is not compatible");
    for (Index y : y_over[*t]) {
      pair_index.emplace(std::make_pair(h, y), static_cast<Index>(r.pairs.size()));
      r.pairs.emplace_back(h, y);
    }
    check_enumeration(static_cast<double>(r.pairs.size()));
  }
  r.fibers.resize(r.pairs.size());
  for (Index x = 0; x < X.size(m); ++x) {
    const Index h = *r.source_matching.find(restriction_tuple(X, m, k, x));
    const Index t = pair_index.at({h, f(m, x)});
    r.image.push_back(t);
    r.fibers[t].push_back(x);
  }
  return r;
}

// ---- site ----

bool FiniteMap::surjective() const {
  std::vector<bool> hit(codomain, false);
  for (Index v : values) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool FiniteMap::injective() const {
  std::vector<bool> hit(codomain, false);
  for (Index v : values) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

FiniteMap compose(const FiniteMap& g, const FiniteMap& f) {
  if (f.codomain != g.domain()) throw InvalidArgument("compose: finite maps not composable");
  FiniteMap out{g.codomain, {}};
  for (Index v : f.values) out.values.push_back(g.values[v]);
  return out;
}

FiniteMap base_change(const FiniteMap& f, const FiniteMap& g) {
  if (f.codomain != g.codomain) throw InvalidArgument("base_change: maps have different codomains");
  FiniteMap out{g.domain(), {}};
  for (Index z = 0; z < g.domain(); ++z)
    for (Index x = 0; x < f.domain(); ++x)
      if (f.values[x] == g.values[z]) out.values.push_back(z);
  return out;
}

SiteCovers finite_set_site() {
  return {"finite sets / surjections", [](const FiniteMap& m) { return m.surjective(); }};
}

// ---- reports ----

std::string to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::missing_filler: return "missing-filler";
    case FailureKind::non_unique_filler: return "non-unique-filler";
    case FailureKind::not_cover: return "not-cover";
    case FailureKind::not_coskeletal: return "not-coskeletal";
    case FailureKind::not_bijective: return "not-bijective";
    case FailureKind::nonzero_normalized: return "nonzero-normalized";
  }
  return "unknown";
}

namespace {

MapStatistics stats_of(std::string map, int level, int index, std::size_t source,
                       const std::vector<std::vector<Index>>& fibers) {
  MapStatistics s{std::move(map), level, index, source, fibers.size(), 0, 0};
  if (!fibers.empty()) {
    s.min_fiber = std::numeric_limits<std::size_t>::max();
    for (const auto& f : fibers) {
      s.min_fiber = std::min(s.min_fiber, f.size());
      s.max_fiber = std::max(s.max_fiber, f.size());
    }
  }
  return s;
}

std::string describe_tuple(const SimplicialSet& X, int level, const std::vector<Index>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ", ";
    s += t[i] == kAbsent ? std::string("_") : X.name(level, t[i]);
  }
  return s + ")";
}

// Records at most one empty-fiber and one multi-element-fiber witness.
void record_fiber_failures(CheckReport& rep, const std::vector<std::vector<Index>>& fibers,
                           bool need_surjective, bool need_injective, int level, int index,
                           FailureKind empty_kind, FailureKind multi_kind,
                           const std::function<std::pair<std::vector<Index>, std::optional<Index>>(Index)>& witness,
                           const std::function<std::string(Index)>& describe) {
  bool empty_done = !need_surjective, multi_done = !need_injective;
  for (Index t = 0; t < fibers.size() && !(empty_done && multi_done); ++t) {
    const auto& fib = fibers[t];
    if (!empty_done && fib.empty()) {
      auto [tuple, over] = witness(t);
      rep.failures.push_back({level, index, empty_kind, tuple, over, {}, "no preimage over " + describe(t)});
      empty_done = true;
    } else if (!multi_done && fib.size() > 1) {
      auto [tuple, over] = witness(t);
      rep.failures.push_back({level, index, multi_kind, tuple, over, fib,
                              std::to_string(fib.size()) + " preimages over " + describe(t)});
      multi_done = true;
    }
  }
}

void require_truncation(int have, int need) {
  if (have < need) throw TruncationTooSmall(have, need);
}

}  // namespace

CheckReport is_kan(const SimplicialSet& X, int upto) {
  if (upto > X.truncation()) throw TruncationTooSmall(X.truncation(), upto);
  CheckReport rep{"kan", {}, {}};
  for (int m = 1; m <= upto; ++m)
    for (int k = 0; k <= m; ++k) {
      const MatchingMap mm = partial_matching_map(X, m, k);
      rep.statistics.push_back(stats_of("horn", m, k, X.size(m), mm.fibers));
      record_fiber_failures(
          rep, mm.fibers, true, false, m, k, FailureKind::missing_filler, FailureKind::non_unique_filler,
          [&](Index t) { return std::make_pair(mm.target.tuples[t], std::optional<Index>{}); },
          [&](Index t) { return "horn " + describe_tuple(X, m - 1, mm.target.tuples[t]); });
    }
  return rep;
}

CheckReport is_n_hypergroupoid(const SimplicialSet& X, int n) {
  if (n < 0) throw InvalidArgument("is_n_hypergroupoid: negative n");
  require_truncation(X.truncation(), n + 2);
  CheckReport rep{std::to_string(n) + "-hypergroupoid", {}, {}};
  for (int m = 1; m <= n + 2; ++m)
    for (int k = 0; k <= m; ++k) {
      const MatchingMap mm = partial_matching_map(X, m, k);
      rep.statistics.push_back(stats_of("horn", m, k, X.size(m), mm.fibers));
      record_fiber_failures(
          rep, mm.fibers, true, m > n, m, k, FailureKind::missing_filler, FailureKind::non_unique_filler,
          [&](Index t) { return std::make_pair(mm.target.tuples[t], std::optional<Index>{}); },
          [&](Index t) { return "horn " + describe_tuple(X, m - 1, mm.target.tuples[t]); });
    }
  for (int m = n + 2; m <= X.truncation(); ++m) {
    const MatchingMap bm = boundary_matching_map(X, m);
    rep.statistics.push_back(stats_of("boundary", m, -1, X.size(m), bm.fibers));
    record_fiber_failures(
        rep, bm.fibers, true, true, m, -1, FailureKind::not_coskeletal, FailureKind::not_coskeletal,
        [&](Index t) { return std::make_pair(bm.target.tuples[t], std::optional<Index>{}); },
        [&](Index t) { return "boundary " + describe_tuple(X, m - 1, bm.target.tuples[t]); });
  }
  return rep;
}

CheckReport is_cartesian(const SimplicialMorphism& f) {
  const SimplicialSet& X = f.source();
  const SimplicialSet& Y = f.target();
  CheckReport rep{"cartesian", {}, {}};
  for (int n = 1; n <= X.truncation(); ++n)
    for (int i = 0; i <= n; ++i) {
      // Target: pairs (a, y) with f(a) = d_i y.
      std::vector<std::vector<Index>> a_over(Y.size(n - 1));
      for (Index a = 0; a < X.size(n - 1); ++a) a_over[f(n - 1, a)].push_back(a);
      std::vector<std::pair<Index, Index>> pairs;
      std::map<std::pair<Index, Index>, Index> idx;
      for (Index y = 0; y < Y.size(n); ++y)
        for (Index a : a_over[Y.face(n, i, y)]) {
          idx.emplace(std::make_pair(a, y), static_cast<Index>(pairs.size()));
          pairs.emplace_back(a, y);
        }
      std::vector<std::vector<Index>> fibers(pairs.size());
      for (Index x = 0; x < X.size(n); ++x) fibers[idx.at({X.face(n, i, x), f(n, x)})].push_back(x);
      rep.statistics.push_back(stats_of("cartesian", n, i, X.size(n), fibers));
      record_fiber_failures(
          rep, fibers, true, true, n, i, FailureKind::not_bijective, FailureKind::not_bijective,
          [&](Index t) { return std::make_pair(std::vector<Index>{pairs[t].first}, std::optional<Index>{pairs[t].second}); },
          [&](Index t) {
            return "(" + X.name(n - 1, pairs[t].first) + ", " + Y.name(n, pairs[t].second) + ")";
          });
    }
  return rep;
}

namespace {

void relative_level(CheckReport& rep, const SimplicialMorphism& f, int m, std::optional<int> k,
                    bool need_cover, bool need_bijective, const SiteCovers& site, FailureKind multi_kind,
                    const std::string& label) {
  const RelativeMatchingMap r = relative_matching_map(f, m, k);
  const int index = k ? *k : -1;
  rep.statistics.push_back(stats_of(label, m, index, f.source().size(m), r.fibers));
  auto witness = [&](Index t) {
    return std::make_pair(r.source_matching.tuples[r.pairs[t].first], std::optional<Index>{r.pairs[t].second});
  };
  auto describe = [&](Index t) {
    std::string s = m == 0 ? std::string("()") : describe_tuple(f.source(), m - 1, r.source_matching.tuples[r.pairs[t].first]);
    return s + " over " + f.target().name(m, r.pairs[t].second);
  };
  if (need_cover && !site.is_cover(FiniteMap{r.pairs.size(), r.image})) {
    const std::size_t before = rep.failures.size();
    record_fiber_failures(rep, r.fibers, true, false, m, index, FailureKind::not_cover,
                          FailureKind::not_cover, witness, describe);
    if (rep.failures.size() == before)
      rep.failures.push_back({m, index, FailureKind::not_cover, {}, std::nullopt, {},
                              "relative matching map is not a " + site.name + " cover"});
  }
  if (need_bijective)
    record_fiber_failures(rep, r.fibers, true, true, m, index,
                          multi_kind == FailureKind::not_coskeletal ? multi_kind : FailureKind::missing_filler,
                          multi_kind, witness, describe);
}

}  // namespace

CheckReport is_trivial_relative(const SimplicialMorphism& f, int n, const SiteCovers& site) {
  if (n < 0) throw InvalidArgument("is_trivial_relative: negative n");
  require_truncation(f.truncation(), n + 1);
  CheckReport rep{"trivial-relative " + std::to_string(n) + "-hypergroupoid", {}, {}};
  for (int m = 0; m <= f.truncation(); ++m)
    relative_level(rep, f, m, std::nullopt, m < n, m >= n, site, FailureKind::non_unique_filler,
                   "relative-boundary");
  return rep;
}

CheckReport is_relative_hypergroupoid(const SimplicialMorphism& f, int n, const SiteCovers& site) {
  if (n < 0) throw InvalidArgument("is_relative_hypergroupoid: negative n");
  require_truncation(f.truncation(), n + 2);
  CheckReport rep{"relative " + std::to_string(n) + "-hypergroupoid", {}, {}};
  for (int m = 1; m <= n + 2; ++m)
    for (int k = 0; k <= m; ++k)
      relative_level(rep, f, m, k, true, m > n, site, FailureKind::non_unique_filler, "relative-horn");
  for (int m = n + 2; m <= f.truncation(); ++m)
    relative_level(rep, f, m, std::nullopt, false, true, site, FailureKind::not_coskeletal,
                   "relative-boundary");
  return rep;
}

}  // namespace hgk
