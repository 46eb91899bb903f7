#include "hgk/hom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "hgk/error.hpp"

namespace hgk {

namespace {

constexpr Index kUnset = static_cast<Index>(-1);

struct Descendant {
  int level;
  Index index;
  std::vector<int> repeats;  // degeneracies applied in order, starting at the root level
};

struct NondegSlot {
  int level;
  Index index;
  std::vector<Descendant> descendants;
};

class HomEnumerator {
 public:
  HomEnumerator(const SimplicialSet& K, const SimplicialSet& X, HomOptions opt)
      : K_(K), X_(X), opt_(opt), N_(K.truncation()) {
    if (K.truncation() != X.truncation())
      throw InvalidArgument("hom_set: truncation mismatch (" + std::to_string(K.truncation()) +
                            " vs " + std::to_string(X.truncation()) + ")");
    std::vector<std::vector<std::size_t>> slot_of(static_cast<std::size_t>(N_) + 1);
    for (int l = 0; l <= N_; ++l) {
      auto nd = K.nondegenerate(l);
      if (opt_.reverse_order) std::reverse(nd.begin(), nd.end());
      slot_of[static_cast<std::size_t>(l)].assign(K.size(l), 0);
      for (Index x : nd) {
        slot_of[static_cast<std::size_t>(l)][x] = slots_.size();
        slots_.push_back({l, x, {}});
      }
    }
    for (int l = 0; l <= N_; ++l)
      for (Index t = 0; t < K.size(l); ++t) {
        const MonotoneMap& epi = K.decomposition_epi(l, t);
        const int rl = epi.codomain();
        const Index r = K.decomposition_root(l, t);
        slots_[slot_of[static_cast<std::size_t>(rl)][r]].descendants.push_back({l, t, epi.repeats()});
      }
    order_slots(slot_of);
    image_.resize(static_cast<std::size_t>(N_) + 1);
    used_.resize(static_cast<std::size_t>(N_) + 1);
    for (int l = 0; l <= N_; ++l) {
      image_[static_cast<std::size_t>(l)].assign(K.size(l), kUnset);
      used_[static_cast<std::size_t>(l)].assign(X.size(l), false);
    }
    by_boundary_.resize(static_cast<std::size_t>(N_) + 1);
    indexed_.assign(static_cast<std::size_t>(N_) + 1, false);
    upper_bound_ = 1.0;
    for (const auto& s : slots_) upper_bound_ *= static_cast<double>(X.size(s.level));
  }

  void run(const std::function<bool(const Components&)>& visit) {
    visit_ = &visit;
    stopped_ = false;
    found_ = 0;
    dfs(0);
  }

 private:
  // Places each simplex as soon as its faces are fixed, highest level
  // first, so boundary constraints prune the search early.
  void order_slots(const std::vector<std::vector<std::size_t>>& slot_of) {
    const std::size_t S = slots_.size();
    std::vector<std::vector<std::size_t>> dependents(S);
    std::vector<std::size_t> waiting(S, 0);
    for (std::size_t p = 0; p < S; ++p) {
      const auto& s = slots_[p];
      if (s.level == 0) continue;
      std::set<std::size_t> deps;
      for (int j = 0; j <= s.level; ++j) {
        const Index f = K_.face(s.level, j, s.index);
        const int rl = K_.decomposition_epi(s.level - 1, f).codomain();
        deps.insert(slot_of[static_cast<std::size_t>(rl)][K_.decomposition_root(s.level - 1, f)]);
      }
      waiting[p] = deps.size();
      for (std::size_t q : deps) dependents[q].push_back(p);
    }
    auto later = [&](std::size_t a, std::size_t b) {
      return slots_[a].level != slots_[b].level ? slots_[a].level < slots_[b].level : a > b;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
    for (std::size_t p = 0; p < S; ++p)
      if (waiting[p] == 0) ready.push(p);
    std::vector<NondegSlot> ordered;
    ordered.reserve(S);
    while (!ready.empty()) {
      const std::size_t p = ready.top();
      ready.pop();
      ordered.push_back(std::move(slots_[p]));
      for (std::size_t q : dependents[p])
        if (--waiting[q] == 0) ready.push(q);
    }
    slots_ = std::move(ordered);
  }

  const std::vector<Index>& candidates(const NondegSlot& s) {
    const auto L = static_cast<std::size_t>(s.level);
    if (s.level == 0) {
      if (all0_.empty())
        for (Index x = 0; x < X_.size(0); ++x) all0_.push_back(x);
      return all0_;
    }
    if (!indexed_[L]) {
      for (Index x = 0; x < X_.size(s.level); ++x) {
        std::vector<Index> key;
        for (int j = 0; j <= s.level; ++j) key.push_back(X_.face(s.level, j, x));
        by_boundary_[L][key].push_back(x);
      }
      indexed_[L] = true;
    }
    std::vector<Index> key;
    for (int j = 0; j <= s.level; ++j)
      key.push_back(image_[L - 1][K_.face(s.level, j, s.index)]);
    auto it = by_boundary_[L].find(key);
    return it == by_boundary_[L].end() ? empty_ : it->second;
  }

  // Assigns x to the slot and all its degenerate descendants; returns the
  // number of descendants written so the caller can undo.
  bool place(const NondegSlot& s, Index x, std::size_t& written) {
    written = 0;
    for (const auto& d : s.descendants) {
      Index cur = x;
      int level = s.level;
      for (int t : d.repeats) cur = X_.degeneracy(level++, t, cur);
      if (opt_.injective) {
        auto&& u = used_[static_cast<std::size_t>(d.level)][cur];
        if (u) return false;
        u = true;
      }
      image_[static_cast<std::size_t>(d.level)][d.index] = cur;
      ++written;
    }
    return true;
  }

  void unplace(const NondegSlot& s, std::size_t written) {
    for (std::size_t i = 0; i < written; ++i) {
      const auto& d = s.descendants[i];
      auto& slot = image_[static_cast<std::size_t>(d.level)][d.index];
      if (opt_.injective) used_[static_cast<std::size_t>(d.level)][slot] = false;
      slot = kUnset;
    }
  }

  void dfs(std::size_t p) {
    if (stopped_) return;
    if (p == slots_.size()) {
      ++found_;
      const std::size_t limit = enumeration_limit();
      if (limit != 0 && found_ > limit) throw EnumerationLimitExceeded(limit, upper_bound_);
      if (!(*visit_)(image_)) stopped_ = true;
      return;
    }
    const NondegSlot& s = slots_[p];
    // Copy: the candidate list may be rebuilt by deeper calls on other levels.
    const std::vector<Index> cands = candidates(s);
    for (Index x : cands) {
      std::size_t written = 0;
      if (place(s, x, written)) dfs(p + 1);
      unplace(s, written);
      if (stopped_) return;
    }
  }

  const SimplicialSet& K_;
  const SimplicialSet& X_;
  HomOptions opt_;
  int N_;
  std::vector<NondegSlot> slots_;
  Components image_;
  std::vector<std::vector<bool>> used_;
  std::vector<std::map<std::vector<Index>, std::vector<Index>>> by_boundary_;
  std::vector<bool> indexed_;
  std::vector<Index> all0_;
  const std::vector<Index> empty_;
  const std::function<bool(const Components&)>* visit_ = nullptr;
  bool stopped_ = false;
  std::size_t found_ = 0;
  double upper_bound_ = 0;
};

}  // namespace

void for_each_hom(const SimplicialSet& K, const SimplicialSet& X,
                  const std::function<bool(const Components&)>& visit, HomOptions options) {
  HomEnumerator e(K, X, options);
  e.run(visit);
}

std::size_t count_homs(const SimplicialSet& K, const SimplicialSet& X, HomOptions options) {
  std::size_t n = 0;
  for_each_hom(K, X, [&](const Components&) { return ++n, true; }, options);
  return n;
}

std::vector<SimplicialMorphism> hom_set(const SSetPtr& K, const SSetPtr& X) {
  std::vector<SimplicialMorphism> out;
  for_each_hom(*K, *X, [&](const Components& c) {
    out.push_back(SimplicialMorphism::unchecked(K, X, c));
    return true;
  });
  return out;
}

std::optional<SimplicialMorphism> find_isomorphism(const SSetPtr& X, const SSetPtr& Y) {
  if (X->truncation() != Y->truncation()) return std::nullopt;
  for (int l = 0; l <= X->truncation(); ++l)
    if (X->size(l) != Y->size(l)) return std::nullopt;
  std::optional<SimplicialMorphism> found;
  for_each_hom(
      *X, *Y,
      [&](const Components& c) {
        found = SimplicialMorphism::unchecked(X, Y, c);
        return false;
      },
      {.reverse_order = false, .injective = true});
  return found;
}

// ---- coskeleton ----

namespace {

// Simplices of (Delta^i)_{<=m}, i.e. monotone maps [j] -> [i] for j <= m,
// flattened level by level in lexicographic order.
struct TruncatedSimplexShape {
  int i;
  int m;
  std::vector<MonotoneMap> maps;
  std::map<MonotoneMap, std::size_t> position;

  TruncatedSimplexShape(int i_, int m_) : i(i_), m(m_) {
    for (int j = 0; j <= m; ++j)
      for (auto& f : all_monotone_maps(j, i)) {
        position.emplace(f, maps.size());
        maps.push_back(std::move(f));
      }
  }
};

struct CoskBuild {
  std::vector<TruncatedSimplexShape> shapes;
  std::vector<std::vector<std::vector<Index>>> tables;
  std::vector<std::map<std::vector<Index>, Index>> lookup;
};

std::vector<Index> table_of(const SimplicialSet& X, const TruncatedSimplexShape& shape, Index x) {
  std::vector<Index> t;
  t.reserve(shape.maps.size());
  for (const auto& theta : shape.maps) t.push_back(X.act(theta, x));
  return t;
}

CoskBuild build_coskeleton(const SimplicialSet& X, int m, int N) {
  if (m < 0 || m > X.truncation())
    throw InvalidArgument("coskeleton: level " + std::to_string(m) + " out of range for truncation " +
                          std::to_string(X.truncation()));
  if (N < 0) throw InvalidArgument("coskeleton: negative truncation");
  CoskBuild b;
  const SimplicialSet Xm = truncate(X, m);
  for (int i = 0; i <= N; ++i) {
    b.shapes.emplace_back(i, m);
    const auto& shape = b.shapes.back();
    std::vector<std::vector<Index>> tabs;
    if (i <= m) {
      for (Index x = 0; x < X.size(i); ++x) tabs.push_back(table_of(X, shape, x));
    } else {
      const SimplicialSet Di = standard_simplex(i, m);
      for_each_hom(Di, Xm, [&](const Components& c) {
        std::vector<Index> t;
        t.reserve(shape.maps.size());
        for (const auto& lv : c) t.insert(t.end(), lv.begin(), lv.end());
        tabs.push_back(std::move(t));
        check_enumeration(static_cast<double>(tabs.size()));
        return true;
      });
      // Canonical order, independent of the search order.
      std::sort(tabs.begin(), tabs.end());
    }
    std::map<std::vector<Index>, Index> lk;
    for (std::size_t k = 0; k < tabs.size(); ++k) lk.emplace(tabs[k], static_cast<Index>(k));
    b.tables.push_back(std::move(tabs));
    b.lookup.push_back(std::move(lk));
  }
  return b;
}

// Table of phi . theta_* where theta : [i'] -> [i] and phi is a table at level i.
std::vector<Index> precompose(const TruncatedSimplexShape& from, const TruncatedSimplexShape& to,
                              const MonotoneMap& theta, const std::vector<Index>& phi) {
  std::vector<Index> out;
  out.reserve(to.maps.size());
  for (const auto& g : to.maps) out.push_back(phi[from.position.at(compose(theta, g))]);
  return out;
}

}  // namespace

SimplicialSet coskeleton(const SimplicialSet& X, int m, int N) {
  const CoskBuild b = build_coskeleton(X, m, N);
  SimplicialSet::Data d;
  d.truncation = N;
  d.names.resize(static_cast<std::size_t>(N) + 1);
  d.faces.resize(static_cast<std::size_t>(N) + 1);
  d.degeneracies.resize(static_cast<std::size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) {
    const auto I = static_cast<std::size_t>(i);
    const auto& shape = b.shapes[I];
    if (i <= m) {
      d.names[I] = X.names(i);
    } else {
      std::vector<std::size_t> top;
      for (const auto& f : all_injections(m, i)) top.push_back(shape.position.at(f));
      for (const auto& t : b.tables[I]) {
        std::string s = "<";
        for (std::size_t k = 0; k < top.size(); ++k) {
          if (k) s += ',';
          s += X.name(m, t[top[k]]);
        }
        d.names[I].push_back(s + ">");
      }
    }
    auto op = [&](int target, const MonotoneMap& theta) {
      std::vector<Index> out;
      out.reserve(b.tables[I].size());
      const auto T = static_cast<std::size_t>(target);
      for (const auto& t : b.tables[I])
        out.push_back(b.lookup[T].at(precompose(shape, b.shapes[T], theta, t)));
      return out;
    };
    if (i > 0)
      for (int j = 0; j <= i; ++j) d.faces[I].push_back(op(i - 1, MonotoneMap::coface(j, i)));
    if (i < N)
      for (int j = 0; j <= i; ++j) d.degeneracies[I].push_back(op(i + 1, MonotoneMap::codegeneracy(j, i)));
  }
  return SimplicialSet::unchecked(std::move(d));
}

SimplicialMorphism coskeleton_unit(const SSetPtr& X, int m) {
  const int N = X->truncation();
  const CoskBuild b = build_coskeleton(*X, m, N);
  auto target = make_sset(coskeleton(*X, m, N));
  Components comps(static_cast<std::size_t>(N) + 1);
  for (int i = 0; i <= N; ++i)
    for (Index x = 0; x < X->size(i); ++x)
      comps[static_cast<std::size_t>(i)].push_back(
          b.lookup[static_cast<std::size_t>(i)].at(table_of(*X, b.shapes[static_cast<std::size_t>(i)], x)));
  return SimplicialMorphism::unchecked(X, target, std::move(comps));
}

// ---- mapping space ----

SimplicialSet mapping_space(const SimplicialSet& X, const SimplicialSet& Y, int upto) {
  if (upto < 0) throw InvalidArgument("mapping_space: negative level");
  const int N = X.truncation();
  if (Y.truncation() != N) throw InvalidArgument("mapping_space: truncation mismatch");

  // Index of each monotone map [l] -> [n] inside standard_simplex(n, N).
  auto simplex_index = [N](int n) {
    std::vector<std::map<MonotoneMap, Index>> idx(static_cast<std::size_t>(N) + 1);
    for (int l = 0; l <= N; ++l) {
      Index k = 0;
      for (auto& f : all_monotone_maps(l, n)) idx[static_cast<std::size_t>(l)].emplace(f, k++);
    }
    return idx;
  };

  std::vector<std::vector<Components>> homs;
  std::vector<std::map<Components, Index>> lookup;
  for (int n = 0; n <= upto; ++n) {
    const SimplicialSet P = product(standard_simplex(n, N), X);
    std::vector<Components> level;
    for_each_hom(P, Y, [&](const Components& c) {
      level.push_back(c);
      check_enumeration(static_cast<double>(level.size()));
      return true;
    });
    std::map<Components, Index> lk;
    for (std::size_t k = 0; k < level.size(); ++k) lk.emplace(level[k], static_cast<Index>(k));
    homs.push_back(std::move(level));
    lookup.push_back(std::move(lk));
  }

  // phi |-> phi . (theta x id) for theta : [a] -> [b].
  auto induced = [&](int a, int b, const MonotoneMap& theta) {
    const auto from = simplex_index(b);
    const auto maps_a = [&] {
      std::vector<std::vector<MonotoneMap>> v;
      for (int l = 0; l <= N; ++l) v.push_back(all_monotone_maps(l, a));
      return v;
    }();
    std::vector<Index> out;
    for (const auto& phi : homs[static_cast<std::size_t>(b)]) {
      Components c(static_cast<std::size_t>(N) + 1);
      for (int l = 0; l <= N; ++l) {
        const auto L = static_cast<std::size_t>(l);
        const auto nx = static_cast<Index>(X.size(l));
        for (const auto& g : maps_a[L]) {
          const Index s = from[L].at(compose(theta, g));
          for (Index x = 0; x < nx; ++x) c[L].push_back(phi[L][s * nx + x]);
        }
      }
      out.push_back(lookup[static_cast<std::size_t>(a)].at(c));
    }
    return out;
  };

  SimplicialSet::Data d;
  d.truncation = upto;
  d.names.resize(static_cast<std::size_t>(upto) + 1);
  d.faces.resize(static_cast<std::size_t>(upto) + 1);
  d.degeneracies.resize(static_cast<std::size_t>(upto) + 1);
  for (int n = 0; n <= upto; ++n) {
    const auto Nn = static_cast<std::size_t>(n);
    for (std::size_t k = 0; k < homs[Nn].size(); ++k)
      d.names[Nn].push_back("f" + std::to_string(n) + "." + std::to_string(k));
    if (n > 0)
      for (int j = 0; j <= n; ++j) d.faces[Nn].push_back(induced(n - 1, n, MonotoneMap::coface(j, n)));
    if (n < upto)
      for (int j = 0; j <= n; ++j)
        d.degeneracies[Nn].push_back(induced(n + 1, n, MonotoneMap::codegeneracy(j, n)));
  }
  return SimplicialSet::unchecked(std::move(d));
}

}  // namespace hgk
