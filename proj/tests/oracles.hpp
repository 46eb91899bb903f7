#pragma once

// Test-only oracles, independent of the library's enumeration paths.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "hgk/abelian.hpp"
#include "hgk/sset.hpp"

namespace oracle {

/// Counts morphisms K -> X by trying every assignment of non-degenerate
/// simplices (no pruning) and validating the full extension.
inline std::size_t unpruned_hom_count(const hgk::SSetPtr& K, const hgk::SSetPtr& X) {
  using namespace hgk;
  std::vector<SimplexId> nd;
  for (int l = 0; l <= K->truncation(); ++l)
    for (Index x : K->nondegenerate(l)) nd.push_back({l, x});
  std::vector<Index> choice(nd.size(), 0);
  for (const auto& s : nd)
    if (X->size(s.level) == 0) return 0;
  std::size_t count = 0;
  while (true) {
    std::vector<std::vector<Index>> comps(static_cast<std::size_t>(K->truncation()) + 1);
    for (int l = 0; l <= K->truncation(); ++l)
      for (Index t = 0; t < K->size(l); ++t) {
        const auto [epi, root] = nondegenerate_decomposition(*K, {l, t});
        std::size_t pos = 0;
        while (!(nd[pos] == root)) ++pos;
        comps[static_cast<std::size_t>(l)].push_back(X->act(epi, choice[pos]));
      }
    if (!SimplicialMorphism::unchecked(K, X, comps).violation()) ++count;
    std::size_t p = 0;
    while (p < nd.size() && ++choice[p] == X->size(nd[p].level)) choice[p++] = 0;
    if (p == nd.size()) break;
  }
  return count;
}

/// Non-degenerate decomposition by exhaustive search over epis and
/// lower simplices that are not in the image of any degeneracy.
inline std::vector<std::pair<hgk::MonotoneMap, hgk::Index>> decompositions(const hgk::SimplicialSet& X,
                                                                           int level, hgk::Index s) {
  using namespace hgk;
  std::vector<std::pair<MonotoneMap, Index>> out;
  for (int k = 0; k <= level; ++k)
    for (const auto& epi : all_surjections(level, k))
      for (Index y = 0; y < X.size(k); ++y) {
        bool degenerate = false;
        if (k > 0)
          for (int j = 0; j < k && !degenerate; ++j)
            for (Index z = 0; z < X.size(k - 1); ++z)
              if (X.degeneracy(k - 1, j, z) == y) degenerate = true;
        if (!degenerate && X.act(epi, y) == s) out.emplace_back(epi, y);
      }
  return out;
}

/// Elements of a finite product of cyclic groups with the given orders.
inline std::vector<std::vector<long long>> enumerate(const std::vector<long long>& orders) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> x(orders.size(), 0);
  while (true) {
    out.push_back(x);
    std::size_t p = 0;
    while (p < x.size() && ++x[p] == orders[p]) x[p++] = 0;
    if (p == x.size()) return out;
  }
}

inline std::vector<long long> apply(const hgk::Matrix& m, const std::vector<long long>& x,
                                    const std::vector<long long>& target_orders) {
  std::vector<long long> y(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    long long acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
    y[i] = ((acc % target_orders[i]) + target_orders[i]) % target_orders[i];
  }
  return y;
}

/// For H = Z/B at one degree of a complex of finite groups: the number of
/// h in H with d h = 0, for every d in 1..|H|. These counts determine a
/// finite abelian group up to isomorphism.
inline std::vector<std::size_t> brute_homology_signature(const hgk::ChainComplex& C, int degree) {
  const bool chain = C.orientation == hgk::Orientation::chain;
  const auto n = static_cast<std::size_t>(degree);
  const int top = C.top_degree();
  auto orders = [&](std::size_t k) {
    auto m = C.groups[k].moduli();
    return std::vector<long long>(m.begin(), m.end());
  };
  const hgk::AbHom* out = nullptr;
  const hgk::AbHom* in = nullptr;
  if (chain) {
    if (degree >= 1) out = &C.differentials[n - 1];
    if (degree < top) in = &C.differentials[n];
  } else {
    if (degree < top) out = &C.differentials[n];
    if (degree >= 1) in = &C.differentials[n - 1];
  }
  const auto here = orders(n);
  std::set<std::vector<long long>> cycles, boundaries;
  for (const auto& x : enumerate(here)) {
    bool zero = true;
    if (out)
      for (long long v : apply(out->matrix(), x, orders(chain ? n - 1 : n + 1)))
        if (v != 0) zero = false;
    if (zero) cycles.insert(x);
  }
  if (in) {
    for (const auto& y : enumerate(orders(chain ? n + 1 : n - 1))) boundaries.insert(apply(in->matrix(), y, here));
  } else {
    boundaries.insert(std::vector<long long>(here.size(), 0));
  }
  const std::size_t H = cycles.size() / boundaries.size();
  std::vector<std::size_t> sig;
  for (std::size_t d = 1; d <= H; ++d) {
    std::size_t killed = 0;
    for (const auto& z : cycles) {
      std::vector<long long> dz(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) dz[i] = (static_cast<long long>(d) * z[i]) % here[i];
      if (boundaries.count(dz)) ++killed;
    }
    sig.push_back(killed / boundaries.size());
  }
  return sig;
}

/// The same signature computed from invariant factors.
inline std::vector<std::size_t> group_signature(const hgk::FGAbelianGroup& g) {
  std::size_t order = 1;
  for (auto d : g.torsion()) order *= static_cast<std::size_t>(d);
  std::vector<std::size_t> sig;
  for (std::size_t d = 1; d <= order; ++d) {
    std::size_t c = 1;
    for (auto t : g.torsion()) c *= std::gcd(d, static_cast<std::size_t>(t));
    sig.push_back(c);
  }
  return sig;
}

/// Rank of an integer matrix over F_p.
inline std::size_t rank_mod(const hgk::Matrix& m, long long p) {
  std::vector<std::vector<long long>> a(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = ((m(i, j) % p) + p) % p;
  auto inv = [p](long long x) {
    long long r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = static_cast<long long>(static_cast<__int128>(r) * x % p);
      x = static_cast<long long>(static_cast<__int128>(x) * x % p);
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    const long long iv = inv(a[rank][c]);
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      const long long f = static_cast<long long>(static_cast<__int128>(a[i][c]) * iv % p);
      for (std::size_t j = c; j < m.cols(); ++j)
        a[i][j] = static_cast<long long>(((a[i][j] - static_cast<__int128>(f) * a[rank][j]) % p + p) % p);
    }
    ++rank;
  }
  return rank;
}

/// Rank over Q, as the largest rank modulo two big primes (a rank mod p
/// never exceeds the rational rank).
inline std::size_t rational_rank(const hgk::Matrix& m) {
  return std::max(rank_mod(m, 2147483647LL), rank_mod(m, 1000000007LL));
}

/// Betti numbers of the Cech complex of constant coefficients on a cover
/// given as point sets, from incidence matrices over Q (p == 0) or F_p.
inline std::vector<std::size_t> cech_betti(const std::vector<std::vector<int>>& pieces, int degrees, long long p,
                                           bool increasing = false) {
  const int k = static_cast<int>(pieces.size());
  auto nonempty = [&](const std::vector<int>& t) {
    for (int y : pieces[static_cast<std::size_t>(t[0])]) {
      bool all = true;
      for (int i : t)
        if (std::find(pieces[static_cast<std::size_t>(i)].begin(), pieces[static_cast<std::size_t>(i)].end(), y) ==
            pieces[static_cast<std::size_t>(i)].end())
          all = false;
      if (all) return true;
    }
    return false;
  };
  std::vector<std::vector<std::vector<int>>> tuples(static_cast<std::size_t>(degrees) + 2);
  for (int n = 0; n <= degrees + 1; ++n) {
    std::vector<int> t(static_cast<std::size_t>(n) + 1, 0);
    while (true) {
      bool inc = true;
      for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] >= t[i + 1]) inc = false;
      if ((!increasing || inc) && nonempty(t)) tuples[static_cast<std::size_t>(n)].push_back(t);
      std::size_t q = 0;
      while (q < t.size() && ++t[q] == k) t[q++] = 0;
      if (q == t.size()) break;
    }
  }
  std::vector<std::size_t> ranks;
  for (int n = 0; n <= degrees; ++n) {
    const auto& lo = tuples[static_cast<std::size_t>(n)];
    const auto& hi = tuples[static_cast<std::size_t>(n) + 1];
    hgk::Matrix d(hi.size(), lo.size());
    for (std::size_t a = 0; a < hi.size(); ++a)
      for (std::size_t j = 0; j < hi[a].size(); ++j) {
        auto f = hi[a];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
        const auto b = static_cast<std::size_t>(std::find(lo.begin(), lo.end(), f) - lo.begin());
        d(a, b) += (j % 2 == 0) ? 1 : -1;
      }
    ranks.push_back(p == 0 ? rational_rank(d) : rank_mod(d, p));
  }
  std::vector<std::size_t> betti;
  for (int n = 0; n <= degrees; ++n)
    betti.push_back(tuples[static_cast<std::size_t>(n)].size() - ranks[static_cast<std::size_t>(n)] -
                    (n > 0 ? ranks[static_cast<std::size_t>(n) - 1] : 0));
  return betti;
}

}  // namespace oracle
