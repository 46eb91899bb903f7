#pragma once

// Matching objects, partial matching maps and the hypergroupoid checks,
// absolute and relative, over a pluggable site of finite sets.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hgk/sset.hpp"

namespace hgk {

/// Compatible tuples of (m-1)-simplices indexed by a horn (slot k absent)
/// or by the whole boundary. Entry i of a tuple plays the role of d_i x;
/// the absent slot holds kAbsent.
struct MatchingObject {
  static constexpr Index kAbsent = static_cast<Index>(-1);

  int level = 0;
  std::optional<int> omitted;
  std::vector<std::vector<Index>> tuples;
  std::map<std::vector<Index>, Index> index;

  std::size_t size() const noexcept { return tuples.size(); }
  std::optional<Index> find(const std::vector<Index>& tuple) const;
};

MatchingObject horn_matching_object(const SimplicialSet& X, int m, int k);
/// For m = 0 the boundary is empty and the object is a single empty tuple.
MatchingObject boundary_matching_object(const SimplicialSet& X, int m);

/// x |-> (d_i x)_i together with its fibers.
struct MatchingMap {
  MatchingObject target;
  std::vector<Index> image;
  std::vector<std::vector<Index>> fibers;

  bool surjective() const;
  bool injective() const;
  bool bijective() const { return surjective() && injective(); }
};

MatchingMap partial_matching_map(const SimplicialSet& X, int m, int k);
MatchingMap boundary_matching_map(const SimplicialSet& X, int m);

/// X_m -> Hom(S, X) x_{Hom(S, Y)} Y_m for S the horn (k given) or the
/// boundary (k absent) of Delta^m. Target element t is the pair
/// (pairs[t].first = tuple index in `source_matching`, pairs[t].second = y).
struct RelativeMatchingMap {
  int level = 0;
  std::optional<int> omitted;
  MatchingObject source_matching;
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<Index> image;
  std::vector<std::vector<Index>> fibers;
};

RelativeMatchingMap relative_matching_map(const SimplicialMorphism& f, int m,
                                          std::optional<int> k);

// ---- site ----

/// A function between finite sets {0..domain-1} -> {0..codomain-1}.
struct FiniteMap {
  std::size_t codomain = 0;
  std::vector<Index> values;

  std::size_t domain() const noexcept { return values.size(); }
  bool surjective() const;
  bool injective() const;
};

/// g . f
FiniteMap compose(const FiniteMap& g, const FiniteMap& f);
/// The projection Z x_Y X -> Z of the pullback of f : X -> Y along g : Z -> Y;
/// pullback elements are ordered by (z, x).
FiniteMap base_change(const FiniteMap& f, const FiniteMap& g);

/// A class of covering maps between finite sets.
struct SiteCovers {
  std::string name;
  std::function<bool(const FiniteMap&)> is_cover;
};

/// Covers are the surjections.
SiteCovers finite_set_site();

// ---- reports ----

enum class FailureKind {
  missing_filler,     // empty fiber: not surjective
  non_unique_filler,  // fiber with two or more elements: not injective
  not_cover,          // the map is not a cover of the site
  not_coskeletal,     // boundary matching map not bijective above n+1
  not_bijective,      // Cartesian comparison map not bijective
  nonzero_normalized  // normalized complex nonzero above n
};

std::string to_string(FailureKind kind);

struct Failure {
  int level = 0;
  /// Horn or face index; -1 for boundary and whole-level failures.
  int index = -1;
  FailureKind kind = FailureKind::missing_filler;
  /// The offending target element: a matching tuple, or for relative and
  /// Cartesian maps the pair (tuple-or-simplex, y).
  std::vector<Index> tuple;
  std::optional<Index> over;
  std::vector<Index> fiber;
  std::string description;
};

struct MapStatistics {
  std::string map;
  int level = 0;
  int index = -1;
  std::size_t source_size = 0;
  std::size_t target_size = 0;
  std::size_t min_fiber = 0;
  std::size_t max_fiber = 0;
};

struct CheckReport {
  std::string check;
  std::vector<Failure> failures;
  std::vector<MapStatistics> statistics;

  bool passed() const noexcept { return failures.empty(); }
};

// ---- checks ----

/// Partial matching maps surjective for 1 <= m <= upto.
CheckReport is_kan(const SimplicialSet& X, int upto);

/// Partial matching maps surjective for m <= n+2 and bijective for
/// m in {n+1, n+2}; X must agree with cosk_{n+1} X on every stored level
/// above n+1. Throws TruncationTooSmall when the truncation is below n+2.
CheckReport is_n_hypergroupoid(const SimplicialSet& X, int n);

/// X_n -> X_{n-1} x_{Y_{n-1}, d_i} Y_n, x |-> (d_i x, f x), bijective
/// for all stored n >= 1 and all i.
CheckReport is_cartesian(const SimplicialMorphism& f);

/// Relative boundary matching maps are covers below n and bijections from
/// n on. Requires truncation >= n+1.
CheckReport is_trivial_relative(const SimplicialMorphism& f, int n, const SiteCovers& site);

/// Relative horn matching maps are covers for m <= n+2 and bijections for
/// m > n; relative boundary matching maps bijective on stored levels above
/// n+1. Requires truncation >= n+2.
CheckReport is_relative_hypergroupoid(const SimplicialMorphism& f, int n, const SiteCovers& site);

}  // namespace hgk
