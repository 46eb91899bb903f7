#pragma once

// Finite groupoids, their nerves, recovery of a groupoid from a
// 1-hypergroupoid, and local systems as Cartesian morphisms.

#include <optional>
#include <string>
#include <vector>

#include "hgk/sset.hpp"

namespace hgk {

/// Objects and arrows are numbered; compose(g, f) is g . f for f : x -> y
/// and g : y -> z.
class FiniteGroupoid {
 public:
  struct Arrow {
    std::string name;
    Index source;
    Index target;
  };

  /// `composition[g * |arrows| + f]` is g . f, or kNone when not composable.
  /// Validates every groupoid law; throws InvariantViolation.
  FiniteGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                 std::vector<Index> composition, std::vector<Index> identities,
                 std::vector<Index> inverses);
  static FiniteGroupoid unchecked(std::vector<std::string> objects, std::vector<Arrow> arrows,
                                  std::vector<Index> composition, std::vector<Index> identities,
                                  std::vector<Index> inverses);

  static constexpr Index kNone = static_cast<Index>(-1);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  const std::string& object(Index x) const { return objects_.at(x); }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const Arrow& arrow(Index f) const { return arrows_.at(f); }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  Index compose(Index g, Index f) const { return composition_[g * arrows_.size() + f]; }
  Index identity(Index x) const { return identities_.at(x); }
  Index inverse(Index f) const { return inverses_.at(f); }
  const std::vector<Index>& composition_table() const noexcept { return composition_; }
  const std::vector<Index>& identities() const noexcept { return identities_; }
  const std::vector<Index>& inverses() const noexcept { return inverses_; }

  std::vector<Index> homs(Index x, Index y) const;
  std::optional<std::string> law_violation() const;

 private:
  FiniteGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                 std::vector<Index> composition, std::vector<Index> identities,
                 std::vector<Index> inverses, bool check);
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<Index> composition_;
  std::vector<Index> identities_;
  std::vector<Index> inverses_;
};

// ---- builders ----

/// Z/n as a one-object groupoid; arrow k is the residue k.
FiniteGroupoid cyclic_group(int n);
/// The symmetric group on three letters as a one-object groupoid.
FiniteGroupoid symmetric_group_3();
/// Only identity arrows.
FiniteGroupoid discrete_groupoid(const std::vector<std::string>& objects);
/// Exactly one arrow between any two objects.
FiniteGroupoid indiscrete_groupoid(const std::vector<std::string>& objects);
/// Objects of both, arrows of both, no arrows between them.
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);
/// Objects x_1..x_k, each automorphism group Z/n, all objects isomorphic.
FiniteGroupoid connected_groupoid(int objects, int n);

/// Bijections on objects and arrows preserving the whole structure.
struct GroupoidIsomorphism {
  std::vector<Index> objects;
  std::vector<Index> arrows;
};
std::optional<std::string> isomorphism_violation(const FiniteGroupoid& a, const FiniteGroupoid& b,
                                                 const GroupoidIsomorphism& iso);

/// Object components, each ascending, ordered by least object.
std::vector<std::vector<Index>> connected_components(const FiniteGroupoid& g);
/// Arrows x -> x.
std::vector<Index> automorphisms(const FiniteGroupoid& g, Index x);

// ---- nerve and recovery ----

/// Level n is the set of composable strings x_0 -> x_1 -> ... -> x_n.
SimplicialSet nerve(const FiniteGroupoid& g, int N);

/// Objects X_0, arrows X_1 with source d_1 and target d_0, identities s_0,
/// composites from the unique fillers of inner 2-horns, inverses from the
/// fillers of outer 2-horns. Throws InvalidArgument unless X passes the
/// 1-hypergroupoid check.
FiniteGroupoid fundamental_groupoid(const SimplicialSet& X);

/// The comparison X -> nerve(fundamental_groupoid(X)) sending a simplex to
/// its string of edges (i, i+1).
SimplicialMorphism edge_path_map(const SSetPtr& X, const SSetPtr& nerve_of_pi);

// ---- local systems ----

/// Fibers over vertices and, for every edge z, the bijection
/// theta(z) : F(d_0 z) -> F(d_1 z) stored as indices into the fibers.
struct LocalSystemData {
  SSetPtr base;
  std::vector<std::vector<std::string>> fibers;
  std::vector<std::vector<Index>> transitions;
};

/// Shape, bijectivity, normalization on degenerate edges and the cocycle
/// condition theta(d_2 w) . theta(d_0 w) = theta(d_1 w). Throws
/// InvariantViolation naming the offending simplex.
void validate(const LocalSystemData& data);

/// The total space X_n = {(w, a) : a in F(vertex 0 of w)} -> Y.
SimplicialMorphism local_system_total(const LocalSystemData& data);

/// Fibers and transitions of a Cartesian morphism. Throws InvalidArgument
/// on non-Cartesian input.
LocalSystemData descent_data(const SimplicialMorphism& f);

/// Fiberwise bijections phi_y intertwining the transitions, if any.
std::optional<std::vector<std::vector<Index>>> find_local_system_isomorphism(
    const LocalSystemData& a, const LocalSystemData& b);

}  // namespace hgk
