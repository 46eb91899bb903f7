#pragma once

// Hom-sets between finite truncated simplicial sets and the constructions
// built from them: coskeleta and simplicial mapping spaces.

#include <functional>
#include <optional>
#include <vector>

#include "hgk/sset.hpp"

namespace hgk {

struct HomOptions {
  /// Place non-degenerate simplices in descending index order per level.
  bool reverse_order = false;
  /// Only enumerate levelwise injective morphisms.
  bool injective = false;
};

/// Components of a morphism, one vector per level.
using Components = std::vector<std::vector<Index>>;

/// Calls `visit` on every morphism K -> X until it returns false. Images
/// are assigned to non-degenerate simplices of K level by level, extended
/// to degenerate simplices through their unique decomposition, and a
/// partial assignment is pruned as soon as a face constraint fails.
void for_each_hom(const SimplicialSet& K, const SimplicialSet& X,
                  const std::function<bool(const Components&)>& visit, HomOptions options = {});

std::size_t count_homs(const SimplicialSet& K, const SimplicialSet& X, HomOptions options = {});

std::vector<SimplicialMorphism> hom_set(const SSetPtr& K, const SSetPtr& X);

/// A levelwise bijective morphism X -> Y, if one exists.
std::optional<SimplicialMorphism> find_isomorphism(const SSetPtr& X, const SSetPtr& Y);

/// cosk_m X through level N: level i is Hom((Delta^i)_{<=m}, X_{<=m}).
/// Levels <= m coincide with X (same order, same names).
SimplicialSet coskeleton(const SimplicialSet& X, int m, int N);

/// The unit X -> cosk_m X, x |-> (theta^* x)_theta, on the levels both carry.
SimplicialMorphism coskeleton_unit(const SSetPtr& X, int m);

/// Level n is Hom(Delta^n x X, Y) for n <= upto, with the operators induced
/// by the cosimplicial structure of Delta^bullet.
SimplicialSet mapping_space(const SimplicialSet& X, const SimplicialSet& Y, int upto);

}  // namespace hgk
