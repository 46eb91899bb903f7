#pragma once

// Finite covers of finite sets, presheaves of abelian groups on their
// intersections, Cech nerves and Cech cohomology.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hgk/abelian.hpp"
#include "hgk/kan.hpp"
#include "hgk/sset.hpp"

namespace hgk {

/// Pieces U_0..U_{k-1} of a finite set Y, each stored as ascending point
/// indices.
class FiniteCover {
 public:
  /// Throws InvalidArgument on unknown or repeated points, and when some
  /// point lies in no piece.
  FiniteCover(std::vector<std::string> ambient, std::vector<std::vector<Index>> pieces);
  /// Skips the covering condition (point and range checks remain).
  static FiniteCover unchecked(std::vector<std::string> ambient, std::vector<std::vector<Index>> pieces);

  const std::vector<std::string>& ambient() const noexcept { return ambient_; }
  const std::vector<std::vector<Index>>& pieces() const noexcept { return pieces_; }
  std::size_t piece_count() const noexcept { return pieces_.size(); }
  bool covers() const;

  /// Points of U_{i_0} n ... n U_{i_n}; the empty index list gives Y.
  std::vector<Index> intersection(const std::vector<int>& indices) const;

 private:
  FiniteCover(std::vector<std::string> ambient, std::vector<std::vector<Index>> pieces, bool check);
  std::vector<std::string> ambient_;
  std::vector<std::vector<Index>> pieces_;
};

/// Sorted, duplicate-free piece indices; the empty key stands for Y.
using CoverKey = std::vector<int>;
CoverKey cover_key(const std::vector<int>& tuple);
std::string to_string(const CoverKey& key);

/// Values on intersections and restrictions F(U_K) -> F(U_K') for K < K'.
class Presheaf {
 public:
  using Restrictions = std::map<std::pair<CoverKey, CoverKey>, AbHom>;

  /// Checks keys, sources and targets, identities and functoriality;
  /// throws InvariantViolation.
  Presheaf(std::map<CoverKey, FGAbelianGroup> values, Restrictions restrictions);

  const std::map<CoverKey, FGAbelianGroup>& values() const noexcept { return values_; }
  const Restrictions& restrictions() const noexcept { return restrictions_; }
  bool has_value(const CoverKey& key) const { return values_.count(key) != 0; }
  /// Throws InvalidArgument when missing.
  const FGAbelianGroup& value(const CoverKey& key) const;
  /// The stored restriction, or the composite of stored one-step
  /// restrictions adding indices in ascending order. Throws InvalidArgument
  /// when neither exists.
  AbHom restriction(const CoverKey& from, const CoverKey& to) const;

 private:
  std::map<CoverKey, FGAbelianGroup> values_;
  Restrictions restrictions_;
};

/// A on Y and on every nonempty intersection, identity restrictions.
Presheaf constant_presheaf(const FiniteCover& c, const FGAbelianGroup& A);
/// Functions U -> A, restricting by forgetting points.
Presheaf function_presheaf(const FiniteCover& c, const FGAbelianGroup& A);

/// The projection from the Cech nerve to the constant simplicial set on Y.
/// Level n holds (y, i_0..i_n) with y in every U_{i_j}, named "y:i0,..,in".
SimplicialMorphism cech_nerve(const FiniteCover& c, int N);

/// is_trivial_relative(cech_nerve(c, N), 1) over the finite-set site.
CheckReport verify_nerve_trivial(const FiniteCover& c, int N = 3);

/// Cochains on all (n+1)-tuples with nonempty intersection, degrees 0..top.
ChainComplex cech_complex(const FiniteCover& c, const Presheaf& F, int top);
/// Cochains on strictly increasing tuples only.
ChainComplex alternating_complex(const FiniteCover& c, const Presheaf& F, int top);
/// H^0..H^degrees of the unnormalized complex.
std::vector<FGAbelianGroup> cech_cohomology(const FiniteCover& c, const Presheaf& F, int degrees = 2);
std::vector<FGAbelianGroup> alternating_cohomology(const FiniteCover& c, const Presheaf& F, int degrees = 2);

}  // namespace hgk
