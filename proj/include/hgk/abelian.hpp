#pragma once

// Finitely generated abelian groups in invariant-factor form, homomorphisms
// between them, chain complexes and simplicial abelian groups, the two
// Dold-Kan functors and Eilenberg-MacLane objects.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hgk/intmat.hpp"
#include "hgk/kan.hpp"
#include "hgk/simplex.hpp"
#include "hgk/sset.hpp"

namespace hgk {

/// Z^rank + Z/d_1 + ... + Z/d_k with d_i >= 2 and d_i | d_{i+1}. Elements
/// are coordinate vectors: free coordinates first, then torsion ones
/// reduced into [0, d_i).
class FGAbelianGroup {
 public:
  FGAbelianGroup() = default;
  /// Validates the invariant factors; throws InvalidArgument.
  FGAbelianGroup(int rank, Vector torsion);

  /// Z for n == 0, the zero group for n == 1, Z/n otherwise.
  static FGAbelianGroup cyclic(Int n);
  static FGAbelianGroup free(int rank) { return FGAbelianGroup(rank, {}); }

  int rank() const noexcept { return rank_; }
  const Vector& torsion() const noexcept { return torsion_; }
  std::size_t generators() const noexcept { return static_cast<std::size_t>(rank_) + torsion_.size(); }
  /// 0 for a free coordinate, the order otherwise.
  Int modulus(std::size_t i) const;
  Vector moduli() const;

  bool is_zero() const noexcept { return generators() == 0; }
  bool is_finite() const noexcept { return rank_ == 0; }
  /// Number of elements, when finite; throws ArithmeticOverflow.
  std::optional<std::uint64_t> cardinality() const;

  Vector zero() const { return Vector(generators(), 0); }
  Vector reduce(Vector x) const;
  bool contains(const Vector& x) const;

  /// "0", "Z", "Z^2 + Z/2 + Z/6".
  std::string to_string() const;

  friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;

 private:
  int rank_ = 0;
  Vector torsion_;
};

/// A homomorphism given by its matrix on generators (target x source).
class AbHom {
 public:
  AbHom() = default;
  /// Checks that relations of the source land in relations of the target;
  /// throws InvariantViolation. Entries are reduced modulo the target.
  AbHom(FGAbelianGroup source, FGAbelianGroup target, Matrix matrix);

  static AbHom zero(const FGAbelianGroup& source, const FGAbelianGroup& target);
  static AbHom identity(const FGAbelianGroup& g);

  const FGAbelianGroup& source() const noexcept { return source_; }
  const FGAbelianGroup& target() const noexcept { return target_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  Vector apply(const Vector& x) const;
  bool is_zero() const { return matrix_.is_zero(); }

  friend bool operator==(const AbHom&, const AbHom&) = default;

 private:
  FGAbelianGroup source_;
  FGAbelianGroup target_;
  Matrix matrix_;
};

/// g . f
AbHom compose(const AbHom& g, const AbHom& f);
AbHom operator+(const AbHom& a, const AbHom& b);
AbHom negate(const AbHom& a);

/// big / small for lattices small <= big <= Z^ambient, in canonical form.
/// Generator j of `group` is represented by column j of `representatives`.
struct Subquotient {
  FGAbelianGroup group;
  std::size_t ambient = 0;
  Matrix representatives;

  /// Canonical coordinates of x, which must lie in big; throws
  /// InvalidArgument otherwise.
  Vector coordinates(const Vector& x) const;

  // Internal: basis of big and its Smith data, and the change of basis
  // within big.
  Matrix basis_U;
  Matrix basis_V;
  Vector basis_diagonal;
  Matrix transform;
  std::vector<std::size_t> kept;
  Vector kept_moduli;
};

/// Columns of `big` and `small` generate the lattices; throws
/// InvariantViolation unless small <= big.
Subquotient subquotient(std::size_t ambient, const Matrix& big, const Matrix& small);
/// Z^n modulo the given cyclic orders (0 = free), in canonical form.
Subquotient canonical_presentation(const Vector& moduli);

FGAbelianGroup direct_sum(const std::vector<FGAbelianGroup>& groups);
FGAbelianGroup kernel(const AbHom& f);
FGAbelianGroup cokernel(const AbHom& f);
FGAbelianGroup image(const AbHom& f);
bool is_isomorphism(const AbHom& f);

// ---- chain complexes ----

enum class Orientation { chain, cochain };

/// Groups in degrees 0..top. For chain orientation differentials[i] is
/// C_{i+1} -> C_i; for cochain orientation it is C^i -> C^{i+1}.
struct ChainComplex {
  Orientation orientation = Orientation::chain;
  std::vector<FGAbelianGroup> groups;
  std::vector<AbHom> differentials;

  int top_degree() const noexcept { return static_cast<int>(groups.size()) - 1; }
  /// Shapes and d . d = 0; throws InvariantViolation.
  void validate() const;
};

/// A concentrated in degree n.
ChainComplex shifted(const FGAbelianGroup& A, int n);
/// Homology in every stored degree, the top one included.
std::vector<FGAbelianGroup> homology(const ChainComplex& C);

// ---- simplicial abelian groups ----

class SimplicialAbelianGroup {
 public:
  /// faces[n][i] : A_n -> A_{n-1} for 1 <= n <= N (faces[0] empty);
  /// degeneracies[n][i] : A_n -> A_{n+1} for n < N. Validates the
  /// simplicial identities; throws InvariantViolation.
  SimplicialAbelianGroup(std::vector<FGAbelianGroup> levels, std::vector<std::vector<AbHom>> faces,
                         std::vector<std::vector<AbHom>> degeneracies);
  static SimplicialAbelianGroup unchecked(std::vector<FGAbelianGroup> levels,
                                          std::vector<std::vector<AbHom>> faces,
                                          std::vector<std::vector<AbHom>> degeneracies);

  int truncation() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  const FGAbelianGroup& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
  const AbHom& face(int n, int i) const { return faces_.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(i)); }
  const AbHom& degeneracy(int n, int i) const {
    return degeneracies_.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(i));
  }
  /// theta^* : A_{codomain} -> A_{domain}.
  AbHom act(const MonotoneMap& theta) const;
  std::optional<std::string> identity_violation() const;

 private:
  SimplicialAbelianGroup(std::vector<FGAbelianGroup> levels, std::vector<std::vector<AbHom>> faces,
                         std::vector<std::vector<AbHom>> degeneracies, bool check);
  std::vector<FGAbelianGroup> levels_;
  std::vector<std::vector<AbHom>> faces_;
  std::vector<std::vector<AbHom>> degeneracies_;
};

/// A in every level, identity operators.
SimplicialAbelianGroup constant_group(const FGAbelianGroup& A, int N);
/// (Z/modulus)[X], the levelwise free module on X (modulus 0 gives Z).
SimplicialAbelianGroup free_abelian(const SimplicialSet& X, Int modulus);
SimplicialAbelianGroup direct_sum(const SimplicialAbelianGroup& A, const SimplicialAbelianGroup& B);

/// Moore complex with d = sum (-1)^i d_i.
ChainComplex unnormalized_complex(const SimplicialAbelianGroup& A);

/// N_n = intersection of ker d_i for i >= 1, differential d_0, together
/// with the inclusions N_n -> A_n.
struct Normalization {
  ChainComplex complex;
  std::vector<AbHom> inclusions;
  std::vector<Subquotient> presentations;  // N_n inside the coordinates of A_n
};
Normalization normalize(const SimplicialAbelianGroup& A);
ChainComplex normalized_complex(const SimplicialAbelianGroup& A);

/// Level n is the sum over surjections [n] -> [k] of C_k. Throws
/// InvalidArgument for a cochain complex.
SimplicialAbelianGroup denormalize(const ChainComplex& C, int N);

/// Explicit isomorphisms C_n -> N_n(denormalize(C, N)) for n <= min(N, top).
std::vector<AbHom> dold_kan_unit(const ChainComplex& C, int N);
/// Explicit isomorphisms denormalize(N(A))_n -> A_n, one per level.
std::vector<AbHom> dold_kan_counit(const SimplicialAbelianGroup& A);

/// K(A, n) through level N.
SimplicialAbelianGroup em_space(const FGAbelianGroup& A, int n, int N);

/// Homology of the normalized complex in degrees 0..N-1; the top stored
/// degree needs level N+1 and is omitted.
std::vector<FGAbelianGroup> homotopy_groups(const SimplicialAbelianGroup& A);

/// Passes iff the normalized complex vanishes in degrees n+1..N. Throws
/// TruncationTooSmall below n+2.
CheckReport is_abelian_hypergroupoid(const SimplicialAbelianGroup& A, int n);

/// The elements of every level, enumerated in coordinate order. Throws
/// InvalidArgument on an infinite level.
SimplicialSet underlying_sset(const SimplicialAbelianGroup& A);

/// Elements of a finite group in the order used by underlying_sset.
std::vector<Vector> elements(const FGAbelianGroup& g);
std::string element_name(const Vector& x);

}  // namespace hgk
