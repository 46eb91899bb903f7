#pragma once

// Finite truncated simplicial sets, morphisms between them, and the
// standard constructions (simplices, boundaries, horns, products).

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hgk/simplex.hpp"

namespace hgk {

using Index = std::uint32_t;

struct SimplexId {
  int level = 0;
  Index index = 0;
  friend auto operator<=>(const SimplexId&, const SimplexId&) = default;
};

/// A simplicial set stored through level `truncation`, every simplex
/// (degenerate or not) explicit. Beyond the truncation the object stands
/// for its own coskeleton.
///
/// Level i holds simplices 0..size(i)-1, each with a name unique in its
/// level. faces[i][j] is d_j : X_i -> X_{i-1} (1 <= i <= N) and
/// degeneracies[i][j] is s_j : X_i -> X_{i+1} (0 <= i < N).
class SimplicialSet {
 public:
  struct Data {
    int truncation = 0;
    std::vector<std::vector<std::string>> names;
    std::vector<std::vector<std::vector<Index>>> faces;
    std::vector<std::vector<std::vector<Index>>> degeneracies;
  };

  /// Full validation: shapes, ranges, unique names, simplicial identities.
  explicit SimplicialSet(Data data);
  /// Shape and range validation only; use identity_violation() afterwards.
  static SimplicialSet unchecked(Data data);

  int truncation() const noexcept { return data_.truncation; }
  std::size_t size(int level) const { return data_.names.at(static_cast<std::size_t>(level)).size(); }
  bool empty() const noexcept { return data_.names.front().empty(); }

  Index face(int level, int j, Index x) const {
    return data_.faces[static_cast<std::size_t>(level)][static_cast<std::size_t>(j)][x];
  }
  Index degeneracy(int level, int j, Index x) const {
    return data_.degeneracies[static_cast<std::size_t>(level)][static_cast<std::size_t>(j)][x];
  }
  const std::vector<Index>& face_map(int level, int j) const {
    return data_.faces.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(j));
  }
  const std::vector<Index>& degeneracy_map(int level, int j) const {
    return data_.degeneracies.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(j));
  }

  const std::string& name(int level, Index x) const {
    return data_.names[static_cast<std::size_t>(level)][x];
  }
  const std::vector<std::string>& names(int level) const {
    return data_.names.at(static_cast<std::size_t>(level));
  }
  std::optional<Index> find(int level, std::string_view name) const;

  /// theta^* x for theta : [m] -> [n] and x in X_n; the result lies in X_m.
  Index act(const MonotoneMap& theta, Index x) const;
  /// Vertex i of an n-simplex.
  Index vertex(int level, Index x, int i) const;

  bool is_degenerate(int level, Index x) const;
  /// (epi, root) with root non-degenerate and x = epi^* root.
  const MonotoneMap& decomposition_epi(int level, Index x) const;
  Index decomposition_root(int level, Index x) const;
  std::vector<Index> nondegenerate(int level) const;

  /// First failing simplicial identity, named by level, operator pair and
  /// simplex; nullopt when all hold.
  std::optional<std::string> identity_violation() const;

  const Data& data() const noexcept { return data_; }

 private:
  SimplicialSet(Data data, bool check_identities);
  void build_decompositions();

  Data data_;
  std::vector<std::unordered_map<std::string_view, Index>> lookup_;
  std::vector<std::vector<MonotoneMap>> epi_;
  std::vector<std::vector<Index>> root_;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

template <class... Args>
SSetPtr make_sset(Args&&... args) {
  return std::make_shared<const SimplicialSet>(std::forward<Args>(args)...);
}

/// Unique (epi, non-degenerate simplex) with s = epi^* y.
std::pair<MonotoneMap, SimplexId> nondegenerate_decomposition(const SimplicialSet& X,
                                                              SimplexId s);

/// A levelwise map commuting with every face and degeneracy.
class SimplicialMorphism {
 public:
  /// Validates shapes and commutation; throws InvariantViolation.
  SimplicialMorphism(SSetPtr source, SSetPtr target, std::vector<std::vector<Index>> components);
  static SimplicialMorphism unchecked(SSetPtr source, SSetPtr target,
                                      std::vector<std::vector<Index>> components);
  static SimplicialMorphism identity(SSetPtr X);

  const SimplicialSet& source() const noexcept { return *source_; }
  const SimplicialSet& target() const noexcept { return *target_; }
  const SSetPtr& source_ptr() const noexcept { return source_; }
  const SSetPtr& target_ptr() const noexcept { return target_; }
  int truncation() const noexcept { return source_->truncation(); }

  Index operator()(int level, Index x) const {
    return components_[static_cast<std::size_t>(level)][x];
  }
  const std::vector<Index>& component(int level) const {
    return components_.at(static_cast<std::size_t>(level));
  }
  const std::vector<std::vector<Index>>& components() const noexcept { return components_; }

  bool is_levelwise_bijective() const;
  std::optional<std::string> violation() const;

 private:
  SimplicialMorphism(SSetPtr source, SSetPtr target, std::vector<std::vector<Index>> components,
                     bool check);
  SSetPtr source_;
  SSetPtr target_;
  std::vector<std::vector<Index>> components_;
};

/// g . f
SimplicialMorphism compose(const SimplicialMorphism& g, const SimplicialMorphism& f);

// ---- constructions ----

/// Delta^n through level N: level i is every monotone map [i] -> [n].
SimplicialSet standard_simplex(int n, int N);
/// The union of the faces of Delta^n; empty for n = 0.
SimplicialSet boundary(int n, int N);
/// The union of the faces of Delta^n other than the k-th.
SimplicialSet horn(int n, int k, int N);
/// The constant simplicial set on a finite set.
SimplicialSet constant(const std::vector<std::string>& points, int N);
SimplicialSet truncate(const SimplicialSet& X, int m);
/// Levelwise product with diagonal operators; simplex (a, b) sits at
/// index a * |Y_i| + b.
SimplicialSet product(const SimplicialSet& X, const SimplicialSet& Y);
SimplicialSet disjoint_union(const SimplicialSet& X, const SimplicialSet& Y);
/// The subobject of simplices satisfying `keep`; `keep` must be closed
/// under faces and degeneracies.
SimplicialSet subobject(const SimplicialSet& X,
                        const std::function<bool(int level, Index x)>& keep);

/// Vertices grouped by the equivalence generated by edges; each component
/// lists its vertices ascending, components ordered by least vertex.
std::vector<std::vector<Index>> connected_components(const SimplicialSet& X);

}  // namespace hgk
