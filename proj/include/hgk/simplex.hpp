#pragma once

// The simplex category: ordinals [n] = {0 < 1 < ... < n} and monotone maps.

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace hgk {

/// A weakly increasing map [domain] -> [codomain], stored by its values.
class MonotoneMap {
 public:
  /// Validates monotonicity and range; throws InvalidArgument.
  MonotoneMap(int codomain, std::vector<int> values);

  static MonotoneMap identity(int n);
  /// Injection [n-1] -> [n] omitting i. Requires n >= 1, 0 <= i <= n.
  static MonotoneMap coface(int i, int n);
  /// Surjection [n+1] -> [n] hitting i twice. Requires 0 <= i <= n.
  static MonotoneMap codegeneracy(int i, int n);

  int domain() const noexcept { return static_cast<int>(values_.size()) - 1; }
  int codomain() const noexcept { return codomain_; }
  const std::vector<int>& values() const noexcept { return values_; }
  int operator()(int i) const { return values_.at(static_cast<std::size_t>(i)); }

  bool is_injective() const noexcept;
  bool is_surjective() const noexcept;
  bool is_identity() const noexcept;

  /// Elements of [codomain] not hit, ascending.
  std::vector<int> omitted() const;
  /// Positions t with values[t] == values[t+1], ascending.
  std::vector<int> repeats() const;

  std::string to_string() const;

  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
  friend auto operator<=>(const MonotoneMap& a, const MonotoneMap& b) {
    if (auto c = a.codomain_ <=> b.codomain_; c != 0) return c;
    return a.values_ <=> b.values_;
  }

 private:
  int codomain_;
  std::vector<int> values_;
};

/// f . g; requires g.codomain() == f.domain().
MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g);

/// The unique factorization f = mono . epi.
struct EpiMono {
  MonotoneMap epi;
  MonotoneMap mono;
};
EpiMono epi_mono_factor(const MonotoneMap& f);

/// All monotone maps [m] -> [n] in lexicographic order of their values.
std::vector<MonotoneMap> all_monotone_maps(int m, int n);
std::vector<MonotoneMap> all_surjections(int m, int n);
std::vector<MonotoneMap> all_injections(int m, int n);

/// Number of monotone maps [m] -> [n], i.e. binom(m+n+1, m+1).
long long count_monotone_maps(int m, int n);
long long binomial(int n, int k);

}  // namespace hgk
