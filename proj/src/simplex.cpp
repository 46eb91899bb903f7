#include "hgk/simplex.hpp"

#include <algorithm>
#include <functional>

#include "hgk/error.hpp"

namespace hgk {

MonotoneMap::MonotoneMap(int codomain, std::vector<int> values)
    : codomain_(codomain), values_(std::move(values)) {
  if (codomain_ < 0) throw InvalidArgument("monotone map: negative codomain");
  if (values_.empty()) throw InvalidArgument("monotone map: empty domain");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0 || values_[i] > codomain_)
      throw InvalidArgument("monotone map: value out of range: " + to_string());
    if (i > 0 && values_[i] < values_[i - 1])
      throw InvalidArgument("monotone map: not monotone: " + to_string());
  }
}

MonotoneMap MonotoneMap::identity(int n) {
  if (n < 0) throw InvalidArgument("identity: negative ordinal");
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::coface(int i, int n) {
  if (n < 1 || i < 0 || i > n)
    throw InvalidArgument("coface: index " + std::to_string(i) + " out of range for [" +
                          std::to_string(n) + "]");
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t <= n; ++t)
    if (t != i) v.push_back(t);
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::codegeneracy(int i, int n) {
  if (n < 0 || i < 0 || i > n)
    throw InvalidArgument("codegeneracy: index " + std::to_string(i) + " out of range for [" +
                          std::to_string(n) + "]");
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n) + 2);
  for (int t = 0; t <= n; ++t) {
    v.push_back(t);
    if (t == i) v.push_back(t);
  }
  return MonotoneMap(n, std::move(v));
}

bool MonotoneMap::is_injective() const noexcept {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] == values_[i - 1]) return false;
  return true;
}

bool MonotoneMap::is_surjective() const noexcept {
  if (values_.front() != 0 || values_.back() != codomain_) return false;
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] > values_[i - 1] + 1) return false;
  return true;
}

bool MonotoneMap::is_identity() const noexcept {
  return domain() == codomain_ && is_injective();
}

std::vector<int> MonotoneMap::omitted() const {
  std::vector<int> out;
  std::size_t p = 0;
  for (int t = 0; t <= codomain_; ++t) {
    while (p < values_.size() && values_[p] < t) ++p;
    if (p == values_.size() || values_[p] != t) out.push_back(t);
  }
  return out;
}

std::vector<int> MonotoneMap::repeats() const {
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    if (values_[i] == values_[i + 1]) out.push_back(static_cast<int>(i));
  return out;
}

std::string MonotoneMap::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values_[i]);
  }
  s += "]->[" + std::to_string(codomain_) + "]";
  return s;
}

MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
  if (g.codomain() != f.domain())
    throw InvalidArgument("compose: mismatched ordinals " + f.to_string() + " . " + g.to_string());
  std::vector<int> v;
  v.reserve(g.values().size());
  for (int x : g.values()) v.push_back(f(x));
  return MonotoneMap(f.codomain(), std::move(v));
}

EpiMono epi_mono_factor(const MonotoneMap& f) {
  // The image of f, listed ascending, is the mono; the epi records ranks.
  std::vector<int> image;
  std::vector<int> epi;
  epi.reserve(f.values().size());
  for (int x : f.values()) {
    if (image.empty() || image.back() != x) image.push_back(x);
    epi.push_back(static_cast<int>(image.size()) - 1);
  }
  const int k = static_cast<int>(image.size()) - 1;
  return {MonotoneMap(k, std::move(epi)), MonotoneMap(f.codomain(), std::move(image))};
}

namespace {

void enumerate_maps(int m, int n, const std::function<bool(const std::vector<int>&)>& keep,
                    std::vector<MonotoneMap>& out) {
  if (m < 0 || n < 0) return;
  std::vector<int> v(static_cast<std::size_t>(m) + 1, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int lo) {
    if (pos == v.size()) {
      if (keep(v)) out.emplace_back(n, v);
      return;
    }
    for (int x = lo; x <= n; ++x) {
      v[pos] = x;
      rec(pos + 1, x);
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<MonotoneMap> all_monotone_maps(int m, int n) {
  std::vector<MonotoneMap> out;
  enumerate_maps(m, n, [](const std::vector<int>&) { return true; }, out);
  return out;
}

std::vector<MonotoneMap> all_surjections(int m, int n) {
  std::vector<MonotoneMap> out;
  if (n > m) return out;
  enumerate_maps(
      m, n,
      [n](const std::vector<int>& v) {
        if (v.front() != 0 || v.back() != n) return false;
        for (std::size_t i = 1; i < v.size(); ++i)
          if (v[i] > v[i - 1] + 1) return false;
        return true;
      },
      out);
  return out;
}

std::vector<MonotoneMap> all_injections(int m, int n) {
  std::vector<MonotoneMap> out;
  if (m > n) return out;
  enumerate_maps(
      m, n,
      [](const std::vector<int>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
          if (v[i] == v[i - 1]) return false;
        return true;
      },
      out);
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long count_monotone_maps(int m, int n) { return binomial(m + n + 1, m + 1); }

}  // namespace hgk
