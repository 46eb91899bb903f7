#pragma once

// Builds a SimplicialSet from levels of structured keys and operator
// functions on keys. Used by every construction that has a natural
// description of its simplices (maps, strings of arrows, tuples).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hgk/error.hpp"
#include "hgk/sset.hpp"

namespace hgk::detail {

template <class Key>
class KeyIndex {
 public:
  explicit KeyIndex(const std::vector<std::vector<Key>>& levels) {
    maps_.resize(levels.size());
    for (std::size_t l = 0; l < levels.size(); ++l)
      for (std::size_t i = 0; i < levels[l].size(); ++i)
        maps_[l].emplace(levels[l][i], static_cast<Index>(i));
  }
  Index at(int level, const Key& key) const {
    const auto& m = maps_.at(static_cast<std::size_t>(level));
    auto it = m.find(key);
    if (it == m.end())
      throw InvariantViolation("construction not closed under operators at level " +
                               std::to_string(level));
    return it->second;
  }

 private:
  std::vector<std::map<Key, Index>> maps_;
};

template <class Key, class FaceFn, class DegenFn, class NameFn>
SimplicialSet::Data keyed_data(int N, const std::vector<std::vector<Key>>& levels, FaceFn&& face,
                               DegenFn&& degen, NameFn&& name) {
  KeyIndex<Key> index(levels);
  SimplicialSet::Data d;
  d.truncation = N;
  d.names.resize(static_cast<std::size_t>(N) + 1);
  d.faces.resize(static_cast<std::size_t>(N) + 1);
  d.degeneracies.resize(static_cast<std::size_t>(N) + 1);
  for (int l = 0; l <= N; ++l) {
    const auto& keys = levels[static_cast<std::size_t>(l)];
    auto& names = d.names[static_cast<std::size_t>(l)];
    names.reserve(keys.size());
    for (const Key& k : keys) names.push_back(name(l, k));
    if (l >= 1) {
      auto& fl = d.faces[static_cast<std::size_t>(l)];
      fl.resize(static_cast<std::size_t>(l) + 1);
      for (int j = 0; j <= l; ++j) {
        auto& f = fl[static_cast<std::size_t>(j)];
        f.reserve(keys.size());
        for (const Key& k : keys) f.push_back(index.at(l - 1, face(l, j, k)));
      }
    }
    if (l < N) {
      auto& dl = d.degeneracies[static_cast<std::size_t>(l)];
      dl.resize(static_cast<std::size_t>(l) + 1);
      for (int j = 0; j <= l; ++j) {
        auto& s = dl[static_cast<std::size_t>(j)];
        s.reserve(keys.size());
        for (const Key& k : keys) s.push_back(index.at(l + 1, degen(l, j, k)));
      }
    }
  }
  return d;
}

inline std::string join_names(const std::vector<std::string>& parts, char open = '[',
                              char close = ']') {
  std::string s(1, open);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  s += close;
  return s;
}

}  // namespace hgk::detail
