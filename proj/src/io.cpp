#include "hgk/io.hpp"

#include <map>
#include <set>

namespace hgk::io {

namespace {

const std::map<Kind, std::string>& kind_names() {
  static const std::map<Kind, std::string> names{
      {Kind::simplicial_set, "simplicial-set"},
      {Kind::simplicial_abelian_group, "simplicial-abelian-group"},
      {Kind::groupoid, "groupoid"},
      {Kind::local_system, "local-system"},
      {Kind::cover, "cover"},
      {Kind::presheaf, "presheaf"},
      {Kind::chain_complex, "chain-complex"},
      {Kind::morphism, "morphism"}};
  return names;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<Int>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

const Json& as_object(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  return j;
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  std::vector<std::string> out;
  for (const auto& x : as_array(j, where)) out.push_back(as_string(x, where));
  return out;
}

std::map<std::string, Index> name_index(const std::vector<std::string>& names, const std::string& where) {
  std::map<std::string, Index> m;
  for (Index i = 0; i < names.size(); ++i)
    if (!m.emplace(names[i], i).second) fail(where, "duplicate id \"" + names[i] + "\"");
  return m;
}

Index lookup(const std::map<std::string, Index>& m, const std::string& name, const std::string& where) {
  auto it = m.find(name);
  if (it == m.end()) fail(where, "unknown id \"" + name + "\"");
  return it->second;
}

// Wraps library shape errors as schema errors.
template <class F>
auto schema(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    fail(where, e.what());
  }
}

// ---- simplicial sets ----

SimplicialSet parse_sset(const Json& j, const std::string& where) {
  const Int N = as_int(field(j, "truncation", where), where + ".truncation");
  if (N < 0) fail(where, "negative truncation");
  const auto& levels = as_array(field(j, "levels", where), where + ".levels");
  if (levels.size() != static_cast<std::size_t>(N) + 1)
    fail(where, "\"levels\" must have truncation + 1 entries");
  SimplicialSet::Data d;
  d.truncation = static_cast<int>(N);
  std::vector<std::map<std::string, Index>> idx;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const std::string w = where + ".levels[" + std::to_string(l) + "]";
    d.names.push_back(string_list(levels[l], w));
    idx.push_back(name_index(d.names.back(), w));
  }
  auto table = [&](const char* key, bool faces) {
    const std::string w = where + "." + key;
    const Json empty = Json::object();
    const Json& ops = j.contains(key) ? as_object(j.at(key), w) : empty;
    std::set<std::string> used;
    std::vector<std::vector<std::vector<Index>>> out(static_cast<std::size_t>(N) + 1);
    for (int l = 0; l <= N; ++l) {
      if (faces ? l == 0 : l == N) continue;
      const int to = faces ? l - 1 : l + 1;
      for (int op = 0; op <= l; ++op) {
        const std::string key_name = std::to_string(l) + "," + std::to_string(op);
        const std::string wk = w + "[\"" + key_name + "\"]";
        used.insert(key_name);
        const Json& m = ops.contains(key_name) ? as_object(ops.at(key_name), wk) : empty;
        std::vector<Index> map(d.names[static_cast<std::size_t>(l)].size());
        std::vector<bool> seen(map.size(), false);
        for (auto it = m.begin(); it != m.end(); ++it) {
          const Index x = lookup(idx[static_cast<std::size_t>(l)], it.key(), wk);
          map[x] = lookup(idx[static_cast<std::size_t>(to)], as_string(it.value(), wk), wk);
          seen[x] = true;
        }
        for (std::size_t x = 0; x < map.size(); ++x)
          if (!seen[x]) fail(wk, "no image for \"" + d.names[static_cast<std::size_t>(l)][x] + "\"");
        out[static_cast<std::size_t>(l)].push_back(std::move(map));
      }
    }
    for (auto it = ops.begin(); it != ops.end(); ++it)
      if (!used.count(it.key())) fail(w, "unexpected operator key \"" + it.key() + "\"");
    return out;
  };
  d.faces = table("faces", true);
  d.degeneracies = table("degeneracies", false);
  return schema(where, [&] { return SimplicialSet::unchecked(std::move(d)); });
}

Json components_json(const SimplicialMorphism& f) {
  Json levels = Json::array();
  for (int l = 0; l <= f.truncation(); ++l) {
    Json m = Json::object();
    for (Index x = 0; x < f.source().size(l); ++x) m[f.source().name(l, x)] = f.target().name(l, f(l, x));
    levels.push_back(std::move(m));
  }
  return levels;
}

SimplicialMorphism parse_morphism(const Json& j, const std::string& where) {
  auto src = make_sset(parse_sset(field(j, "source", where), where + ".source"));
  auto tgt = make_sset(parse_sset(field(j, "target", where), where + ".target"));
  if (src->truncation() != tgt->truncation()) fail(where, "source and target truncations differ");
  const auto& comps = as_array(field(j, "components", where), where + ".components");
  if (comps.size() != static_cast<std::size_t>(src->truncation()) + 1)
    fail(where, "\"components\" must have truncation + 1 entries");
  std::vector<std::vector<Index>> c;
  for (int l = 0; l <= src->truncation(); ++l) {
    const std::string w = where + ".components[" + std::to_string(l) + "]";
    const auto sidx = name_index(src->names(l), w);
    const auto tidx = name_index(tgt->names(l), w);
    std::vector<Index> map(src->size(l));
    std::vector<bool> seen(map.size(), false);
    const auto& m = as_object(comps[static_cast<std::size_t>(l)], w);
    for (auto it = m.begin(); it != m.end(); ++it) {
      const Index x = lookup(sidx, it.key(), w);
      map[x] = lookup(tidx, as_string(it.value(), w), w);
      seen[x] = true;
    }
    for (std::size_t x = 0; x < map.size(); ++x)
      if (!seen[x]) fail(w, "no image for \"" + src->name(l, static_cast<Index>(x)) + "\"");
    c.push_back(std::move(map));
  }
  return schema(where, [&] { return SimplicialMorphism::unchecked(src, tgt, c); });
}

// ---- groupoids ----

FiniteGroupoid parse_groupoid(const Json& j, const std::string& where) {
  const auto objects = string_list(field(j, "objects", where), where + ".objects");
  const auto oidx = name_index(objects, where + ".objects");
  std::vector<FiniteGroupoid::Arrow> arrows;
  std::vector<std::string> arrow_names;
  for (const auto& a : as_array(field(j, "arrows", where), where + ".arrows")) {
    const std::string w = where + ".arrows";
    const auto id = as_string(field(a, "id", w), w);
    arrows.push_back({id, lookup(oidx, as_string(field(a, "src", w), w), w),
                      lookup(oidx, as_string(field(a, "tgt", w), w), w)});
    arrow_names.push_back(id);
  }
  const auto aidx = name_index(arrow_names, where + ".arrows");
  const std::size_t A = arrows.size();
  std::vector<Index> comp(A * A, FiniteGroupoid::kNone);
  for (const auto& t : as_array(field(j, "compose", where), where + ".compose")) {
    const std::string w = where + ".compose";
    if (!t.is_array() || t.size() != 3) fail(w, "entries must be [g, f, g.f]");
    const Index g = lookup(aidx, as_string(t[0], w), w), f = lookup(aidx, as_string(t[1], w), w);
    comp[g * A + f] = lookup(aidx, as_string(t[2], w), w);
  }
  std::vector<Index> ids(objects.size(), FiniteGroupoid::kNone), inv(A, FiniteGroupoid::kNone);
  const auto& idj = as_object(field(j, "identities", where), where + ".identities");
  for (auto it = idj.begin(); it != idj.end(); ++it)
    ids[lookup(oidx, it.key(), where + ".identities")] =
        lookup(aidx, as_string(it.value(), where + ".identities"), where + ".identities");
  const auto& invj = as_object(field(j, "inverses", where), where + ".inverses");
  for (auto it = invj.begin(); it != invj.end(); ++it)
    inv[lookup(aidx, it.key(), where + ".inverses")] =
        lookup(aidx, as_string(it.value(), where + ".inverses"), where + ".inverses");
  for (std::size_t x = 0; x < ids.size(); ++x)
    if (ids[x] == FiniteGroupoid::kNone) fail(where + ".identities", "missing identity for \"" + objects[x] + "\"");
  for (std::size_t a = 0; a < A; ++a)
    if (inv[a] == FiniteGroupoid::kNone) fail(where + ".inverses", "missing inverse for \"" + arrow_names[a] + "\"");
  return schema(where, [&] { return FiniteGroupoid::unchecked(objects, arrows, comp, ids, inv); });
}

// ---- abelian ----

FGAbelianGroup parse_descriptor(const Json& j, const std::string& where) {
  const Int r = as_int(field(j, "rank", where), where + ".rank");
  Vector t;
  for (const auto& x : as_array(field(j, "torsion", where), where + ".torsion")) t.push_back(as_int(x, where + ".torsion"));
  if (r < 0 || r > 1000000) fail(where, "rank out of range");
  return schema(where, [&] { return FGAbelianGroup(static_cast<int>(r), t); });
}

Matrix parse_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  const auto& a = as_array(j, where);
  if (a.size() != rows) fail(where, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = as_array(a[i], where);
    if (row.size() != cols) fail(where, "expected " + std::to_string(cols) + " columns");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = as_int(row[k], where);
  }
  return m;
}

ChainComplex parse_complex(const Json& j, const std::string& where) {
  ChainComplex C;
  if (j.contains("orientation")) {
    const auto o = as_string(j.at("orientation"), where + ".orientation");
    if (o == "chain")
      C.orientation = Orientation::chain;
    else if (o == "cochain")
      C.orientation = Orientation::cochain;
    else
      fail(where + ".orientation", "expected \"chain\" or \"cochain\"");
  }
  const auto& groups = as_array(field(j, "groups", where), where + ".groups");
  for (std::size_t i = 0; i < groups.size(); ++i)
    C.groups.push_back(parse_descriptor(groups[i], where + ".groups[" + std::to_string(i) + "]"));
  if (C.groups.empty()) fail(where, "a complex needs at least one group");
  const auto& ds = as_array(field(j, "differentials", where), where + ".differentials");
  if (ds.size() != C.groups.size() - 1) fail(where, "expected one differential between consecutive degrees");
  const bool chain = C.orientation == Orientation::chain;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& src = chain ? C.groups[i + 1] : C.groups[i];
    const auto& tgt = chain ? C.groups[i] : C.groups[i + 1];
    C.differentials.emplace_back(
        src, tgt, parse_matrix(ds[i], tgt.generators(), src.generators(), where + ".differentials[" + std::to_string(i) + "]"));
  }
  return C;
}

SimplicialAbelianGroup parse_sag(const Json& j, const std::string& where) {
  const Int N = as_int(field(j, "truncation", where), where + ".truncation");
  if (N < 0) fail(where, "negative truncation");
  const auto& groups = as_array(field(j, "groups", where), where + ".groups");
  if (groups.size() != static_cast<std::size_t>(N) + 1) fail(where, "\"groups\" must have truncation + 1 entries");
  std::vector<FGAbelianGroup> levels;
  for (std::size_t i = 0; i < groups.size(); ++i)
    levels.push_back(parse_descriptor(groups[i], where + ".groups[" + std::to_string(i) + "]"));
  auto table = [&](const char* key, bool faces) {
    const std::string w = where + "." + key;
    const auto& ops = as_object(field(j, key, where), w);
    std::vector<std::vector<AbHom>> out(static_cast<std::size_t>(N) + 1);
    std::size_t expected = 0;
    for (int l = 0; l <= N; ++l) {
      if (faces ? l == 0 : l == N) continue;
      const auto& src = levels[static_cast<std::size_t>(l)];
      const auto& tgt = levels[static_cast<std::size_t>(faces ? l - 1 : l + 1)];
      for (int op = 0; op <= l; ++op) {
        const std::string k = std::to_string(l) + "," + std::to_string(op);
        if (!ops.contains(k)) fail(w, "missing operator \"" + k + "\"");
        out[static_cast<std::size_t>(l)].emplace_back(
            src, tgt, parse_matrix(ops.at(k), tgt.generators(), src.generators(), w + "[\"" + k + "\"]"));
        ++expected;
      }
    }
    if (ops.size() != expected) fail(w, "unexpected operator keys");
    return out;
  };
  auto faces = table("faces", true);
  auto degens = table("degeneracies", false);
  return schema(where, [&] { return SimplicialAbelianGroup::unchecked(levels, faces, degens); });
}

// ---- covers and presheaves ----

FiniteCover parse_cover(const Json& j, const std::string& where) {
  const auto ambient = string_list(field(j, "ambient", where), where + ".ambient");
  const auto idx = name_index(ambient, where + ".ambient");
  const auto& pieces = as_object(field(j, "pieces", where), where + ".pieces");
  std::vector<std::vector<Index>> p(pieces.size());
  std::vector<bool> seen(pieces.size(), false);
  for (auto it = pieces.begin(); it != pieces.end(); ++it) {
    const std::string w = where + ".pieces[\"" + it.key() + "\"]";
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoul(it.key(), &used);
      if (used != it.key().size() || std::to_string(k) != it.key()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail(w, "piece indices must be 0, 1, 2, ...");
    }
    if (k >= p.size() || seen[k]) fail(w, "piece indices must be 0, 1, 2, ...");
    seen[k] = true;
    for (const auto& y : string_list(it.value(), w)) p[k].push_back(lookup(idx, y, w));
  }
  return schema(where, [&] { return FiniteCover::unchecked(ambient, p); });
}

CoverKey parse_key(const std::string& s, std::size_t pieces, const std::string& where) {
  if (s == "Y") return {};
  CoverKey k;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const std::string part = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoul(part, &used);
      if (used != part.size() || std::to_string(v) != part) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail(where, "bad key \"" + s + "\"");
    }
    if (v >= pieces) fail(where, "key \"" + s + "\" names an unknown piece");
    k.push_back(static_cast<int>(v));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (k != cover_key(k)) fail(where, "key \"" + s + "\" must be sorted and without repeats");
  return k;
}

PresheafDocument parse_presheaf(const Json& j, const std::string& where) {
  auto cover = parse_cover(field(j, "cover", where), where + ".cover");
  std::map<CoverKey, FGAbelianGroup> values;
  const auto& vj = as_object(field(j, "values", where), where + ".values");
  for (auto it = vj.begin(); it != vj.end(); ++it) {
    const std::string w = where + ".values[\"" + it.key() + "\"]";
    values.emplace(parse_key(it.key(), cover.piece_count(), w), parse_descriptor(it.value(), w));
  }
  Presheaf::Restrictions res;
  const auto& rj = as_object(field(j, "restrictions", where), where + ".restrictions");
  for (auto it = rj.begin(); it != rj.end(); ++it) {
    const std::string w = where + ".restrictions[\"" + it.key() + "\"]";
    const auto gt = it.key().find('>');
    if (gt == std::string::npos) fail(w, "keys must look like \"K>K'\"");
    const auto from = parse_key(it.key().substr(0, gt), cover.piece_count(), w);
    const auto to = parse_key(it.key().substr(gt + 1), cover.piece_count(), w);
    if (!values.count(from) || !values.count(to)) fail(w, "restriction between keys without values");
    const auto& s = values.at(from);
    const auto& t = values.at(to);
    res.emplace(std::make_pair(from, to), AbHom(s, t, parse_matrix(it.value(), t.generators(), s.generators(), w)));
  }
  return {cover, Presheaf(values, res)};
}

// ---- local systems ----

LocalSystemData parse_local_system(const Json& j, const std::string& where) {
  LocalSystemData L;
  L.base = make_sset(parse_sset(field(j, "base", where), where + ".base"));
  const auto& Y = *L.base;
  if (Y.truncation() < 1) fail(where, "the base must carry level 1");
  const auto vidx = name_index(Y.names(0), where);
  const auto eidx = name_index(Y.names(1), where);
  L.fibers.assign(Y.size(0), {});
  std::vector<bool> seen(Y.size(0), false);
  const auto& fj = as_object(field(j, "fibers", where), where + ".fibers");
  for (auto it = fj.begin(); it != fj.end(); ++it) {
    const Index v = lookup(vidx, it.key(), where + ".fibers");
    L.fibers[v] = string_list(it.value(), where + ".fibers");
    seen[v] = true;
  }
  for (Index v = 0; v < seen.size(); ++v)
    if (!seen[v]) fail(where + ".fibers", "no fiber over \"" + Y.name(0, v) + "\"");
  L.transitions.assign(Y.size(1), {});
  std::vector<bool> tseen(Y.size(1), false);
  const auto& tj = as_object(field(j, "transitions", where), where + ".transitions");
  for (auto it = tj.begin(); it != tj.end(); ++it) {
    const std::string w = where + ".transitions[\"" + it.key() + "\"]";
    const Index z = lookup(eidx, it.key(), w);
    const auto from = name_index(L.fibers[Y.face(1, 0, z)], w);
    const auto to = name_index(L.fibers[Y.face(1, 1, z)], w);
    std::vector<Index> t(from.size(), FiniteGroupoid::kNone);
    const auto& m = as_object(it.value(), w);
    for (auto e = m.begin(); e != m.end(); ++e) t[lookup(from, e.key(), w)] = lookup(to, as_string(e.value(), w), w);
    for (std::size_t a = 0; a < t.size(); ++a)
      if (t[a] == FiniteGroupoid::kNone) fail(w, "transition is not total");
    L.transitions[z] = std::move(t);
    tseen[z] = true;
  }
  for (Index z = 0; z < tseen.size(); ++z)
    if (!tseen[z]) fail(where + ".transitions", "no transition on edge \"" + Y.name(1, z) + "\"");
  return L;
}

}  // namespace

std::string to_string(Kind kind) { return kind_names().at(kind); }

std::optional<Kind> kind_from_string(const std::string& s) {
  for (const auto& [k, n] : kind_names())
    if (n == s) return k;
  return std::nullopt;
}

Document parse_document(const Json& j) {
  const auto kind_name = as_string(field(j, "kind", "document"), "document.kind");
  const auto kind = kind_from_string(kind_name);
  if (!kind) fail("document.kind", "unknown kind \"" + kind_name + "\"");
  const Json& b = field(j, "body", "document");
  const std::string w = "body";
  switch (*kind) {
    case Kind::simplicial_set:
      return {*kind, make_sset(parse_sset(b, w))};
    case Kind::simplicial_abelian_group:
      return {*kind, parse_sag(b, w)};
    case Kind::groupoid:
      return {*kind, parse_groupoid(b, w)};
    case Kind::local_system:
      return {*kind, parse_local_system(b, w)};
    case Kind::cover:
      return {*kind, parse_cover(b, w)};
    case Kind::presheaf:
      return {*kind, parse_presheaf(b, w)};
    case Kind::chain_complex:
      return {*kind, parse_complex(b, w)};
    case Kind::morphism:
      return {*kind, parse_morphism(b, w)};
  }
  fail("document", "unreachable");
}

Document parse_document_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_document(j);
}

std::optional<std::string> validate_document(const Document& doc) {
  return std::visit(
      [](const auto& x) -> std::optional<std::string> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SSetPtr>) {
          return x->identity_violation();
        } else if constexpr (std::is_same_v<T, SimplicialAbelianGroup>) {
          return x.identity_violation();
        } else if constexpr (std::is_same_v<T, FiniteGroupoid>) {
          return x.law_violation();
        } else if constexpr (std::is_same_v<T, SimplicialMorphism>) {
          if (auto v = x.source().identity_violation()) return "source: " + *v;
          if (auto v = x.target().identity_violation()) return "target: " + *v;
          return x.violation();
        } else if constexpr (std::is_same_v<T, FiniteCover>) {
          if (x.covers()) return std::nullopt;
          for (Index y = 0; y < x.ambient().size(); ++y) {
            bool hit = false;
            for (const auto& p : x.pieces())
              if (std::binary_search(p.begin(), p.end(), y)) hit = true;
            if (!hit) return "point \"" + x.ambient()[y] + "\" lies in no piece";
          }
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, PresheafDocument>) {
          if (!x.cover.covers()) return std::string("the underlying family is not a cover");
          return std::nullopt;
        } else {
          try {
            if constexpr (std::is_same_v<T, LocalSystemData>) {
              if (auto v = x.base->identity_violation()) return "base: " + *v;
              validate(x);
            } else {
              x.validate();
            }
          } catch (const Error& e) {
            return std::string(e.what());
          }
          return std::nullopt;
        }
      },
      doc.body);
}

// ---- serialization ----

Json to_json(const SimplicialSet& X) {
  const int N = X.truncation();
  Json j = Json::object();
  j["truncation"] = N;
  Json levels = Json::array();
  for (int l = 0; l <= N; ++l) levels.push_back(X.names(l));
  j["levels"] = std::move(levels);
  Json faces = Json::object(), degens = Json::object();
  for (int l = 0; l <= N; ++l)
    for (int op = 0; op <= l; ++op) {
      const std::string key = std::to_string(l) + "," + std::to_string(op);
      if (l > 0) {
        Json m = Json::object();
        for (Index x = 0; x < X.size(l); ++x) m[X.name(l, x)] = X.name(l - 1, X.face(l, op, x));
        faces[key] = std::move(m);
      }
      if (l < N) {
        Json m = Json::object();
        for (Index x = 0; x < X.size(l); ++x) m[X.name(l, x)] = X.name(l + 1, X.degeneracy(l, op, x));
        degens[key] = std::move(m);
      }
    }
  j["faces"] = std::move(faces);
  j["degeneracies"] = std::move(degens);
  return j;
}

Json to_json(const SimplicialMorphism& f) {
  Json j = Json::object();
  j["source"] = to_json(f.source());
  j["target"] = to_json(f.target());
  j["components"] = components_json(f);
  return j;
}

Json to_json(const FiniteGroupoid& g) {
  Json j = Json::object();
  j["objects"] = g.objects();
  Json arrows = Json::array();
  for (const auto& a : g.arrows())
    arrows.push_back(Json{{"id", a.name}, {"src", g.object(a.source)}, {"tgt", g.object(a.target)}});
  j["arrows"] = std::move(arrows);
  Json comp = Json::array();
  for (Index gg = 0; gg < g.arrow_count(); ++gg)
    for (Index f = 0; f < g.arrow_count(); ++f) {
      const Index c = g.compose(gg, f);
      if (c != FiniteGroupoid::kNone)
        comp.push_back(Json::array({g.arrow(gg).name, g.arrow(f).name, g.arrow(c).name}));
    }
  j["compose"] = std::move(comp);
  Json ids = Json::object(), inv = Json::object();
  for (Index x = 0; x < g.object_count(); ++x) ids[g.object(x)] = g.arrow(g.identity(x)).name;
  for (Index a = 0; a < g.arrow_count(); ++a) inv[g.arrow(a).name] = g.arrow(g.inverse(a)).name;
  j["identities"] = std::move(ids);
  j["inverses"] = std::move(inv);
  return j;
}

Json to_json(const FGAbelianGroup& g) {
  Json j = Json::object();
  j["rank"] = g.rank();
  j["torsion"] = g.torsion();
  return j;
}

Json to_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(m.row(i));
  return j;
}

Json to_json(const ChainComplex& C) {
  Json j = Json::object();
  j["orientation"] = C.orientation == Orientation::chain ? "chain" : "cochain";
  Json groups = Json::array();
  for (const auto& g : C.groups) groups.push_back(to_json(g));
  j["groups"] = std::move(groups);
  Json ds = Json::array();
  for (const auto& d : C.differentials) ds.push_back(to_json(d.matrix()));
  j["differentials"] = std::move(ds);
  return j;
}

Json to_json(const SimplicialAbelianGroup& A) {
  const int N = A.truncation();
  Json j = Json::object();
  j["truncation"] = N;
  Json groups = Json::array();
  for (int l = 0; l <= N; ++l) groups.push_back(to_json(A.level(l)));
  j["groups"] = std::move(groups);
  Json faces = Json::object(), degens = Json::object();
  for (int l = 0; l <= N; ++l)
    for (int op = 0; op <= l; ++op) {
      const std::string key = std::to_string(l) + "," + std::to_string(op);
      if (l > 0) faces[key] = to_json(A.face(l, op).matrix());
      if (l < N) degens[key] = to_json(A.degeneracy(l, op).matrix());
    }
  j["faces"] = std::move(faces);
  j["degeneracies"] = std::move(degens);
  return j;
}

Json to_json(const FiniteCover& c) {
  Json j = Json::object();
  j["ambient"] = c.ambient();
  Json pieces = Json::object();
  for (std::size_t i = 0; i < c.piece_count(); ++i) {
    Json p = Json::array();
    for (Index y : c.pieces()[i]) p.push_back(c.ambient()[y]);
    pieces[std::to_string(i)] = std::move(p);
  }
  j["pieces"] = std::move(pieces);
  return j;
}

Json to_json(const FiniteCover& c, const Presheaf& F) {
  Json j = Json::object();
  j["cover"] = to_json(c);
  Json values = Json::object();
  for (const auto& [k, g] : F.values()) values[hgk::to_string(k)] = to_json(g);
  j["values"] = std::move(values);
  Json res = Json::object();
  for (const auto& [k, r] : F.restrictions()) res[hgk::to_string(k.first) + ">" + hgk::to_string(k.second)] = to_json(r.matrix());
  j["restrictions"] = std::move(res);
  return j;
}

Json to_json(const LocalSystemData& L) {
  const auto& Y = *L.base;
  Json j = Json::object();
  j["base"] = to_json(Y);
  Json fibers = Json::object();
  for (Index v = 0; v < Y.size(0); ++v) fibers[Y.name(0, v)] = L.fibers[v];
  j["fibers"] = std::move(fibers);
  Json trans = Json::object();
  for (Index z = 0; z < Y.size(1); ++z) {
    Json m = Json::object();
    const auto& from = L.fibers[Y.face(1, 0, z)];
    const auto& to = L.fibers[Y.face(1, 1, z)];
    for (std::size_t a = 0; a < L.transitions[z].size(); ++a) m[from[a]] = to.at(L.transitions[z][a]);
    trans[Y.name(1, z)] = std::move(m);
  }
  j["transitions"] = std::move(trans);
  return j;
}

Json serialize(const Document& doc) {
  Json body = std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SSetPtr>)
          return to_json(*x);
        else if constexpr (std::is_same_v<T, PresheafDocument>)
          return to_json(x.cover, x.presheaf);
        else
          return to_json(x);
      },
      doc.body);
  Json j = Json::object();
  j["kind"] = to_string(doc.kind);
  j["body"] = std::move(body);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Document make_document(Kind kind, Body body) { return {kind, std::move(body)}; }

FGAbelianGroup parse_group(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw InvalidArgument("empty group description");
  std::vector<FGAbelianGroup> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto plus = s.find('+', pos);
    const std::string t = s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
    auto number = [&](const std::string& digits) {
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(digits, &used);
      } catch (const std::exception&) {
      }
      if (used != digits.size() || v < 0) throw InvalidArgument("bad group term \"" + t + "\"");
      return v;
    };
    if (t == "0")
      parts.emplace_back();
    else if (t == "Z")
      parts.push_back(FGAbelianGroup::free(1));
    else if (t.rfind("Z^", 0) == 0)
      parts.push_back(FGAbelianGroup::free(static_cast<int>(number(t.substr(2)))));
    else if (t.rfind("Z/", 0) == 0) {
      const auto n = number(t.substr(2));
      if (n == 0) throw InvalidArgument("bad group term \"" + t + "\"");
      parts.push_back(FGAbelianGroup::cyclic(n));
    } else
      throw InvalidArgument("bad group term \"" + t + "\"");
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return direct_sum(parts);
}

}  // namespace hgk::io
