// Writes the bundled fixture corpus into the directory given as argv[1].

#include <fstream>
#include <iostream>

#include "corpus.hpp"
#include "hgk/io.hpp"

namespace {

using namespace hgk;
using io::Json;
using io::Kind;

std::string dir;

void put(const std::string& name, const Json& j) {
  std::ofstream(dir + "/" + name) << io::dump(j);
}

void put(const std::string& name, Kind kind, io::Body body) {
  put(name, io::serialize(io::make_document(kind, std::move(body))));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: fixture_gen DIR\n";
    return 2;
  }
  dir = argv[1];

  put("groupoid_z2.json", Kind::groupoid, cyclic_group(2));
  put("groupoid_s3.json", Kind::groupoid, symmetric_group_3());
  put("groupoid_indiscrete_ab.json", Kind::groupoid, indiscrete_groupoid({"a", "b"}));
  put("groupoid_discrete_abc.json", Kind::groupoid, discrete_groupoid({"a", "b", "c"}));

  put("nerve_z2.json", Kind::simplicial_set, make_sset(nerve(cyclic_group(2), 3)));
  put("nerve_z3.json", Kind::simplicial_set, make_sset(nerve(cyclic_group(3), 3)));
  put("boundary2.json", Kind::simplicial_set, make_sset(boundary(2, 3)));
  put("horn21.json", Kind::simplicial_set, make_sset(horn(2, 1, 3)));
  put("empty_sset.json", Kind::simplicial_set, make_sset(boundary(0, 2)));

  put("em_z2_1.json", Kind::simplicial_abelian_group, em_space(FGAbelianGroup::cyclic(2), 1, 3));
  put("em_z2_2.json", Kind::simplicial_abelian_group, em_space(FGAbelianGroup::cyclic(2), 2, 4));

  for (const auto& c : corpus::complexes())
    if (c.name == "Z -2-> Z") put("complex_times2.json", Kind::chain_complex, c.complex);
  put("complex_z6_shift1.json", Kind::chain_complex, shifted(FGAbelianGroup::cyclic(6), 1));

  for (const auto& c : corpus::covers()) {
    if (c.name == "cyclic 4") {
      put("cover_cyclic4.json", Kind::cover, c.cover);
      put("presheaf_cyclic4_functions.json", Kind::presheaf,
          io::PresheafDocument{c.cover, function_presheaf(c.cover, FGAbelianGroup::free(1))});
      put("morphism_cech_cyclic4.json", Kind::morphism, cech_nerve(c.cover, 2));
    }
    if (c.name == "single piece") put("cover_single.json", Kind::cover, c.cover);
    if (c.name == "triangle") put("cover_triangle.json", Kind::cover, c.cover);
  }

  const auto swap = corpus::swap_system(2);
  put("local_system_swap.json", Kind::local_system, swap);
  put("morphism_swap_total.json", Kind::morphism, local_system_total(swap));
  put("morphism_fold.json", Kind::morphism, corpus::fold(make_sset(boundary(2, 2))));

  // One face of one simplex redirected: breaks a simplicial identity.
  Json broken = io::serialize(io::make_document(Kind::simplicial_set, make_sset(nerve(cyclic_group(2), 3))));
  broken["body"]["faces"]["2,0"]["[1,1]"] = "0";
  put("broken_identity.json", broken);

  // A groupoid whose composition table is not associative-compatible.
  Json bad_groupoid = io::serialize(io::make_document(Kind::groupoid, cyclic_group(2)));
  for (auto& t : bad_groupoid["body"]["compose"])
    if (t[0] == "1" && t[1] == "1") t[2] = "1";
  put("broken_groupoid.json", bad_groupoid);

  std::ofstream(dir + "/not_json.json") << "{\"kind\": \"simplicial-set\", \"body\": \n";
  put("unknown_kind.json", Json{{"kind", "spectrum"}, {"body", Json::object()}});
  put("missing_levels.json", Json{{"kind", "simplicial-set"}, {"body", Json{{"truncation", 1}}}});
  return 0;
}
