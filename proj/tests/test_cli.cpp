#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "hgk/cli.hpp"
#include "hgk/io.hpp"

using hgk::io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string fx(const std::string& name) { return std::string(HGK_FIXTURE_DIR) + "/" + name; }

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hgk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = hgk::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expected) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run(args);
  CHECK_MESSAGE(r.code == expected, r.out << r.err);
  return Json::parse(r.out);
}

std::vector<std::string> group_names(const Json& list) {
  std::vector<std::string> out;
  for (const auto& g : list) out.push_back(g["group"].get<std::string>());
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("validate exit codes") {
    CHECK(run({"validate", fx("nerve_z2.json")}).code == 0);
    CHECK(run({"validate", fx("empty_sset.json")}).code == 0);
    const auto broken = run_json({"validate", fx("broken_identity.json")}, 1);
    CHECK(broken["verdict"] == "fail");
    const std::string v = broken["violation"];
    CHECK(v.find("d0 d1") != std::string::npos);
    CHECK(v.find("[1,0,1]") != std::string::npos);
    CHECK(run({"validate", fx("broken_groupoid.json")}).code == 1);
    CHECK(run({"validate", fx("not_json.json")}).code == 3);
    CHECK(run({"validate", fx("unknown_kind.json")}).code == 3);
    CHECK(run({"validate", fx("missing_levels.json")}).code == 3);
    CHECK(run({"validate", fx("does_not_exist.json")}).code == 2);
  }

  TEST_CASE("check verdicts") {
    const auto nerve = run_json({"check", fx("nerve_z2.json"), "--kind", "hypergroupoid", "--n", "1"}, 0);
    CHECK(nerve["verdict"] == "pass");
    CHECK(nerve["check"] == "1-hypergroupoid");

    const auto kan = run_json({"check", fx("boundary2.json"), "--kind", "kan"}, 1);
    REQUIRE_FALSE(kan["failures"].empty());
    CHECK(kan["failures"][0]["level"] == 2);
    CHECK(kan["failures"][0]["kind"] == "missing-filler");

    const auto em = run_json({"check", fx("em_z2_2.json"), "--kind", "hypergroupoid", "--n", "1"}, 1);
    const int level = em["failures"][0]["level"];
    CHECK((level == 2 || level == 3));

    CHECK(run({"check", fx("morphism_swap_total.json"), "--kind", "cartesian"}).code == 0);
    CHECK(run({"check", fx("cover_cyclic4.json"), "--kind", "trivial-relative"}).code == 0);
    CHECK(run({"check", fx("morphism_cech_cyclic4.json"), "--kind", "trivial-relative"}).code == 0);
    CHECK(run({"check", fx("morphism_fold.json"), "--kind", "relative-hypergroupoid", "--n", "0"}).code == 0);
    CHECK(run({"check", fx("morphism_fold.json"), "--kind", "trivial-relative", "--n", "0"}).code == 1);
  }

  TEST_CASE("check preconditions") {
    // Wrong document kind.
    CHECK(run({"check", fx("groupoid_z2.json"), "--kind", "kan"}).code == 2);
    // Invalid document.
    CHECK(run({"check", fx("broken_identity.json"), "--kind", "kan"}).code == 2);
    // Parse error stays distinct.
    CHECK(run({"check", fx("not_json.json"), "--kind", "kan"}).code == 3);
    // Truncation too small: the message points at cosk.
    const auto r = run({"check", fx("em_z2_1.json"), "--kind", "hypergroupoid", "--n", "2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("cosk") != std::string::npos);
    const auto k = run({"check", fx("boundary2.json"), "--kind", "kan", "--upto", "7"});
    CHECK(k.code == 2);
    CHECK(k.err.find("cosk") != std::string::npos);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"check", fx("nerve_z2.json")}).code == 2);
    CHECK(run({"check", fx("nerve_z2.json"), "--kind", "sheaf"}).code == 2);
    CHECK(run({"compute", fx("nerve_z2.json"), "--what", "everything"}).code == 2);
    CHECK(run({"compute", "--what", "nerve"}).code == 2);
    CHECK(run({"validate", fx("nerve_z2.json"), "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("compute results") {
    const auto nerve = run_json({"compute", fx("groupoid_z2.json"), "--what", "nerve", "--upto", "3"}, 0);
    CHECK(nerve["result"]["level_sizes"] == Json::array({1, 2, 4, 8}));
    CHECK(nerve["result"]["document"]["kind"] == "simplicial-set");

    const auto cech = run_json({"compute", fx("cover_cyclic4.json"), "--what", "cech", "--coeff", "Z"}, 0);
    const auto H = group_names(cech["result"]["cohomology"]);
    CHECK(H[0] == "Z");
    CHECK(H[1] == "Z");

    const auto hom = run_json({"compute", fx("complex_times2.json"), "--what", "homology"}, 0);
    CHECK(group_names(hom["result"]["homology"]) == std::vector<std::string>{"Z/2", "0"});

    const auto pi = run_json({"compute", fx("nerve_z3.json"), "--what", "pi"}, 0);
    CHECK(pi["result"]["arrows"] == 3);

    const auto em = run_json({"compute", "--what", "em", "--coeff", "Z/3", "--n", "2", "--upto", "3"}, 0);
    CHECK(em["result"]["levels"] == Json::array({"0", "0", "Z/3", "Z/3 + Z/3 + Z/3"}));

    const auto cosk = run_json({"compute", fx("boundary2.json"), "--what", "cosk", "--n", "1", "--upto", "2"}, 0);
    CHECK(cosk["result"]["level_sizes"] == Json::array({3, 6, 10}));

    const auto counts = run_json({"compute", fx("nerve_z2.json"), "--what", "hom-count", "--upto", "1"}, 0);
    CHECK(counts["result"]["counts"][0]["count"] == 1);
    CHECK(counts["result"]["counts"][1]["count"] == 2);

    const auto norm = run_json({"compute", fx("em_z2_2.json"), "--what", "normalize"}, 0);
    CHECK(norm["result"]["groups"][2] == "Z/2");
    const auto den = run_json({"compute", fx("complex_z6_shift1.json"), "--what", "denormalize", "--upto", "2"}, 0);
    CHECK(den["result"]["levels"] == Json::array({"0", "Z/6", "Z/6 + Z/6"}));

    // Wrong coefficient syntax and wrong document kind are preconditions.
    CHECK(run({"compute", fx("cover_cyclic4.json"), "--what", "cech", "--coeff", "Q"}).code == 2);
    CHECK(run({"compute", fx("cover_cyclic4.json"), "--what", "nerve"}).code == 2);
    // pi needs level 2.
    CHECK(run({"compute", fx("empty_sset.json"), "--what", "pi"}).code == 2);
  }

  TEST_CASE("compute writes documents that parse back") {
    const auto path = std::filesystem::temp_directory_path() / "hgk_cli_test_nerve.json";
    const auto r = run_json({"compute", fx("groupoid_s3.json"), "--what", "nerve", "--upto", "3", "--out", path.string()}, 0);
    CHECK(r["result"]["written_to"] == path.string());
    CHECK(run({"validate", path.string()}).code == 0);
    CHECK(run({"check", path.string(), "--kind", "hypergroupoid", "--n", "1"}).code == 0);
    std::filesystem::remove(path);
    CHECK(run({"compute", fx("groupoid_s3.json"), "--what", "nerve", "--out", "/nonexistent/dir/x.json"}).code == 2);
  }

  TEST_CASE("machine output is deterministic; human output carries wall time") {
    const std::vector<std::string> args{"check", fx("nerve_z3.json"), "--kind", "hypergroupoid", "--format", "json"};
    const auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK(a.out.find("wall") == std::string::npos);
    CHECK(run({"check", fx("nerve_z3.json"), "--kind", "hypergroupoid"}).out.find("wall time") != std::string::npos);
  }

  TEST_CASE("enumeration cap from the environment") {
    ::setenv("HGK_MAX_ENUM", "5", 1);
    const auto capped = run({"compute", fx("nerve_z3.json"), "--what", "hom-count"});
    ::setenv("HGK_MAX_ENUM", "minus one", 1);
    const auto bad = run({"validate", fx("nerve_z3.json")});
    ::unsetenv("HGK_MAX_ENUM");
    hgk::set_enumeration_limit(0);
    CHECK(capped.code == 2);
    CHECK(capped.err.find("estimated size") != std::string::npos);
    CHECK(bad.code == 2);
  }
}
