// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "corpus.hpp"
#include "hgk/abelian.hpp"
#include "hgk/cech.hpp"
#include "hgk/groupoid.hpp"
#include "hgk/hom.hpp"
#include "hgk/kan.hpp"
#include "oracles.hpp"

using namespace hgk;

namespace {

// Collects problems for one criterion.
struct Criterion {
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

bool run_criterion(int id, const std::string& title, const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.problems.push_back(std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = c.problems.empty();
  std::ostringstream line;
  line << "AC" << id << " " << (ok ? "PASS" : "FAIL") << "  " << title;
  for (const auto& n : c.notes) line << "; " << n;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << " (" << s << " s)";
  std::cout << line.str() << "\n";
  for (std::size_t i = 0; i < c.problems.size() && i < 10; ++i) std::cout << "    - " << c.problems[i] << "\n";
  if (c.problems.size() > 10) std::cout << "    - ... " << c.problems.size() - 10 << " more\n";
  return ok;
}

GroupoidIsomorphism identity_iso(const FiniteGroupoid& g) {
  GroupoidIsomorphism iso;
  iso.objects.resize(g.object_count());
  iso.arrows.resize(g.arrow_count());
  std::iota(iso.objects.begin(), iso.objects.end(), 0);
  std::iota(iso.arrows.begin(), iso.arrows.end(), 0);
  return iso;
}

long long choose(int m, int n) {
  if (n < 0 || n > m) return 0;
  long long r = 1;
  for (int i = 1; i <= n; ++i) r = r * (m - n + i) / i;
  return r;
}

bool same_data(const SimplicialSet& a, const SimplicialSet& b) {
  return a.data().names == b.data().names && a.data().faces == b.data().faces &&
         a.data().degeneracies == b.data().degeneracies;
}

// Local systems used by the relative checks.
std::vector<std::pair<std::string, LocalSystemData>> local_systems() {
  std::vector<std::pair<std::string, LocalSystemData>> out;
  out.emplace_back("swap over B(Z/2)", corpus::swap_system(3));

  auto BZ3 = make_sset(nerve(cyclic_group(3), 3));
  LocalSystemData rot{BZ3, {{"0", "1", "2"}}, {}};
  for (Index z = 0; z < BZ3->size(1); ++z) {
    const int g = std::stoi(BZ3->name(1, z));
    rot.transitions.push_back({static_cast<Index>(g % 3), static_cast<Index>((1 + g) % 3), static_cast<Index>((2 + g) % 3)});
  }
  out.emplace_back("rotation over B(Z/3)", rot);

  LocalSystemData triv{BZ3, {{"p", "q"}}, std::vector<std::vector<Index>>(BZ3->size(1), {0, 1})};
  out.emplace_back("trivial over B(Z/3)", triv);

  // Index-preserving transport over an indiscrete base.
  auto Bi = make_sset(nerve(indiscrete_groupoid({"a", "b", "c"}), 3));
  LocalSystemData ind{Bi, {{"a0", "a1"}, {"b0", "b1"}, {"c0", "c1"}}, std::vector<std::vector<Index>>(Bi->size(1), {0, 1})};
  out.emplace_back("transport over indiscrete {a,b,c}", ind);

  // Swap along every nondegenerate edge of B(Z/2) + point.
  auto Bu = make_sset(nerve(disjoint_union(cyclic_group(2), discrete_groupoid({"p"})), 3));
  LocalSystemData mix{Bu, {}, {}};
  for (Index v = 0; v < Bu->size(0); ++v) mix.fibers.push_back({"u", "v"});
  for (Index z = 0; z < Bu->size(1); ++z) {
    const bool degenerate = Bu->degeneracy(0, 0, Bu->face(1, 0, z)) == z;
    mix.transitions.push_back(degenerate ? std::vector<Index>{0, 1} : std::vector<Index>{1, 0});
  }
  out.emplace_back("swap over B(Z/2) + point", mix);
  return out;
}

struct Invocation {
  std::string args;
  int expected;
};

std::pair<int, std::string> shell(const std::string& cmd) {
  std::string out;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return {-1, out};
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = ::pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

int main() {
  const std::string hgk = HGK_BINARY;
  const std::string fixtures = HGK_FIXTURE_DIR;
  int failed = 0;
  auto crit = [&](int id, const std::string& title, const std::function<void(Criterion&)>& body) {
    if (!run_criterion(id, title, body)) ++failed;
  };

  crit(1, "groupoid nerves are 1-hypergroupoids; boundary(2) is not Kan", [](Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    int count = 0;
    for (const auto& g : corpus::groupoids()) {
      const auto X = nerve(g.groupoid, 4);
      c.require(is_n_hypergroupoid(X, 1).passed(), g.name + ": nerve fails n=1");
      const bool zero = is_n_hypergroupoid(X, 0).passed();
      // Discrete groupoids have only identities; every other one must fail n=0.
      c.require(zero == g.discrete, g.name + ": unexpected n=0 verdict");
      ++count;
    }
    c.require(count >= 10, "fewer than 10 groupoids");
    const auto rep = is_kan(boundary(2, 3), 2);
    c.require(!rep.passed(), "boundary(2) passes the Kan check");
    c.require(!rep.failures.empty() && rep.failures.front().kind == FailureKind::missing_filler &&
                  rep.failures.front().level == 2,
              "no missing-filler witness at level 2");
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(s < 10.0, "runtime exceeds 10 s");
    c.notes.push_back(std::to_string(count) + " groupoids");
    if (!rep.failures.empty()) c.notes.push_back("witness: " + rep.failures.front().description);
  });

  crit(2, "matching objects count the maps from horns and boundaries", [](Criterion& c) {
    int compared = 0;
    for (const auto& s : corpus::simplicial_sets(4)) {
      for (int m = 1; m <= 4; ++m) {
        const auto B = make_sset(boundary(m, 4));
        const auto homs = hom_set(B, s.set).size();
        c.require(boundary_matching_object(*s.set, m).tuples.size() == homs,
                  s.name + ": boundary m=" + std::to_string(m));
        if (m <= 2) c.require(oracle::unpruned_hom_count(B, s.set) == homs, s.name + ": brute boundary count");
        ++compared;
        for (int k = 0; k <= m; ++k) {
          const auto H = make_sset(horn(m, k, 4));
          const auto hh = hom_set(H, s.set).size();
          c.require(horn_matching_object(*s.set, m, k).tuples.size() == hh,
                    s.name + ": horn m=" + std::to_string(m) + " k=" + std::to_string(k));
          if (m <= 2) c.require(oracle::unpruned_hom_count(H, s.set) == hh, s.name + ": brute horn count");
          ++compared;
        }
      }
    }
    c.notes.push_back(std::to_string(compared) + " comparisons");
  });

  crit(3, "groupoids and 1-hypergroupoids are recovered with explicit isomorphisms", [](Criterion& c) {
    int n = 0;
    std::vector<SSetPtr> sets;
    for (const auto& g : corpus::groupoids()) {
      const auto pi = fundamental_groupoid(nerve(g.groupoid, 3));
      const bool shape = pi.object_count() == g.groupoid.object_count() && pi.arrow_count() == g.groupoid.arrow_count();
      c.require(shape && !isomorphism_violation(g.groupoid, pi, identity_iso(g.groupoid)),
                g.name + ": pi(nerve G) is not G under the identity assignment");
      sets.push_back(make_sset(nerve(g.groupoid, 3)));
      ++n;
    }
    sets.push_back(make_sset(coskeleton(constant({"a", "b", "c"}, 0), 0, 3)));
    sets.push_back(make_sset(constant({"p", "q"}, 3)));
    sets.push_back(make_sset(underlying_sset(em_space(FGAbelianGroup::cyclic(3), 1, 3))));
    for (const auto& X : sets) {
      const auto B = make_sset(nerve(fundamental_groupoid(*X), X->truncation()));
      const auto e = edge_path_map(X, B);
      c.require(!e.violation() && e.is_levelwise_bijective(), "edge-path map is not an isomorphism");
    }
    c.notes.push_back(std::to_string(n) + " groupoids, " + std::to_string(sets.size()) + " simplicial sets");
  });

  crit(4, "verified hypergroupoids are determined by their (n+1)-truncation", [](Criterion& c) {
    struct Case {
      std::string name;
      SSetPtr X;
      int n;
    };
    std::vector<Case> cases;
    for (const auto& g : corpus::groupoids()) cases.push_back({"nerve " + g.name, make_sset(nerve(g.groupoid, 4)), 1});
    cases.push_back({"constant {a,b}", make_sset(constant({"a", "b"}, 4)), 0});
    cases.push_back({"Delta^0", make_sset(standard_simplex(0, 4)), 0});
    cases.push_back({"cosk0 {a,b,c}", make_sset(coskeleton(constant({"a", "b", "c"}, 0), 0, 4)), 1});
    cases.push_back({"K(Z/2,2)", make_sset(underlying_sset(em_space(FGAbelianGroup::cyclic(2), 2, 5))), 2});
    cases.push_back({"K(Z/3,1)", make_sset(underlying_sset(em_space(FGAbelianGroup::cyclic(3), 1, 4))), 1});
    int verified = 0;
    for (const auto& k : cases) {
      if (!is_n_hypergroupoid(*k.X, k.n).passed()) {
        c.require(false, k.name + ": not a " + std::to_string(k.n) + "-hypergroupoid");
        continue;
      }
      const int N = k.X->truncation();
      const auto C = coskeleton(truncate(*k.X, k.n + 1), k.n + 1, N);
      const auto u = coskeleton_unit(k.X, k.n + 1);
      c.require(same_data(u.target(), C), k.name + ": unit target differs from cosk of the truncation");
      c.require(!u.violation() && u.is_levelwise_bijective(), k.name + ": stored levels not reproduced");
      ++verified;
    }
    c.notes.push_back(std::to_string(verified) + " hypergroupoids");
  });

  crit(5, "Dold-Kan round trips and Eilenberg-MacLane level sizes", [](Criterion& c) {
    int objects = 0;
    for (const auto& x : corpus::complexes()) {
      for (const auto& g : x.complex.groups) {
        c.require(g.rank() <= 4, x.name + ": rank above 4");
        for (Int t : g.torsion()) c.require(t <= 6, x.name + ": torsion above 6");
      }
      const int N = 4;
      const auto unit = dold_kan_unit(x.complex, N);
      const auto NG = normalized_complex(denormalize(x.complex, N));
      bool ok = unit.size() == x.complex.groups.size();
      for (std::size_t n = 0; ok && n < unit.size(); ++n) {
        ok = is_isomorphism(unit[n]);
        if (ok && n >= 1)
          ok = compose(NG.differentials[n - 1], unit[n]) == compose(unit[n - 1], x.complex.differentials[n - 1]);
      }
      for (std::size_t n = unit.size(); ok && n < NG.groups.size(); ++n) ok = NG.groups[n].is_zero();
      c.require(ok, x.name + ": N(Gamma C) is not C");
      ++objects;
    }
    for (const auto& s : corpus::simplicial_groups(3)) {
      const auto& A = s.group;
      const auto counit = dold_kan_counit(A);
      const auto G = denormalize(normalized_complex(A), A.truncation());
      bool ok = true;
      for (int n = 0; ok && n <= A.truncation(); ++n) {
        const auto un = static_cast<std::size_t>(n);
        ok = is_isomorphism(counit[un]);
        for (int i = 0; ok && n >= 1 && i <= n; ++i)
          ok = compose(A.face(n, i), counit[un]) == compose(counit[un - 1], G.face(n, i));
        for (int i = 0; ok && n < A.truncation() && i <= n; ++i)
          ok = compose(A.degeneracy(n, i), counit[un]) == compose(counit[un + 1], G.degeneracy(n, i));
      }
      c.require(ok, s.name + ": Gamma(N A) is not A");
      ++objects;
    }
    c.require(objects >= 10, "fewer than 10 objects");
    for (Int a : {2, 3})
      for (int n = 0; n <= 2; ++n) {
        const auto K = em_space(FGAbelianGroup::cyclic(a), n, 5);
        for (int m = 0; m <= 5; ++m) {
          const double expect = std::pow(static_cast<double>(a), static_cast<double>(choose(m, n)));
          const auto card = K.level(m).cardinality();
          c.require(card && static_cast<double>(*card) == expect,
                    "|K(Z/" + std::to_string(a) + "," + std::to_string(n) + ")_" + std::to_string(m) + "|");
        }
      }
    c.notes.push_back(std::to_string(objects) + " objects");
  });

  crit(6, "homotopy of K(A,n) is A in degree n only", [](Criterion& c) {
    int cases = 0;
    for (const auto& A : {FGAbelianGroup::cyclic(2), FGAbelianGroup::cyclic(3), FGAbelianGroup::free(1),
                          FGAbelianGroup(1, {6})}) {
      for (int n = 0; n <= 2; ++n) {
        const auto pi = homotopy_groups(em_space(A, n, n + 3));
        c.require(pi.size() >= static_cast<std::size_t>(n) + 3, "too few homotopy degrees");
        for (int d = 0; d <= n + 2 && d < static_cast<int>(pi.size()); ++d)
          c.require(pi[static_cast<std::size_t>(d)] == (d == n ? A : FGAbelianGroup{}),
                    "K(" + A.to_string() + "," + std::to_string(n) + "): degree " + std::to_string(d));
        ++cases;
      }
    }
    c.notes.push_back(std::to_string(cases) + " spaces");
  });

  crit(7, "Cech cohomology of the corpus covers", [](Criterion& c) {
    const auto Z = FGAbelianGroup::free(1);
    for (const auto& cv : corpus::covers()) {
      const auto H = cech_cohomology(cv.cover, constant_presheaf(cv.cover, Z), 2);
      const auto betti = oracle::cech_betti(cv.pieces, 2, 0);
      const auto betti2 = oracle::cech_betti(cv.pieces, 2, 2);
      for (std::size_t n = 0; n <= 2; ++n) {
        c.require(static_cast<std::size_t>(H[n].rank()) == betti[n] && H[n].torsion().empty() && betti2[n] == betti[n],
                  cv.name + ": H^" + std::to_string(n) + " disagrees with the rank oracle");
      }
      if (cv.name == "cyclic 4") {
        c.require(H[0] == Z && H[1] == Z, "cyclic 4: expected H0 = H1 = Z");
        c.notes.push_back("cyclic 4: H0 = " + H[0].to_string() + ", H1 = " + H[1].to_string());
      }
      for (const auto& F : {constant_presheaf(cv.cover, Z), constant_presheaf(cv.cover, FGAbelianGroup::cyclic(6)),
                            function_presheaf(cv.cover, Z)})
        c.require(cech_cohomology(cv.cover, F, 2) == alternating_cohomology(cv.cover, F, 2),
                  cv.name + ": unnormalized and alternating cohomology differ");
    }
    const auto single = corpus::covers()[0];
    for (const auto& A : {FGAbelianGroup::free(1), FGAbelianGroup::cyclic(4), FGAbelianGroup(2, {3})}) {
      for (const auto& F : {constant_presheaf(single.cover, A), function_presheaf(single.cover, A)}) {
        const auto H = cech_cohomology(single.cover, F, 3);
        c.require(H[0] == F.value({}), "single piece: H0 is not F(Y)");
        for (std::size_t n = 1; n < H.size(); ++n) c.require(H[n].is_zero(), "single piece: higher cohomology");
      }
    }
  });

  crit(8, "Cech nerves, local-system totals and descent data", [](Criterion& c) {
    int nerves = 0;
    for (const auto& cv : corpus::covers()) {
      c.require(verify_nerve_trivial(cv.cover, 3).passed(), cv.name + ": Cech nerve not trivial relative");
      c.require(is_trivial_relative(cech_nerve(cv.cover, 3), 1, finite_set_site()).passed(),
                cv.name + ": direct trivial-relative check fails");
      ++nerves;
    }
    int systems = 0;
    for (const auto& [name, L] : local_systems()) {
      validate(L);
      const auto p = local_system_total(L);
      c.require(is_cartesian(p).passed(), name + ": total space map is not Cartesian");
      c.require(find_local_system_isomorphism(L, descent_data(p)).has_value(), name + ": descent data differs");
      ++systems;
    }
    c.notes.push_back(std::to_string(nerves) + " covers, " + std::to_string(systems) + " local systems");
  });

  crit(9, "simplicial groups against their underlying simplicial sets", [](Criterion& c) {
    for (int N : {2, 3, 4}) {
      const auto U = make_sset(underlying_sset(em_space(FGAbelianGroup::cyclic(2), 1, N)));
      c.require(find_isomorphism(U, make_sset(nerve(cyclic_group(2), N))).has_value(),
                "underlying K(Z/2,1) is not B(Z/2) at truncation " + std::to_string(N));
    }
    int compared = 0;
    for (const auto& s : corpus::simplicial_groups(4)) {
      if (!s.finite) continue;
      const auto X = underlying_sset(s.group);
      for (int n = 0; n <= 2; ++n) {
        c.require(is_abelian_hypergroupoid(s.group, n).passed() == is_n_hypergroupoid(X, n).passed(),
                  s.name + ": verdicts differ at n=" + std::to_string(n));
        ++compared;
      }
    }
    c.notes.push_back(std::to_string(compared) + " comparisons");
  });

  crit(10, "CLI output is deterministic and exit codes follow the contract", [&](Criterion& c) {
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(fixtures)) files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    std::vector<std::string> script;
    for (const auto& f : files) {
      script.push_back("validate " + f);
      script.push_back("check " + f + " --kind hypergroupoid --n 1");
      script.push_back("check " + f + " --kind kan --upto 2");
      script.push_back("check " + f + " --kind trivial-relative --n 1");
      script.push_back("check " + f + " --kind cartesian");
      script.push_back("compute " + f + " --what homology");
      script.push_back("compute " + f + " --what cech");
      script.push_back("compute " + f + " --what nerve --upto 3");
      script.push_back("compute " + f + " --what pi");
      script.push_back("compute " + f + " --what normalize");
      script.push_back("compute " + f + " --what hom-count --upto 2");
    }
    script.push_back("compute --what em --coeff Z/2 --n 2 --upto 4");
    auto pass = [&] {
      std::string all;
      for (const auto& s : script) {
        const auto [code, out] = shell(hgk + " " + s + " --format json 2>/dev/null");
        all += "$ " + s + "\n" + std::to_string(code) + "\n" + out;
      }
      return all;
    };
    const std::string first = pass(), second = pass();
    c.require(first == second, "JSON output differs between runs");

    const std::vector<Invocation> contract{
        {"validate " + fixtures + "/nerve_z2.json", 0},
        {"validate " + fixtures + "/empty_sset.json", 0},
        {"validate " + fixtures + "/broken_identity.json", 1},
        {"validate " + fixtures + "/broken_groupoid.json", 1},
        {"validate " + fixtures + "/not_json.json", 3},
        {"validate " + fixtures + "/unknown_kind.json", 3},
        {"validate " + fixtures + "/missing_levels.json", 3},
        {"check " + fixtures + "/nerve_z2.json --kind hypergroupoid --n 1", 0},
        {"check " + fixtures + "/boundary2.json --kind kan", 1},
        {"check " + fixtures + "/em_z2_2.json --kind hypergroupoid --n 1", 1},
        {"check " + fixtures + "/em_z2_1.json --kind hypergroupoid --n 2", 2},
        {"check " + fixtures + "/groupoid_z2.json --kind kan", 2},
        {"check " + fixtures + "/not_json.json --kind kan", 3},
        {"check " + fixtures + "/morphism_swap_total.json --kind cartesian", 0},
        {"check " + fixtures + "/cover_cyclic4.json --kind trivial-relative", 0},
        {"compute " + fixtures + "/groupoid_z2.json --what nerve --upto 3", 0},
        {"compute " + fixtures + "/cover_cyclic4.json --what cech --coeff Z", 0},
        {"compute " + fixtures + "/complex_times2.json --what homology", 0},
        {"compute " + fixtures + "/cover_cyclic4.json --what cech --coeff Q", 2},
        {"compute " + fixtures + "/broken_identity.json --what pi", 2},
        {"frobnicate", 2},
        {"check " + fixtures + "/nerve_z2.json", 2},
        {"compute " + fixtures + "/nerve_z2.json --what everything", 2},
    };
    for (const auto& inv : contract) {
      const int code = shell(hgk + " " + inv.args + " >/dev/null 2>&1").first;
      c.require(code == inv.expected,
                "'" + inv.args + "' exited " + std::to_string(code) + ", expected " + std::to_string(inv.expected));
    }
    const int capped = shell("HGK_MAX_ENUM=5 " + hgk + " compute " + fixtures + "/nerve_z3.json --what hom-count >/dev/null 2>&1").first;
    c.require(capped == 2, "HGK_MAX_ENUM cap not enforced");
    const int bad_env = shell("HGK_MAX_ENUM=lots " + hgk + " validate " + fixtures + "/nerve_z3.json >/dev/null 2>&1").first;
    c.require(bad_env == 2, "invalid HGK_MAX_ENUM accepted");

    // The cyclic-4 Cech example through the CLI.
    const auto cech = shell(hgk + " compute " + fixtures + "/cover_cyclic4.json --what cech --coeff Z --format json").second;
    c.require(cech.find("\"group\": \"Z\"") != std::string::npos, "CLI Cech output lacks Z");
    c.notes.push_back(std::to_string(script.size()) + " commands x2 over " + std::to_string(files.size()) + " fixtures");
    c.notes.push_back(std::to_string(contract.size() + 2) + " exit-code invocations");
  });

  return failed == 0 ? 0 : 1;
}
