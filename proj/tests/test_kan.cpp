#include <doctest.h>

#include "corpus.hpp"
#include "hgk/error.hpp"
#include "hgk/groupoid.hpp"
#include "hgk/hom.hpp"
#include "hgk/kan.hpp"

using namespace hgk;

namespace {

// Compatible tuples counted straight from the face tables, for the horn
// (k >= 0) or the whole boundary (k < 0).
std::size_t brute_matching_count(const SimplicialSet& X, int m, int k) {
  if (m == 0) return 1;
  const std::size_t base = X.size(m - 1);
  std::vector<int> slots;
  for (int i = 0; i <= m; ++i)
    if (i != k) slots.push_back(i);
  std::vector<Index> t(static_cast<std::size_t>(m) + 1, 0);
  if (base == 0) return slots.empty() ? 1 : 0;
  std::size_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t p = 0; p < slots.size() && ok; ++p)
      for (std::size_t q = p + 1; q < slots.size() && ok; ++q) {
        const int a = slots[p], b = slots[q];
        if (m >= 2 && X.face(m - 1, a, t[b]) != X.face(m - 1, b - 1, t[a])) ok = false;
      }
    if (ok) ++count;
    std::size_t p = 0;
    while (p < slots.size() && ++t[slots[p]] == base) t[slots[p++]] = 0;
    if (p == slots.size()) break;
  }
  return count;
}

}  // namespace

TEST_SUITE("kan") {
  TEST_CASE("matching objects at level 1 are vertices") {
    for (const auto& s : corpus::simplicial_sets(3)) {
      CAPTURE(s.name);
      CHECK(horn_matching_object(*s.set, 1, 0).size() == s.set->size(0));
      CHECK(horn_matching_object(*s.set, 1, 1).size() == s.set->size(0));
      CHECK(boundary_matching_object(*s.set, 1).size() == s.set->size(0) * s.set->size(0));
      CHECK(boundary_matching_object(*s.set, 0).size() == 1);
    }
  }

  TEST_CASE("inner 2-horns in a group nerve are pairs of elements") {
    for (int n : {2, 3, 5}) {
      auto X = nerve(cyclic_group(n), 3);
      CHECK(horn_matching_object(X, 2, 1).size() == static_cast<std::size_t>(n * n));
      CHECK(partial_matching_map(X, 2, 1).bijective());
    }
    auto S = nerve(symmetric_group_3(), 3);
    CHECK(horn_matching_object(S, 2, 1).size() == 36);
  }

  TEST_CASE("matching objects agree with hom counts and brute force") {
    for (const auto& s : corpus::simplicial_sets(4)) {
      CAPTURE(s.name);
      const int N = s.set->truncation();
      for (int m = 1; m <= 4; ++m) {
        CAPTURE(m);
        const auto B = boundary_matching_object(*s.set, m).size();
        CHECK(B == count_homs(boundary(m, N), *s.set));
        CHECK(B == brute_matching_count(*s.set, m, -1));
        for (int k = 0; k <= m; ++k) {
          CAPTURE(k);
          const auto H = horn_matching_object(*s.set, m, k).size();
          CHECK(H == count_homs(horn(m, k, N), *s.set));
          CHECK(H == brute_matching_count(*s.set, m, k));
        }
      }
    }
  }

  TEST_CASE("hollow triangle is not Kan") {
    auto X = boundary(2, 3);
    auto r = is_kan(X, 3);
    REQUIRE_FALSE(r.passed());
    bool inner = false;
    for (const auto& f : r.failures) {
      CHECK(f.kind == FailureKind::missing_filler);
      if (f.level == 2 && f.index == 1) {
        inner = true;
        // Replay: the tuple is a compatible horn with no filler.
        auto M = horn_matching_object(X, 2, 1);
        REQUIRE(M.find(f.tuple));
        for (Index x = 0; x < X.size(2); ++x) {
          bool fills = true;
          for (int i = 0; i <= 2; ++i)
            if (i != 1 && X.face(2, i, x) != f.tuple[static_cast<std::size_t>(i)]) fills = false;
          CHECK_FALSE(fills);
        }
      }
    }
    CHECK(inner);
  }

  TEST_CASE("Kan on nerves and standard simplices") {
    for (const auto& g : corpus::groupoids()) {
      CAPTURE(g.name);
      CHECK(is_kan(nerve(g.groupoid, 4), 4).passed());
    }
    CHECK(is_kan(constant({"a", "b"}, 3), 3).passed());
    CHECK_FALSE(is_kan(standard_simplex(1, 3), 3).passed());
  }

  TEST_CASE("hypergroupoid levels") {
    CHECK(is_n_hypergroupoid(constant({"a", "b"}, 3), 0).passed());
    auto Z2 = nerve(cyclic_group(2), 4);
    CHECK(is_n_hypergroupoid(Z2, 1).passed());
    CHECK_FALSE(is_n_hypergroupoid(Z2, 0).passed());
    CHECK(is_n_hypergroupoid(Z2, 2).passed());

    auto S = constant({"a", "b", "c"}, 2);
    auto C = coskeleton(S, 0, 4);
    CHECK_FALSE(is_n_hypergroupoid(C, 0).passed());
    CHECK(is_n_hypergroupoid(C, 1).passed());

    CHECK_THROWS_AS(is_n_hypergroupoid(nerve(cyclic_group(2), 2), 1), TruncationTooSmall);
    CHECK_NOTHROW(is_n_hypergroupoid(nerve(cyclic_group(2), 3), 1));
  }

  TEST_CASE("truncation above the coskeleton is checked") {
    // Delta^1 at level 2 is not 0-coskeletal on its own stored levels.
    auto r = is_n_hypergroupoid(standard_simplex(1, 3), 0);
    CHECK_FALSE(r.passed());
    // A nerve with a missing 2-simplex: coskeletal comparison fails.
    auto X = truncate(nerve(cyclic_group(2), 3), 1);
    auto Y = coskeleton(X, 1, 3);
    CHECK(is_n_hypergroupoid(Y, 1).passed() == false);
  }

  TEST_CASE("n-hypergroupoid verdicts are monotone in n") {
    for (const auto& s : corpus::simplicial_sets(5)) {
      CAPTURE(s.name);
      bool seen = false;
      for (int n = 0; n <= 3; ++n) {
        const bool p = is_n_hypergroupoid(*s.set, n).passed();
        if (seen) CHECK(p);
        seen = seen || p;
      }
    }
  }

  TEST_CASE("Cartesian morphisms") {
    for (const auto& s : corpus::simplicial_sets(3)) {
      CAPTURE(s.name);
      CHECK(is_cartesian(SimplicialMorphism::identity(s.set)).passed());
      CHECK(is_cartesian(corpus::fold(s.set)).passed());
    }
    auto Y = make_sset(nerve(cyclic_group(3), 3));
    auto F = make_sset(constant({"p", "q"}, 3));
    CHECK(is_cartesian(corpus::projection(Y, F)).passed());
    // Delta^1 -> point is not Cartesian.
    CHECK_FALSE(is_cartesian(corpus::to_point(make_sset(standard_simplex(1, 3)))).passed());
  }

  TEST_CASE("Cartesian agrees with relative 0-hypergroupoid") {
    const auto site = finite_set_site();
    for (const auto& s : corpus::simplicial_sets(3)) {
      CAPTURE(s.name);
      auto f = corpus::to_point(s.set);
      CHECK(is_cartesian(f).passed() == is_relative_hypergroupoid(f, 0, site).passed());
      auto g = corpus::fold(s.set);
      CHECK(is_cartesian(g).passed() == is_relative_hypergroupoid(g, 0, site).passed());
    }
  }

  TEST_CASE("relative hypergroupoid over a point is absolute") {
    const auto site = finite_set_site();
    for (const auto& s : corpus::simplicial_sets(4)) {
      CAPTURE(s.name);
      for (int n = 0; n <= 2; ++n) {
        CAPTURE(n);
        CHECK(is_relative_hypergroupoid(corpus::to_point(s.set), n, site).passed() ==
              is_n_hypergroupoid(*s.set, n).passed());
      }
    }
  }

  TEST_CASE("trivial relative maps") {
    const auto site = finite_set_site();
    auto X = make_sset(nerve(cyclic_group(2), 3));
    for (int n = 0; n <= 2; ++n) CHECK(is_trivial_relative(SimplicialMorphism::identity(X), n, site).passed());

    // Two points over one: a cover at level 0, not injective there.
    auto P = make_sset(constant({"a", "b"}, 3));
    auto f = corpus::to_point(P);
    auto r0 = is_trivial_relative(f, 0, site);
    REQUIRE_FALSE(r0.passed());
    CHECK(r0.failures.front().level == 0);

    // cosk_0 of a two-point set over a point is trivial at 1.
    auto C = make_sset(coskeleton(*P, 0, 3));
    CHECK(is_trivial_relative(corpus::to_point(C), 1, site).passed());
    CHECK_FALSE(is_trivial_relative(corpus::to_point(C), 0, site).passed());

    // The empty set is not a cover of the point.
    auto E = corpus::to_point(make_sset(constant({}, 3)));
    auto re = is_trivial_relative(E, 1, site);
    REQUIRE_FALSE(re.passed());
    CHECK(re.failures.front().kind == FailureKind::not_cover);
  }

  TEST_CASE("finite set site closure") {
    const auto site = finite_set_site();
    const FiniteMap id3{3, {0, 1, 2}};
    CHECK(site.is_cover(id3));
    const FiniteMap f{2, {0, 1, 1}};
    const FiniteMap g{1, {0, 0}};
    CHECK(site.is_cover(f));
    CHECK(site.is_cover(g));
    CHECK(site.is_cover(compose(g, f)));
    const FiniteMap h{2, {1, 1, 0, 1}};
    auto b = base_change(f, h);
    CHECK(b.codomain == 4);
    CHECK(b.domain() == 2 + 2 + 1 + 2);
    CHECK(site.is_cover(b));
    CHECK_FALSE(site.is_cover(FiniteMap{2, {0, 0}}));
    CHECK_FALSE(site.is_cover(base_change(FiniteMap{2, {0, 0}}, h)));
  }

  TEST_CASE("statistics cover every inspected map") {
    auto r = is_n_hypergroupoid(nerve(cyclic_group(2), 3), 1);
    CHECK_FALSE(r.statistics.empty());
    for (const auto& s : r.statistics) {
      CHECK(s.min_fiber <= s.max_fiber);
      CHECK(s.level >= 0);
    }
  }
}
