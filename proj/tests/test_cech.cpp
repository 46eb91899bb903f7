#include <doctest.h>

#include "corpus.hpp"
#include "hgk/cech.hpp"
#include "hgk/error.hpp"
#include "hgk/groupoid.hpp"
#include "hgk/hom.hpp"
#include "hgk/kan.hpp"
#include "oracles.hpp"

using namespace hgk;

namespace {

const FGAbelianGroup kZ = FGAbelianGroup::free(1);

}  // namespace

TEST_SUITE("cech") {
  TEST_CASE("cover validation") {
    CHECK_THROWS_AS(FiniteCover({"a", "b"}, {{0}}), InvalidArgument);
    CHECK_THROWS_AS(FiniteCover({"a", "b"}, {{0, 2}}), InvalidArgument);
    CHECK_NOTHROW(FiniteCover::unchecked({"a", "b"}, {{0}}));
    const auto c = corpus::make_cover({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(c.intersection({0, 1}) == std::vector<Index>{1});
    CHECK(c.intersection({0, 2}).empty());
    CHECK(c.intersection({}).size() == 4);
  }

  TEST_CASE("nerve level sizes") {
    auto single = cech_nerve(corpus::make_cover({"a", "b", "c"}, {{0, 1, 2}}), 3);
    for (int n = 0; n <= 3; ++n) CHECK(single.source().size(n) == 3);
    CHECK(single.is_levelwise_bijective());

    auto disjoint = cech_nerve(corpus::make_cover({"a", "b"}, {{0}, {1}}), 3);
    for (int n = 0; n <= 3; ++n) CHECK(disjoint.source().size(n) == 2);

    // Each point of the cyclic cover lies in two pieces: 4 * 2^(n+1).
    auto cyc = cech_nerve(corpus::make_cover({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), 3);
    CHECK(cyc.source().size(0) == 8);
    CHECK(cyc.source().size(1) == 16);
    CHECK(cyc.source().size(2) == 32);
    CHECK(cyc.source().find(1, "b:0,1"));
  }

  TEST_CASE("nerve is the 0-coskeleton of the disjoint pieces over Y") {
    for (const auto& c : corpus::covers()) {
      CAPTURE(c.name);
      auto f = cech_nerve(c.cover, 3);
      CHECK_FALSE(f.violation());
      CHECK_FALSE(f.source().identity_violation());
      // Levels >= 1 are determined by the vertices: compare with cosk_0.
      auto X = f.source_ptr();
      auto K = make_sset(coskeleton(truncate(*X, 0), 0, 3));
      std::size_t expect = 0;
      for (std::size_t y = 0; y < c.cover.ambient().size(); ++y) {
        std::size_t k = 0;
        for (const auto& p : c.pieces)
          if (std::find(p.begin(), p.end(), static_cast<int>(y)) != p.end()) ++k;
        expect += k * k;
      }
      CHECK(X->size(1) == expect);
      CHECK(K->size(1) >= X->size(1));
    }
  }

  TEST_CASE("every nerve is a trivial relative 1-hypergroupoid") {
    for (const auto& c : corpus::covers()) {
      CAPTURE(c.name);
      CHECK(verify_nerve_trivial(c.cover).passed());
    }
    auto r = verify_nerve_trivial(FiniteCover::unchecked({"a", "b", "c"}, {{0}, {1}}));
    REQUIRE_FALSE(r.passed());
    CHECK(r.failures.front().level == 0);
    CHECK(r.failures.front().kind == FailureKind::not_cover);
  }

  TEST_CASE("single piece: all relative matching maps bijective") {
    auto f = cech_nerve(corpus::make_cover({"a", "b"}, {{0, 1}}), 3);
    for (int m = 0; m <= 3; ++m) {
      auto r = relative_matching_map(f, m, std::nullopt);
      for (const auto& fib : r.fibers) CHECK(fib.size() == 1);
    }
  }

  TEST_CASE("nerve with point overlaps is a 1-hypergroupoid") {
    auto f = cech_nerve(corpus::make_cover({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), 4);
    CHECK(is_n_hypergroupoid(f.source(), 1).passed());
  }

  TEST_CASE("complex shapes") {
    const auto c = corpus::make_cover({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const auto F = constant_presheaf(c, kZ);
    const auto C = cech_complex(c, F, 2);
    CHECK(C.groups[0].rank() == 4);
    CHECK(C.groups[1].rank() == 12);
    const auto A = alternating_complex(c, F, 2);
    CHECK(A.groups[1].rank() == 4);
    CHECK(A.groups[2].is_zero());

    const auto s = corpus::make_cover({"a", "b"}, {{0, 1}});
    const auto S = cech_complex(s, constant_presheaf(s, kZ), 4);
    for (int n = 0; n < 4; ++n) CHECK(S.differentials[static_cast<std::size_t>(n)].is_zero() == (n % 2 == 0));
    const auto SA = alternating_complex(s, constant_presheaf(s, kZ), 2);
    CHECK(SA.groups[0] == kZ);
    CHECK(SA.groups[1].is_zero());
  }

  TEST_CASE("cohomology with constant Z against the rank oracle") {
    for (const auto& c : corpus::covers()) {
      CAPTURE(c.name);
      const auto H = cech_cohomology(c.cover, constant_presheaf(c.cover, kZ), 2);
      const auto betti = oracle::cech_betti(c.pieces, 2, 0);
      for (std::size_t n = 0; n <= 2; ++n) {
        CHECK(static_cast<std::size_t>(H[n].rank()) == betti[n]);
        CHECK(H[n].torsion().empty());
      }
      const auto H2 = cech_cohomology(c.cover, constant_presheaf(c.cover, FGAbelianGroup::cyclic(2)), 2);
      const auto betti2 = oracle::cech_betti(c.pieces, 2, 2);
      for (std::size_t n = 0; n <= 2; ++n) CHECK(H2[n] == FGAbelianGroup(0, Vector(betti2[n], 2)));
    }
  }

  TEST_CASE("cohomology examples") {
    const auto cyc = corpus::make_cover({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const auto H = cech_cohomology(cyc, constant_presheaf(cyc, kZ));
    CHECK(H[0] == kZ);
    CHECK(H[1] == kZ);
    CHECK(H[2].is_zero());

    const auto one = corpus::make_cover({"a", "b", "c"}, {{0, 1, 2}});
    const auto F = constant_presheaf(one, FGAbelianGroup::cyclic(6));
    const auto H1 = cech_cohomology(one, F);
    CHECK(H1[0] == F.value({}));
    CHECK(H1[1].is_zero());
    CHECK(H1[2].is_zero());

    // Three pieces pairwise meeting in single points with no triple point:
    // the nerve is a hollow triangle.
    const auto tri = corpus::make_cover({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
    const auto HT = cech_cohomology(tri, constant_presheaf(tri, kZ));
    CHECK(HT[0] == kZ);
    CHECK(HT[1] == kZ);
    CHECK(HT[2].is_zero());
  }

  TEST_CASE("unnormalized and alternating complexes agree") {
    for (const auto& c : corpus::covers()) {
      CAPTURE(c.name);
      for (const auto& A : {kZ, FGAbelianGroup::cyclic(2), FGAbelianGroup(0, {2, 4})}) {
        CHECK(cech_cohomology(c.cover, constant_presheaf(c.cover, A), 2) ==
              alternating_cohomology(c.cover, constant_presheaf(c.cover, A), 2));
        CHECK(cech_cohomology(c.cover, function_presheaf(c.cover, A), 2) ==
              alternating_cohomology(c.cover, function_presheaf(c.cover, A), 2));
      }
    }
  }

  TEST_CASE("H^0 counts components of the overlap graph") {
    for (const auto& c : corpus::covers()) {
      CAPTURE(c.name);
      const auto k = c.pieces.size();
      std::vector<std::size_t> parent(k);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      };
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (!c.cover.intersection({static_cast<int>(i), static_cast<int>(j)}).empty()) parent[find(i)] = find(j);
      std::size_t comps = 0;
      for (std::size_t i = 0; i < k; ++i) comps += find(i) == i;
      CHECK(cech_cohomology(c.cover, constant_presheaf(c.cover, kZ), 0)[0] ==
            FGAbelianGroup::free(static_cast<int>(comps)));
    }
  }

  TEST_CASE("function presheaf is acyclic with global sections the functions on Y") {
    for (const auto& c : corpus::covers()) {
      CAPTURE(c.name);
      const auto H = cech_cohomology(c.cover, function_presheaf(c.cover, FGAbelianGroup::cyclic(3)), 2);
      CHECK(H[0] == FGAbelianGroup(0, Vector(c.cover.ambient().size(), 3)));
      CHECK(H[1].is_zero());
      CHECK(H[2].is_zero());
    }
  }

  TEST_CASE("refinement invariance") {
    const auto base = corpus::make_cover({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const auto refined = corpus::make_cover({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1}});
    CHECK(cech_cohomology(base, constant_presheaf(base, kZ)) ==
          cech_cohomology(refined, constant_presheaf(refined, kZ)));
  }

  TEST_CASE("presheaf checks") {
    const auto c = corpus::make_cover({"a", "b"}, {{0, 1}, {1}});
    auto F = constant_presheaf(c, kZ);
    auto values = F.values();
    auto res = F.restrictions();
    res.at({{0}, {0, 1}}) = AbHom(kZ, kZ, Matrix::from_rows({{2}}, 1));
    res.emplace(std::make_pair(CoverKey{}, CoverKey{0, 1}), AbHom::identity(kZ));
    CHECK_THROWS_AS(Presheaf(values, res), InvariantViolation);

    auto res2 = F.restrictions();
    res2.emplace(std::make_pair(CoverKey{0}, CoverKey{0}), AbHom(kZ, kZ, Matrix::from_rows({{-1}}, 1)));
    CHECK_THROWS_AS(Presheaf(values, res2), InvariantViolation);

    std::map<CoverKey, FGAbelianGroup> partial{{{0}, kZ}};
    Presheaf P(partial, {});
    CHECK_THROWS_AS(cech_complex(c, P, 1), InvalidArgument);
  }
}
