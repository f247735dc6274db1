#include <catch2/catch_amalgamated.hpp>

#include "pgon/cluster.hpp"
#include "pgon/snake.hpp"
#include "support/fixtures.hpp"

using namespace pgon;

namespace {

TaggedTriangulation wheel(const Surface& s) {
  std::vector<TaggedArc> arcs;
  for (int i = 0; i < s.n; ++i) arcs.push_back(TaggedArc::radius_plain(s, i));
  return TaggedTriangulation(s, arcs);
}

}  // namespace

TEST_CASE("exchange matrices from triangulations") {
  Surface s(4);

  SECTION("skew-symmetric with small entries for every cluster at n=4") {
    for (auto& t : enumerate_tagged_triangulations(s)) {
      ExchangeMatrix m = b_matrix(t);
      CHECK(m.is_skew_symmetric());
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(m.b[i][j]) <= 2);
    }
  }

  SECTION("parallel radii couple identically to the rest") {
    TaggedTriangulation t(s, {TaggedArc::radius_plain(s, 0), TaggedArc::radius_notched(s, 0),
                              TaggedArc::peripheral(s, 0, 2), TaggedArc::peripheral(s, 2, 0)});
    ExchangeMatrix m = b_matrix(t);
    int plain = t.index_of(TaggedArc::radius_plain(s, 0));
    int notched = t.index_of(TaggedArc::radius_notched(s, 0));
    for (int j = 0; j < 4; ++j) {
      if (j == plain || j == notched) continue;
      CHECK(m.b[plain][j] == m.b[notched][j]);
      CHECK(m.b[j][plain] == m.b[j][notched]);
    }
    CHECK(m.b[plain][notched] == 0);
  }

  SECTION("flip commutes with matrix mutation") {
    for (auto& t : enumerate_tagged_triangulations(s)) {
      ExchangeMatrix m = b_matrix(t);
      for (int k = 0; k < 4; ++k) {
        TaggedTriangulation f = flip(t, k);
        std::vector<int> to_new(4, -1);
        for (int x = 0; x < 4; ++x)
          if (x != k) to_new[x] = f.index_of(t.arcs()[x]);
        for (int y = 0; y < 4; ++y)
          if (!t.contains(f.arcs()[y])) to_new[k] = y;
        CHECK(mutate(m, k).permuted(to_new) == b_matrix(f));
      }
    }
  }
}

TEST_CASE("seed mutation") {
  Surface s(4);
  Seed w = initial_seed(wheel(s));

  SECTION("mutation is an involution") {
    for (int k = 0; k < 4; ++k) {
      Seed m = mutate(w, k);
      CHECK_FALSE(m.cluster == w.cluster);
      int back = -1;
      for (int x = 0; x < 4; ++x)
        if (!w.cluster.contains(m.cluster.arcs()[x])) back = x;
      Seed mm = mutate(m, back);
      CHECK(mm.cluster == w.cluster);
      CHECK(mm.b == w.b);
      CHECK(mm.expansions == w.expansions);
    }
  }

  SECTION("the new cluster is the flip") {
    for (int k = 0; k < 4; ++k) CHECK(mutate(w, k).cluster == flip(w.cluster, k));
  }

  SECTION("the new variable matches the path expansion") {
    for (int k = 0; k < 4; ++k) {
      Seed m = mutate(w, k);
      for (int x = 0; x < 4; ++x) {
        const TaggedArc& a = m.cluster.arcs()[x];
        if (w.cluster.contains(a)) continue;
        CHECK(m.expansions[x] == expand_tagged(w.cluster, a));
      }
    }
  }
}

TEST_CASE("seed enumeration agrees with the flip census") {
  Surface s4(4);
  SeedEnumeration en4 = enumerate_seeds(wheel(s4));
  CHECK(en4.seeds.size() == 50);
  CHECK(all_variable_expansions(en4, s4).size() == 16);
  for (auto& seed : en4.seeds) CHECK(seed.cluster.arcs().size() == 4);

  Surface s5(5);
  SeedEnumeration en5 = enumerate_seeds(wheel(s5));
  CHECK(en5.seeds.size() == 182);
  CHECK(all_variable_expansions(en5, s5).size() == 25);
  // exchange graph is n-regular
  CHECK(en4.edges.size() == 50 * 4 / 2);
  CHECK(en5.edges.size() == 182 * 5 / 2);

  CHECK_THROWS_AS(enumerate_seeds(wheel(Surface(7)), 6), std::invalid_argument);
}

TEST_CASE("mutation expansion equals the path expansion") {
  Surface s(4);
  auto f = fixtures::fig3();
  TaggedTriangulation t0 = tagged_from_ideal(fixtures::ideal_of(f));

  SECTION("arcs of the initial cluster are variables") {
    for (auto& a : t0.arcs())
      CHECK(expand_by_mutation(t0, a) == expand_tagged(t0, a));
  }

  SECTION("the bundled example reproduces its polynomial") {
    TaggedArc gamma = iota(s, fixtures::gamma_of(f));
    LaurentPoly by_mutation = expand_by_mutation(t0, gamma);
    CHECK(by_mutation == expand_tagged(t0, gamma));
    std::vector<std::string> names{"x3", "x4", "x1", "x2"};
    CHECK(by_mutation == parse_laurent("(x2^2*x4 + 2*x2*x4 + x4 + x1*x3) / (x1*x2*x3)", names,
                                       by_mutation.table()));
  }

  SECTION("every variable in the wheel cluster, three ways") {
    TaggedTriangulation w = wheel(s);
    SeedEnumeration en = enumerate_seeds(w);
    auto vars = all_variable_expansions(en, s);
    for (auto& [id, p] : vars) {
      TaggedArc gamma = tagged_from_id(s, id);
      CHECK(p == expand_tagged(w, gamma));
      CHECK(p == expand_tagged_via_matchings(w, gamma));
      CHECK(p.all_coefficients_positive());
    }
  }
}

TEST_CASE("cluster monomial expansion") {
  Surface s(4);
  TaggedTriangulation w = wheel(s);
  TaggedArc gamma = TaggedArc::peripheral(s, 0, 2);

  SECTION("singleton") {
    auto sigma = MultiTaggedCollection::of(s, {gamma});
    CHECK(cluster_monomial_expand(w, sigma) == expand_tagged(w, gamma));
  }

  SECTION("subsets of the cluster stay monomial") {
    auto sigma = MultiTaggedCollection::of(s, {w.arcs()[0], w.arcs()[0], w.arcs()[2]});
    LaurentPoly p = cluster_monomial_expand(w, sigma);
    REQUIRE(p.is_monomial());
    Monomial m = p.single_term();
    CHECK(m.coeff == 1);
    CHECK(m.exps == Exponents{2, 0, 1, 0});
  }

  SECTION("repetition squares the expansion") {
    auto sigma = MultiTaggedCollection::of(s, {gamma, gamma});
    LaurentPoly once = expand_tagged(w, gamma);
    CHECK(cluster_monomial_expand(w, sigma) == once * once);
  }

  SECTION("incompatible multisets are rejected") {
    CHECK_THROWS_AS(
        MultiTaggedCollection::of(s, {gamma, TaggedArc::peripheral(s, 1, 3)}),
        std::invalid_argument);
  }
}
