#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "pgon/tpath.hpp"
#include "support/fixtures.hpp"

using namespace pgon;
using fixtures::short_labels;

namespace {

std::multiset<std::string> path_label_set(const fixtures::Fixture& f) {
  IdealTriangulation t = fixtures::ideal_of(f);
  LiftedPolygon poly = lifted_polygon(t, fixtures::gamma_of(f));
  std::multiset<std::string> out;
  for (auto& p : enumerate_tpaths(poly)) out.insert(short_labels(f, p));
  return out;
}

}  // namespace

TEST_CASE("five paths of the plain configuration") {
  auto got = path_label_set(fixtures::fig3());
  std::multiset<std::string> want{
      "b1,1,2,2,4,3,b3", "b1,1,2,2,2,3,4", "b4,1,b2,2,2,3,4",
      "b4,1,b2,2,4,3,b3", "b4,1,1,2,3,3,b3",
  };
  CHECK(got == want);
}

TEST_CASE("nine paths of the self-folded configuration") {
  auto f = fixtures::fig9a();
  IdealTriangulation t = fixtures::ideal_of(f);
  LiftedPolygon poly = lifted_polygon(t, fixtures::gamma_of(f));
  auto paths = enumerate_tpaths(poly);
  REQUIRE(paths.size() == 9);

  std::multiset<std::string> got, want{
      "b4,1,b2,2,b3,l,r,r,l,l,b3", "b4,1,1,2,l,l,r,r,l,l,b3",
      "b1,1,2,2,2,l,l,r,r,l,2",    "b1,1,2,2,b3,l,r,r,l,l,b3",
      "b4,1,b2,2,2,l,l,r,r,l,2",   "b4,1,b2,2,2,l,l,r,r,l,b3",
      "b4,1,b2,2,2,l,r,r,l,l,b3",  "b1,1,2,2,2,l,l,r,r,l,b3",
      "b1,1,2,2,2,l,r,r,l,l,b3",
  };
  for (auto& p : paths) got.insert(short_labels(f, p));
  CHECK(got == want);

  SECTION("exactly four paths carry a counterclockwise non-backtrack") {
    int nonbt = 0;
    std::set<std::string> nonbt_labels;
    for (auto& p : paths) {
      bool has = false;
      for (auto c : p.pair_classes) {
        CHECK(c != CycleClass::NonBacktrackCW);
        has = has || c == CycleClass::NonBacktrackCCW;
      }
      nonbt += has;
      if (has) nonbt_labels.insert(short_labels(f, p));
    }
    CHECK(nonbt == 4);
    CHECK(nonbt_labels == std::set<std::string>{
                              "b4,1,b2,2,2,l,l,r,r,l,b3",
                              "b4,1,b2,2,2,l,r,r,l,l,b3",
                              "b1,1,2,2,2,l,l,r,r,l,b3",
                              "b1,1,2,2,2,l,r,r,l,l,b3",
                          });
  }

  SECTION("non-backtracks sit on the self-folded radius and nothing else") {
    for (auto& p : paths)
      for (size_t j = 0; j + 1 < p.steps.size(); ++j) {
        if (p.pair_classes[j] == CycleClass::NonBacktrackCCW)
          CHECK(p.steps[j].label() == "R(3)");
        CHECK(p.pair_classes[j] != CycleClass::QuasiBacktrack);
      }
  }

  SECTION("label sequences are pairwise distinct") {
    CHECK(std::set<std::string>(got.begin(), got.end()).size() == paths.size());
  }

  SECTION("orientation reversal flips the non-backtrack direction") {
    LiftedPolygon rev = lifted_polygon(t, fixtures::gamma_of(f), true);
    auto rpaths = enumerate_tpaths(rev);
    REQUIRE(rpaths.size() == 9);
    int cw = 0;
    for (auto& p : rpaths)
      for (auto c : p.pair_classes) {
        CHECK(c != CycleClass::NonBacktrackCCW);
        cw += c == CycleClass::NonBacktrackCW;
      }
    CHECK(cw == 4);
  }
}

TEST_CASE("quasi-backtracks of the wheel configurations") {
  SECTION("loop around the wheel: four paths, each with a quasi-backtrack") {
    auto f = fixtures::fig10();
    IdealTriangulation t = fixtures::ideal_of(f);
    auto paths = enumerate_tpaths(lifted_polygon(t, fixtures::gamma_of(f)));
    REQUIRE(paths.size() == 4);
    std::multiset<std::string> got, want{
        "b1,1,2,2,3,3,t", "t,1,b2,2,3,3,t", "t,1,1,2,b3,3,t", "t,1,1,2,2,3,b4"};
    for (auto& p : paths) {
      got.insert(short_labels(f, p));
      int quasi = 0;
      for (auto c : p.pair_classes) quasi += c == CycleClass::QuasiBacktrack;
      CHECK(quasi >= 1);
      for (size_t j = 0; j + 1 < p.steps.size(); ++j)
        if (p.pair_classes[j] == CycleClass::QuasiBacktrack)
          CHECK(p.steps[j].arc.kind == OrdKind::Radius);
    }
    CHECK(got == want);
  }

  SECTION("five paths in the three-radius configuration") {
    auto f = fixtures::fig11();
    auto paths =
        enumerate_tpaths(lifted_polygon(fixtures::ideal_of(f), fixtures::gamma_of(f)));
    std::multiset<std::string> got, want{
        "b1,1,2,2,2,3,b4", "0,1,b2,2,2,3,b4", "0,1,1,2,3,3,b3",
        "0,1,b2,2,0,3,b3", "b1,1,2,2,0,3,b3"};
    for (auto& p : paths) got.insert(short_labels(f, p));
    CHECK(got == want);
  }

  SECTION("no quasi-backtrack joins equal puncture approaches") {
    // Backtracks on radii pivot at the puncture lift, quasi-backtracks at
    // the marked point; the two are never confused.
    for (auto& f : {fixtures::fig10(), fixtures::fig11()}) {
      IdealTriangulation t = fixtures::ideal_of(f);
      LiftedPolygon poly = lifted_polygon(t, fixtures::gamma_of(f));
      for (auto& lp : enumerate_lifted_paths(poly)) {
        TPath p = project_path(lp);
        auto vs = walk_vertices(poly, lp.edge_ids);
        for (size_t j = 0; j + 1 < p.steps.size(); ++j) {
          if (p.pair_classes[j] == CycleClass::QuasiBacktrack)
            CHECK_FALSE(poly.vertex_is_apex[vs[j + 1]]);
          if (p.pair_classes[j] == CycleClass::Backtrack &&
              p.steps[j].arc.kind == OrdKind::Radius)
            CHECK(poly.vertex_is_apex[vs[j + 1]]);
        }
      }
    }
  }
}

TEST_CASE("path monomials") {
  Surface s(4);
  auto f = fixtures::fig3();
  IdealTriangulation t = fixtures::ideal_of(f);
  VarTableRef ord = ordinary_table(t);
  LiftedPolygon poly = lifted_polygon(t, fixtures::gamma_of(f));
  auto paths = enumerate_tpaths(poly);

  SECTION("a fully boundary-flanked path inverts only the crossing monomial") {
    for (auto& p : paths) {
      Monomial m = path_monomial(p, s, ord);
      Monomial num = path_numerator(p, s, ord);
      // denominator = crossing arcs, numerator = odd steps
      Exponents den(ord->size(), 0);
      for (size_t j = 1; j < p.steps.size(); j += 2)
        den[ord->index_of(ordinary_id(s, p.steps[j].arc))] += 1;
      for (int k = 0; k < ord->size(); ++k) CHECK(m.exps[k] == num.exps[k] - den[k]);
    }
  }

  SECTION("expansion equals the sum over paths after loop elimination") {
    LaurentPoly x = expand_ordinary(t, fixtures::gamma_of(f));
    BigInt total = 0;
    for (auto& [e, c] : x.terms()) total += c;
    CHECK(total == (long long)paths.size());
  }
}

TEST_CASE("path sets over all configurations at n=4") {
  Surface s(4);
  for (auto& t : enumerate_tagged_triangulations(s)) {
    if (t.shape() == TaggedTriangulation::Shape::AllNotched) continue;
    IdealTriangulation ideal = ideal_from_tagged(t);
    for (ArcId id = 0; id < 16; ++id) {
      OrdinaryArc gamma = ordinary_from_id(s, id);
      if (ideal.contains(gamma)) continue;
      auto paths = enumerate_tpaths(lifted_polygon(ideal, gamma));
      // label sequences determine the path
      std::set<std::string> labels;
      bool self_folded = ideal.has_self_folded();
      for (auto& p : paths) {
        std::string key;
        for (auto& st : p.steps) key += st.label() + ",";
        CHECK(labels.insert(key).second);
        for (size_t j = 0; j + 1 < p.steps.size(); ++j) {
          CycleClass c = p.pair_classes[j];
          // non-backtracks require a self-folded triangle, quasi-backtracks
          // forbid one
          if (c == CycleClass::NonBacktrackCCW || c == CycleClass::NonBacktrackCW)
            CHECK(self_folded);
          if (c == CycleClass::QuasiBacktrack) CHECK_FALSE(self_folded);
          // at most three consecutive equal labels
          if (j + 2 < p.steps.size() && p.steps[j].label() == p.steps[j + 1].label())
            CHECK((p.steps[j + 2].label() != p.steps[j].label() || j + 3 >= p.steps.size() ||
                   p.steps[j + 3].label() != p.steps[j].label()));
        }
      }
    }
  }
}

TEST_CASE("classify_pair matches the stored classes") {
  auto f = fixtures::fig9a();
  IdealTriangulation t = fixtures::ideal_of(f);
  LiftedPolygon poly = lifted_polygon(t, fixtures::gamma_of(f));
  for (auto& p : enumerate_tpaths(poly)) {
    for (int j = 0; j + 1 < (int)p.steps.size(); ++j)
      CHECK(classify_pair(p, j) == p.pair_classes[j]);
    CHECK_THROWS_AS(classify_pair(p, (int)p.steps.size()), std::invalid_argument);
  }
}

TEST_CASE("expansions of the bundled configurations") {
  SECTION("plain configuration") {
    auto f = fixtures::fig3();
    Surface s(f.n);
    LaurentPoly x = expand_ordinary(fixtures::ideal_of(f), fixtures::gamma_of(f));
    // variables in id order: R(2)=x3, R(3)=x4, P(3,1)=x1, P(3,2)=x2
    std::vector<std::string> names{"x3", "x4", "x1", "x2"};
    LaurentPoly want =
        parse_laurent("(x2^2*x4 + 2*x2*x4 + x4 + x1*x3) / (x1*x2*x3)", names, x.table());
    CHECK(x == want);
  }

  SECTION("self-folded configuration") {
    auto f = fixtures::fig9a();
    LaurentPoly x = expand_ordinary(fixtures::ideal_of(f), fixtures::gamma_of(f));
    // id order: R(3)=xr, RN(3)=xn, P(0,2)=x1, P(0,3)=x2
    std::vector<std::string> names{"xr", "xn", "x1", "x2"};
    LaurentPoly want = parse_laurent(
        "(x2^3 + 3*x2^2 + 3*x2 + 1 + x1*xr*xn) / (x1*x2*xr*xn)", names, x.table());
    CHECK(x == want);
    CHECK(expand_ordinary(fixtures::ideal_of(f), fixtures::gamma_of(f), true) == x);
  }

  SECTION("expansion is orientation independent everywhere at n=4") {
    Surface s(4);
    for (auto& f : {fixtures::fig2(), fixtures::fig3(), fixtures::fig10(), fixtures::fig11()}) {
      IdealTriangulation t = fixtures::ideal_of(f);
      for (ArcId id = 0; id < 16; ++id) {
        OrdinaryArc gamma = ordinary_from_id(s, id);
        if (t.contains(gamma)) continue;
        CHECK(expand_ordinary(t, gamma) == expand_ordinary(t, gamma, true));
      }
    }
  }
}

TEST_CASE("expand_tagged dispatch") {
  Surface s(4);
  auto f = fixtures::fig9a();
  IdealTriangulation ideal = fixtures::ideal_of(f);
  TaggedTriangulation t = tagged_from_ideal(ideal);
  VarTableRef table = tagged_table(t);

  SECTION("cluster members are variables") {
    for (auto& a : t.arcs())
      CHECK(expand_tagged(t, a) ==
            LaurentPoly::variable(table, table->index_of(tagged_id(s, a))));
  }

  SECTION("notched radius with its plain partner present divides the loop expansion") {
    // T all plain: wheel
    std::vector<TaggedArc> wheel;
    for (int i = 0; i < 4; ++i) wheel.push_back(TaggedArc::radius_plain(s, i));
    TaggedTriangulation w(s, wheel);
    LaurentPoly loops = expand_ordinary(ideal_from_tagged(w), OrdinaryArc::loop(s, 2));
    LaurentPoly notched = expand_tagged(w, TaggedArc::radius_notched(s, 2));
    VarTableRef wt = tagged_table(w);
    LaurentPoly plain = LaurentPoly::variable(wt, wt->index_of(tagged_id(s, TaggedArc::radius_plain(s, 2))));
    CHECK(notched * plain == loops);
  }

  SECTION("loop variable identity: x(loop) = x(plain) * x(notched)") {
    for (ArcId id = 0; id < 16; ++id) {
      TaggedArc gamma = tagged_from_id(s, id);
      if (t.contains(gamma) || gamma.kind != TagKind::RadiusNotched) continue;
      LaurentPoly loops = expand_ordinary(ideal, OrdinaryArc::loop(s, gamma.i));
      LaurentPoly plain = expand_tagged(t, TaggedArc::radius_plain(s, gamma.i));
      CHECK(expand_tagged(t, gamma) * plain == loops);
    }
  }
}
