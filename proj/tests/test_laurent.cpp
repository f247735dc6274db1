#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "pgon/laurent.hpp"

using namespace pgon;

namespace {

VarTableRef table4() { return VarTable::of({0, 1, 2, 3}); }

LaurentPoly var(const VarTableRef& t, int k) { return LaurentPoly::variable(t, k); }

LaurentPoly random_sparse(const VarTableRef& t, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 5), exp(-3, 3), coeff(-9, 9);
  LaurentPoly p = LaurentPoly::zero(t);
  for (int x = 0, n = nterms(rng); x < n; ++x) {
    Exponents e(t->size());
    for (auto& v : e) v = exp(rng);
    p.add_term(e, coeff(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("ring operations") {
  auto t = table4();
  LaurentPoly x1 = var(t, 0), x2 = var(t, 1);
  CHECK((x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2);
  LaurentPoly p = x1 * x2 + x2;
  CHECK(p + LaurentPoly::zero(t) == p);
  CHECK((p - p).is_zero());

  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    LaurentPoly a = random_sparse(t, rng), b = random_sparse(t, rng);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("mixed universes are rejected") {
  auto a = LaurentPoly::constant(table4(), 1);
  auto b = LaurentPoly::constant(VarTable::of({0, 1}), 1);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("proper Laurent monomials and degrees") {
  CHECK(is_proper_laurent_monomial(Exponents{2, -1, 0, 0}));
  CHECK_FALSE(is_proper_laurent_monomial(Exponents{1, 1, 0, 0}));
  CHECK_FALSE(is_proper_laurent_monomial(Exponents{0, 0, 0, 0}));  // a constant

  Exponents m{2, -1, 1, 0};
  CHECK(degree_wrt(m, {0, 1}) == 1);
  CHECK(degree_wrt(m, {}) == 0);
  CHECK(degree_wrt(m, {1}) == -1);
}

TEST_CASE("substitution") {
  auto t = table4();
  // x0 -> x1*x2 (a monomial image may hit negative exponents)
  LaurentPoly p = LaurentPoly::monomial(t, {-1, 0, 0, 1}, 1) +
                  LaurentPoly::monomial(t, {2, 0, 0, 0}, 3);
  auto image = [&](int k) {
    if (k == 0) return LaurentPoly::monomial(t, {0, 1, 1, 0}, 1);
    return var(t, k);
  };
  LaurentPoly q = substitute(p, image, t);
  CHECK(q == LaurentPoly::monomial(t, {0, -1, -1, 1}, 1) +
                 LaurentPoly::monomial(t, {0, 2, 2, 0}, 3));

  SECTION("identity map") {
    auto id = [&](int k) { return var(t, k); };
    std::mt19937_64 rng(11);
    for (int round = 0; round < 20; ++round) {
      LaurentPoly a = random_sparse(t, rng);
      CHECK(substitute(a, id, t) == a);
    }
  }

  SECTION("non-monomial image at a negative exponent fails") {
    auto bad = [&](int k) { return k == 0 ? var(t, 1) + var(t, 2) : var(t, k); };
    CHECK_THROWS_AS(substitute(LaurentPoly::monomial(t, {-1, 0, 0, 0}, 1), bad, t),
                    std::invalid_argument);
  }
}

TEST_CASE("exact division") {
  auto t = table4();
  std::mt19937_64 rng(13);
  for (int round = 0; round < 100; ++round) {
    LaurentPoly a = random_sparse(t, rng), b = random_sparse(t, rng);
    if (b.is_zero()) continue;
    CHECK(divide_exact(a * b, b) == a);
  }
  LaurentPoly x1 = var(t, 0), x2 = var(t, 1);
  CHECK_THROWS_AS(divide_exact(x1 + x2, x1 - x2), std::domain_error);
  CHECK_THROWS_AS(divide_exact(x1, LaurentPoly::zero(t)), std::invalid_argument);
}

TEST_CASE("canonical text form") {
  auto t = table4();
  auto name = xk_namer();
  // (x2^2 x4 + 2 x2 x4 + x4 + x1 x3) / (x1 x2 x3)
  LaurentPoly p = LaurentPoly::monomial(t, {-1, 1, -1, 1}, 1) +
                  LaurentPoly::monomial(t, {-1, 0, -1, 1}, 2) +
                  LaurentPoly::monomial(t, {-1, -1, -1, 1}, 1) +
                  LaurentPoly::monomial(t, {0, -1, 0, 0}, 1);
  std::string text = to_text(p, name);
  CHECK(text.find(" / (x1*x2*x3)") != std::string::npos);
  CHECK(text.find("2*x2*x4") != std::string::npos);

  SECTION("serialize/parse round trip") {
    std::vector<std::string> names{"x1", "x2", "x3", "x4"};
    std::mt19937_64 rng(17);
    for (int round = 0; round < 50; ++round) {
      LaurentPoly a = random_sparse(t, rng);
      if (a.is_zero()) continue;
      CHECK(parse_laurent(to_text(a, name), names, t) == a);
    }
    CHECK(parse_laurent("(x2^2*x4 + 2*x2*x4 + x4 + x1*x3) / (x1*x2*x3)", names, t) == p);
  }
}

TEST_CASE("key renaming") {
  auto t = VarTable::of({0, 1, 4});
  LaurentPoly p = LaurentPoly::monomial(t, {1, -2, 3}, 5);
  // swap keys 0 <-> 4
  LaurentPoly q = rename_keys(p, [](ArcId id) { return id == 0 ? 4 : id == 4 ? 0 : id; });
  CHECK(q.table()->keys == std::vector<ArcId>{0, 1, 4});
  CHECK(q == LaurentPoly::monomial(q.table(), {3, -2, 1}, 5));
}
