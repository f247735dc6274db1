#pragma once
// Cross-validation sweeps over whole polygon sizes: the three expansion
// routes against each other, path/matching counts, censuses, denominators,
// the notching symmetry, and positivity.  Shared by the command-line
// `verify` subcommand and the acceptance suite.

#include <atomic>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pgon/atomic.hpp"
#include "pgon/cluster.hpp"
#include "pgon/parallel.hpp"
#include "pgon/snake.hpp"
#include "pgon/tpath.hpp"

namespace pgon {

struct SweepReport {
  bool ok = true;
  long long checks = 0;
  std::vector<std::string> lines;     // human-readable summary
  std::vector<std::string> failures;  // witnesses

  void note(const std::string& line) { lines.push_back(line); }
  void fail(const std::string& what) {
    ok = false;
    failures.push_back(what);
  }
  void merge(const SweepReport& o) {
    ok = ok && o.ok;
    checks += o.checks;
    lines.insert(lines.end(), o.lines.begin(), o.lines.end());
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
};

/// Census: n^2 tagged arcs; flip reachability count equals the mutation
/// class count.
inline SweepReport census_sweep(int n) {
  SweepReport rep;
  Surface s(n);
  size_t arcs = enumerate_tagged_arcs(s).size();
  rep.checks++;
  if ((int)arcs != n * n)
    rep.fail("arc census: " + std::to_string(arcs) + " != n^2");
  auto flips = enumerate_tagged_triangulations(s);
  std::vector<TaggedArc> wheel;
  for (int i = 0; i < n; ++i) wheel.push_back(TaggedArc::radius_plain(s, i));
  auto seeds = enumerate_seeds(TaggedTriangulation(s, wheel));
  rep.checks += 2;
  if (flips.size() != seeds.seeds.size())
    rep.fail("triangulation/seed counts differ: " + std::to_string(flips.size()) + " vs " +
             std::to_string(seeds.seeds.size()));
  std::set<ArcId> vars;
  for (auto& seed : seeds.seeds)
    for (auto& a : seed.cluster.arcs()) vars.insert(tagged_id(s, a));
  rep.checks++;
  if ((int)vars.size() != n * n)
    rep.fail("variable census: " + std::to_string(vars.size()) + " != n^2");
  std::ostringstream os;
  os << "n=" << n << ": " << arcs << " tagged arcs, " << flips.size()
     << " triangulations by flips, " << seeds.seeds.size() << " seeds by mutation, "
     << vars.size() << " cluster variables";
  rep.note(os.str());
  return rep;
}

/// Three-way oracle: for every tagged triangulation T and tagged arc gamma,
/// the path expansion, the matching expansion, and the mutation expansion
/// agree, with strictly positive coefficients.
inline SweepReport oracle_sweep(int n, int threads = 1) {
  SweepReport rep;
  Surface s(n);
  auto all = enumerate_tagged_triangulations(s);
  auto arcs = enumerate_tagged_arcs(s);
  std::vector<SweepReport> slots(all.size());
  parallel_for((long long)all.size(), threads, [&](long long ti) {
    const TaggedTriangulation& t = all[ti];
    SweepReport& r = slots[ti];
    SeedEnumeration en = enumerate_seeds(t);
    auto by_mutation = all_variable_expansions(en, s);
    for (auto& gamma : arcs) {
      LaurentPoly via_paths = expand_tagged(t, gamma);
      LaurentPoly via_mutation = by_mutation.at(tagged_id(s, gamma));
      r.checks++;
      if (via_paths != via_mutation) {
        r.fail("path/mutation mismatch at T=" + to_string(t) + " gamma=" + to_string(gamma));
        continue;
      }
      if (!via_paths.all_coefficients_positive())
        r.fail("non-positive coefficient at T=" + to_string(t) + " gamma=" + to_string(gamma));
      LaurentPoly via_match = expand_tagged_via_matchings(t, gamma);
      r.checks++;
      if (via_paths != via_match)
        r.fail("path/matching mismatch at T=" + to_string(t) + " gamma=" + to_string(gamma));
    }
  });
  for (auto& r : slots) rep.merge(r);
  std::ostringstream os;
  os << "n=" << n << ": " << all.size() << " clusters x " << arcs.size() << " arcs, "
     << rep.checks << " expansion comparisons";
  rep.note(os.str());
  return rep;
}

/// |paths| == |matchings| == number of expansion terms with multiplicity,
/// plus the transfer-product count, for every ideal triangulation and every
/// ordinary arc outside it.
inline SweepReport bijection_sweep(int n, int threads = 1) {
  SweepReport rep;
  Surface s(n);
  auto all = enumerate_tagged_triangulations(s);
  std::vector<const TaggedTriangulation*> ideal_shapes;
  for (auto& t : all)
    if (t.shape() != TaggedTriangulation::Shape::AllNotched) ideal_shapes.push_back(&t);
  std::vector<SweepReport> slots(ideal_shapes.size());
  parallel_for((long long)ideal_shapes.size(), threads, [&](long long ti) {
    SweepReport& r = slots[ti];
    IdealTriangulation ideal = ideal_from_tagged(*ideal_shapes[ti]);
    for (ArcId id = 0; id < s.n * s.n; ++id) {
      OrdinaryArc gamma = ordinary_from_id(s, id);
      if (ideal.contains(gamma)) continue;
      LiftedPolygon poly = lifted_polygon(ideal, gamma);
      auto paths = enumerate_lifted_paths(poly);
      SnakeGraph g = build_snake(poly);
      auto matchings = enumerate_matchings(g);
      long long transfer = transfer_matching_count(g);
      r.checks++;
      if (paths.size() != matchings.size() || (long long)matchings.size() != transfer) {
        r.fail("count mismatch at T=" + to_string(*ideal_shapes[ti]) +
               " gamma=" + to_string(gamma) + ": paths " + std::to_string(paths.size()) +
               ", matchings " + std::to_string(matchings.size()) + ", transfer " +
               std::to_string(transfer));
        continue;
      }
      // The bijection itself: matchings map to exactly the path set, and
      // weights match the path numerators.
      VarTableRef ord = ordinary_table(ideal);
      std::set<std::vector<int>> path_keys;
      for (auto& p : paths) path_keys.insert(p.edge_ids);
      for (auto& m : matchings) {
        LiftedPath p = matching_to_path(g, m);
        r.checks++;
        if (!path_keys.count(p.edge_ids)) {
          r.fail("matching image is not a path at gamma=" + to_string(gamma));
          continue;
        }
        PerfectMatching back = path_to_matching(g, p);
        if (back.edge_ids != m.edge_ids) r.fail("matching round-trip failed");
        Monomial w = matching_weight(g, m, s, ord);
        Monomial num = path_numerator(project_path(p), s, ord);
        if (w.exps != num.exps) r.fail("weight differs from path numerator");
      }
    }
  });
  for (auto& r : slots) rep.merge(r);
  std::ostringstream os;
  os << "n=" << n << ": " << ideal_shapes.size() << " ideal triangulations, " << rep.checks
     << " bijection checks";
  rep.note(os.str());
  return rep;
}

/// Unreduced denominators: the crossing sequence of every (T, gamma) pair
/// reproduces the pairwise crossing numbers.
inline SweepReport denominator_sweep(int n) {
  SweepReport rep;
  Surface s(n);
  auto all = enumerate_tagged_triangulations(s);
  for (auto& t : all) {
    if (t.shape() == TaggedTriangulation::Shape::AllNotched) continue;
    IdealTriangulation ideal = ideal_from_tagged(t);
    VarTableRef ord = ordinary_table(ideal);
    for (ArcId id = 0; id < s.n * s.n; ++id) {
      OrdinaryArc gamma = ordinary_from_id(s, id);
      if (ideal.contains(gamma)) continue;
      CrossingSequence cs = crossing_sequence(ideal, gamma);
      Monomial cross = crossing_monomial(cs, ord);
      rep.checks++;
      for (int k = 0; k < ord->size(); ++k) {
        int expected = crossing_number(s, gamma, ordinary_from_id(s, ord->keys[k]));
        if (cross.exps[k] != expected) {
          rep.fail("denominator exponent mismatch at T=" + to_string(t) +
                   " gamma=" + to_string(gamma));
          break;
        }
      }
      // Every path monomial's formal denominator is the crossing monomial.
      for (auto& p : enumerate_tpaths(lifted_polygon(cs))) {
        Exponents den(ord->size(), 0);
        for (size_t j = 1; j < p.steps.size(); j += 2) {
          int idx = ord->index_of(ordinary_id(s, p.steps[j].arc));
          den[idx] += 1;
        }
        rep.checks++;
        if (den != cross.exps) {
          rep.fail("path denominator differs from crossing monomial at gamma=" +
                   to_string(gamma));
          break;
        }
      }
    }
  }
  std::ostringstream os;
  os << "n=" << n << ": " << rep.checks << " denominator checks";
  rep.note(os.str());
  return rep;
}

/// Notching symmetry: expanding gamma-notched in T-notched equals the
/// variable swap of expanding gamma in T.
inline SweepReport notching_sweep(int n) {
  SweepReport rep;
  Surface s(n);
  auto all = enumerate_tagged_triangulations(s);
  auto arcs = enumerate_tagged_arcs(s);
  for (auto& t : all) {
    TaggedTriangulation tn = t.notched_companion();
    for (auto& gamma : arcs) {
      LaurentPoly lhs = expand_tagged(tn, notch_at_puncture(s, gamma));
      LaurentPoly rhs = rename_keys(expand_tagged(t, gamma), [&](ArcId id) {
        return tagged_id(s, notch_at_puncture(s, tagged_from_id(s, id)));
      });
      rep.checks++;
      if (lhs != rhs)
        rep.fail("notching symmetry broken at T=" + to_string(t) + " gamma=" + to_string(gamma));
    }
  }
  std::ostringstream os;
  os << "n=" << n << ": " << rep.checks << " notching comparisons";
  rep.note(os.str());
  return rep;
}

/// Proper-Laurent property: every multiset of compatible tagged arcs (up to
/// the multiplicity bound) that is not contained in T expands into proper
/// Laurent monomials, and the selected grading certifies the sigma factor.
inline SweepReport proper_laurent_sweep(int n, int max_mult = 2, int threads = 1) {
  SweepReport rep;
  Surface s(n);
  auto all = enumerate_tagged_triangulations(s);
  auto arcs = enumerate_tagged_arcs(s);

  // All pairwise-compatible multisets with total multiplicity <= max_mult.
  std::vector<std::vector<TaggedArc>> sigmas;
  std::vector<std::vector<TaggedArc>> frontier{{}};
  for (int depth = 0; depth < max_mult; ++depth) {
    std::vector<std::vector<TaggedArc>> next;
    for (auto& base : frontier) {
      ArcId start = base.empty() ? 0 : tagged_id(s, base.back());
      for (ArcId id = start; id < s.n * s.n; ++id) {
        TaggedArc cand = tagged_from_id(s, id);
        bool ok = true;
        for (auto& b : base) ok = ok && are_compatible(s, b, cand);
        if (!ok) continue;
        auto ext = base;
        ext.push_back(cand);
        sigmas.push_back(ext);
        next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }

  std::vector<SweepReport> slots(all.size());
  parallel_for((long long)all.size(), threads, [&](long long ti) {
    const TaggedTriangulation& t = all[ti];
    SweepReport& r = slots[ti];
    ExpansionCache cache;
    for (auto& sig : sigmas) {
      bool compatible = true;
      for (auto& a : sig) compatible = compatible && t.contains(a);
      if (compatible) continue;
      MultiTaggedCollection coll{sig};
      // Expansion of the product, term-by-term properness.
      LaurentPoly p = LaurentPoly::constant(tagged_table(t), 1);
      for (auto& a : sig) p = p * cache.get(t, a);
      r.checks++;
      if (!p.all_terms_proper()) {
        r.fail("non-proper term for T=" + to_string(t));
        continue;
      }
      // The selection rule must yield gradings certifying the sigma factor.
      SigmaChoice choice = select_sigma(coll, t);
      const LaurentPoly& xs = cache.get(t, choice.sigma);
      std::vector<std::vector<int>> idx;
      for (auto& g : choice.gradings) idx.push_back(g.indices(xs.table(), s));
      for (auto& [e, c] : xs.terms()) {
        bool negative_somewhere = false;
        for (auto& g : idx) negative_somewhere = negative_somewhere || degree_wrt(e, g) < 0;
        if (!negative_somewhere) {
          r.fail("selected grading not negative for sigma=" + to_string(choice.sigma) +
                 " rule=" + choice.rule + " T=" + to_string(t));
          break;
        }
      }
    }
  });
  for (auto& r : slots) rep.merge(r);
  std::ostringstream os;
  os << "n=" << n << ": " << sigmas.size() << " multisets x " << all.size() << " clusters, "
     << rep.checks << " incompatible expansions checked";
  rep.note(os.str());
  return rep;
}

/// Random nonnegative combinations of cluster monomials are recovered
/// exactly, and a planted negative coefficient is flagged.
inline SweepReport decomposition_sweep(int n, int rounds = 200, unsigned seed = 20250810) {
  SweepReport rep;
  Surface s(n);
  auto all = enumerate_tagged_triangulations(s);
  std::vector<TaggedArc> wheel;
  for (int i = 0; i < n; ++i) wheel.push_back(TaggedArc::radius_plain(s, i));
  TaggedTriangulation t0(s, wheel);
  ExpansionCache cache;
  std::mt19937_64 rng(seed);

  auto random_monomial = [&](int max_degree) {
    std::uniform_int_distribution<int> pick_t(0, (int)all.size() - 1);
    const TaggedTriangulation& t = all[pick_t(rng)];
    std::uniform_int_distribution<int> pick_deg(1, max_degree);
    int deg = pick_deg(rng);
    std::map<ArcId, int> mult;
    std::uniform_int_distribution<int> pick_arc(0, s.n - 1);
    for (int x = 0; x < deg; ++x) mult[tagged_id(s, t.arcs()[pick_arc(rng)])]++;
    std::vector<std::pair<TaggedArc, int>> mono;
    for (auto& [id, m] : mult) mono.emplace_back(tagged_from_id(s, id), m);
    return mono;
  };
  auto monomial_value = [&](const std::vector<std::pair<TaggedArc, int>>& mono) {
    LaurentPoly v = LaurentPoly::constant(tagged_table(t0), 1);
    for (auto& [a, m] : mono) v = v * cache.get(t0, a).pow(m);
    return v;
  };
  auto key_of = [&](const std::vector<std::pair<TaggedArc, int>>& mono) {
    std::vector<ArcId> key;
    for (auto& [a, m] : mono)
      for (int c = 0; c < m; ++c) key.push_back(tagged_id(s, a));
    std::sort(key.begin(), key.end());
    return key;
  };

  std::uniform_int_distribution<int> pick_count(1, 3), pick_coeff(1, 5);
  for (int round = 0; round < rounds; ++round) {
    std::map<std::vector<ArcId>, std::pair<std::vector<std::pair<TaggedArc, int>>, BigInt>> want;
    int m = pick_count(rng);
    for (int x = 0; x < m; ++x) {
      auto mono = random_monomial(2);
      auto key = key_of(mono);
      auto it = want.find(key);
      if (it == want.end())
        want.emplace(key, std::make_pair(mono, BigInt(pick_coeff(rng))));
      else
        it->second.second += pick_coeff(rng);
    }
    LaurentPoly y = LaurentPoly::zero(tagged_table(t0));
    for (auto& [key, mc] : want) y = y + monomial_value(mc.first) * mc.second;
    Decomposition dec = decompose_positive(y, t0, 2, all, &cache);
    rep.checks++;
    bool good = dec.residual_zero && !dec.has_negative && dec.terms.size() == want.size();
    if (good)
      for (auto& term : dec.terms) {
        auto it = want.find(key_of(term.monomial));
        good = good && it != want.end() && it->second.second == term.coefficient;
      }
    if (!good) rep.fail("round " + std::to_string(round) + ": decomposition not recovered");
  }

  // One planted negative combination must be flagged as not positive.
  auto mono_a = random_monomial(2);
  auto mono_b = random_monomial(2);
  while (key_of(mono_b) == key_of(mono_a)) mono_b = random_monomial(2);
  LaurentPoly y = monomial_value(mono_a) * BigInt(2) - monomial_value(mono_b);
  Decomposition dec = decompose_positive(y, t0, 2, all, &cache);
  rep.checks++;
  if (!dec.has_negative || !dec.residual_zero)
    rep.fail("planted negative coefficient was not flagged");
  std::ostringstream os;
  os << "n=" << n << ": " << rounds << " random decompositions + 1 planted negative";
  rep.note(os.str());
  return rep;
}

/// Flip/mutation commutation: the exchange matrix of every flip agrees with
/// the matrix mutation, for every arc of every triangulation.
inline SweepReport commutation_sweep(int n) {
  SweepReport rep;
  Surface s(n);
  auto all = enumerate_tagged_triangulations(s);
  for (auto& t : all) {
    ExchangeMatrix m = b_matrix(t);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(m.b[i][j]) > 2) rep.fail("entry out of range at T=" + to_string(t));
    for (int k = 0; k < n; ++k) {
      TaggedTriangulation f = flip(t, k);
      ExchangeMatrix mut = mutate(m, k);
      // Align indices: arc x of t sits at some position in f; the flipped
      // slot takes the new arc's position.
      std::vector<int> to_new(n, -1);
      for (int x = 0; x < n; ++x) {
        if (x == k) continue;
        to_new[x] = f.index_of(t.arcs()[x]);
      }
      for (int y = 0; y < n; ++y)
        if (!t.contains(f.arcs()[y])) to_new[k] = y;
      rep.checks++;
      if (!(mut.permuted(to_new) == b_matrix(f)))
        rep.fail("flip/mutation commutation fails at T=" + to_string(t) + " k=" +
                 std::to_string(k));
    }
  }
  std::ostringstream os;
  os << "n=" << n << ": " << rep.checks << " flip/mutation commutations";
  rep.note(os.str());
  return rep;
}

}  // namespace pgon
