// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fuglede/fuglede.hpp"
#include "oracles.hpp"

using namespace fuglede;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

int failures = 0;

void run(int n, const std::string& title, double limit_s, const std::function<std::string(Check&)>& body) {
  Check c;
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    detail = body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > limit_s) c.expect(false, "over time limit");
  if (!c.ok) ++failures;
  std::printf("%s criterion %d: %s [%.2fs / %.0fs]%s%s%s\n", c.ok ? "PASS" : "FAIL", n, title.c_str(), dt, limit_s,
              detail.empty() ? "" : " ", detail.c_str(), c.ok ? "" : (" -- " + c.why.str()).c_str());
  std::fflush(stdout);
}

std::vector<oracle::Coords> coords(const Multiset& m) {
  std::vector<oracle::Coords> out;
  for (const auto& [x, c] : m) out.push_back(m.group().element_at(x).coords);
  return out;
}

/// Random multiset: half plain noise, half a few translated copies of a random subgroup.
Multiset random_multiset(const Group& g, std::mt19937_64& rng, bool sets_only) {
  const auto& t = tables_for(g);
  std::vector<Count> dense(t.size(), 0);
  if (rng() % 2) {
    for (auto& c : dense) c = static_cast<Count>(rng() % (sets_only ? 2 : 3));
  } else {
    const auto& h = t.subgroups()[rng() % t.subgroups().size()];
    const int copies = sets_only ? 1 : 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < copies; ++k) {
      const auto shift = static_cast<Index>(rng() % t.size());
      for (auto m : h.indices()) ++dense[static_cast<std::size_t>(g.add(m, shift))];
    }
    if (sets_only && rng() % 2) {
      const auto shift = static_cast<Index>(rng() % t.size());
      for (auto m : h.indices()) dense[static_cast<std::size_t>(g.add(m, shift))] = 1;
    }
  }
  if (std::all_of(dense.begin(), dense.end(), [](Count c) { return c == 0; })) dense[0] = 1;
  return Multiset::from_dense(g, dense);
}

Multiset random_set(const Group& g, std::size_t k, std::mt19937_64& rng) {
  std::vector<Index> pool(static_cast<std::size_t>(g.order()));
  std::iota(pool.begin(), pool.end(), 0);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(k);
  return Multiset::from_indices(g, pool);
}

std::string tags(const std::map<std::string, std::int64_t>& m) {
  std::string s;
  for (const auto& [k, v] : m) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(v);
  return "{" + s + "}";
}

// Shared between criteria 7, 8 and 9.
std::vector<VerificationReport> order36_reports;

}  // namespace

int main() {
  run(1, "cyclotomic divisor product and division oracle, n <= 200", 5, [](Check& c) {
    std::vector<oracle::Poly> memo;
    for (std::int64_t n = 1; n <= 200; ++n) {
      IntPolynomial prod{1};
      for (auto d : divisors(n)) prod = prod * cyclotomic_poly(d);
      c.expect(prod == IntPolynomial::x_pow_minus_one(static_cast<std::size_t>(n)), "product n=" + std::to_string(n));
      oracle::Poly mine;
      for (const auto& k : cyclotomic_poly(n).coeffs()) mine.push_back(k.get_si());
      c.expect(mine == oracle::cyclotomic_by_division(n, memo), "oracle n=" + std::to_string(n));
    }
    return std::string();
  });

  run(2, "cube rule on all 729 multisets of Z_2 x Z_3", 5, [](Check& c) {
    const Group g({2, 3});
    oracle::Group og{{2, 3}};
    int decomposable = 0;
    for (int code = 0; code < 729; ++code) {
      std::vector<Count> dense(6);
      for (int i = 0, r = code; i < 6; ++i, r /= 3) dense[static_cast<std::size_t>(i)] = r % 3;
      const auto a = Multiset::from_dense(g, dense);
      const auto d = cube_decompose(a);
      const bool v = char_sum_vanishes(g, a, Element{{1, 1}});
      std::vector<std::int64_t> mult;
      std::vector<oracle::Coords> pts;
      for (const auto& [x, k] : a) {
        pts.push_back(g.element_at(x).coords);
        mult.push_back(k);
      }
      c.expect(v == oracle::vanishes(og, pts, {1, 1}, mult), "float oracle code " + std::to_string(code));
      c.expect(d.has_value() == v, "decomposable != vanishing at code " + std::to_string(code));
      if (d) {
        ++decomposable;
        c.expect(d->reconstruct() == a, "reconstruction code " + std::to_string(code));
      }
    }
    return "(" + std::to_string(decomposable) + " decomposable)";
  });

  run(3, "equidistribution <=> vanishing, 1000 multisets x all subgroups of Z_2^2 x Z_3^2", 30, [](Check& c) {
    const Group g({2, 2, 3, 3});
    const auto& t = tables_for(g);
    const auto& eng = engine_for(g);
    std::mt19937_64 rng(31);
    std::int64_t pairs = 0, positive = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto a = random_multiset(g, rng, false);
      for (const auto& h : t.subgroups()) {
        bool vanish = true;
        for (auto x : h.indices())
          if (x != 0 && !eng.vanishes(a, x)) vanish = false;
        const bool eq = equidistributed(a, annihilator(h));
        c.expect(eq == vanish, "trial " + std::to_string(trial));
        ++pairs;
        positive += eq && h.order() > 1;
      }
    }
    return "(" + std::to_string(pairs) + " pairs, " + std::to_string(positive) + " nontrivial equidistributions)";
  });

  run(4, "Galois and negation closure of zero sets, groups of order 36 and 100", 60, [](Check& c) {
    const std::vector<std::vector<std::int64_t>> groups = {{2, 2, 3, 3}, {4, 9}, {6, 6},   {2, 2, 9},
                                                           {2, 2, 5, 5}, {100}, {10, 10}, {4, 25}};
    std::mt19937_64 rng(37);
    std::int64_t zeros = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Group g(groups[static_cast<std::size_t>(trial) % groups.size()]);
      oracle::Group og{g.moduli()};
      const auto a = random_multiset(g, rng, true);
      const auto zs = zero_set(g, a);
      const auto pts = coords(a);
      for (Index y = 1; y < g.order(); ++y) {
        const bool in = zs.contains(y);
        if (trial % 10 == 0) c.expect(in == oracle::vanishes(og, pts, g.element_at(y).coords), "float oracle");
        if (!in) continue;
        ++zeros;
        c.expect(zs.contains(g.neg(y)), "negation " + g.to_string());
        for (std::int64_t k = 2; k < g.order(); ++k)
          if (std::gcd(k, g.order()) == 1) c.expect(zs.contains(g.scale(y, k)), "Galois " + g.to_string());
      }
    }
    return "(" + std::to_string(zeros) + " zeros checked)";
  });

  run(5, "Z_6: spectral family equals tile family over all subsets", 1, [](Check& c) {
    const Group g({6});
    oracle::Group og{{6}};
    std::set<std::uint32_t> spectral, tiles;
    for (std::uint32_t mask = 1; mask < 64; ++mask) {
      std::vector<Index> s;
      for (Index i = 0; i < 6; ++i)
        if (mask >> i & 1) s.push_back(i);
      const auto m = Multiset::from_indices(g, s);
      const bool sp = is_spectral(m);
      const auto tr = find_complement(m);
      c.expect(tr.status != SearchStatus::Undecided, "undecided");
      const bool ti = tr.status == SearchStatus::Found;
      c.expect(sp == oracle::brute_spectral(og, coords(m)), "spectral oracle " + std::to_string(mask));
      c.expect(ti == oracle::brute_tile(og, coords(m)), "tile oracle " + std::to_string(mask));
      if (sp) spectral.insert(mask);
      if (ti) tiles.insert(mask);
    }
    c.expect(spectral == tiles, "families differ");
    return "(" + std::to_string(spectral.size()) + " nonempty spectral sets = tiles; empty set excluded)";
  });

  run(6, "Z_2^2 x Z_3 exhaustive over the 2^11 subsets containing 0", 60, [](Check& c) {
    const Group g({2, 2, 3});
    std::vector<std::int64_t> sizes;
    for (std::int64_t k = 1; k <= 12; ++k) sizes.push_back(k);
    const auto rep = verify_fuglede(VerificationPlan{g, sizes, EnumerationMode::all(), {}, false, 1});
    std::int64_t examined = 0, both = 0;
    for (const auto& s : rep.per_size) {
      examined += s.examined;
      both += s.both_yes;
    }
    c.expect(examined == 2048, "examined " + std::to_string(examined));
    c.expect(rep.mismatch_count() == 0, "mismatches");
    c.expect(rep.undecided_count() == 0, "undecided");
    // Independent cross-check of the spectral/tile counts.
    oracle::Group og{{2, 2, 3}};
    const auto all = og.elements();
    std::map<std::int64_t, std::int64_t> spec_count;
    for (std::uint32_t mask = 1; mask < (1u << 12); mask += 2) {
      std::vector<oracle::Coords> pts;
      for (std::size_t i = 0; i < 12; ++i)
        if (mask >> i & 1) pts.push_back(all[i]);
      const bool sp = oracle::brute_spectral(og, pts);
      c.expect(sp == oracle::brute_tile(og, pts), "oracle mismatch");
      spec_count[static_cast<std::int64_t>(pts.size())] += sp;
    }
    for (const auto& s : rep.per_size) c.expect(s.spectral == spec_count[s.size], "oracle count size " + std::to_string(s.size));
    return "(" + std::to_string(both) + " spectral tiles)";
  });

  run(7, "Z_2^2 x Z_3^2 exhaustive sizes {2,3,4,6}, 1 and 8 workers; 10^5 samples at 9, 12, 18", 15 * 60 + 3 * 60 + 600,
      [](Check& c) {
        const Group g({2, 2, 3, 3});
        VerificationPlan plan{g, {2, 3, 4, 6}, EnumerationMode::all(), {}, true, 1};
        const auto t0 = std::chrono::steady_clock::now();
        auto single = verify_fuglede(plan);
        const double t1 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        plan.workers = 8;
        auto eight = verify_fuglede(plan);
        c.expect(single.elapsed_seconds <= 15 * 60, "single worker over 15 min");
        c.expect(eight.elapsed_seconds <= 3 * 60, "8 workers over 3 min");
        const double t8 = eight.elapsed_seconds;
        auto a = single, b = eight;
        a.elapsed_seconds = b.elapsed_seconds = 0;
        c.expect(a == b, "worker count changed the report");
        VerificationPlan sampled{g, {9, 12, 18}, EnumerationMode::sample(20251015, 100000), {}, true, 1};
        auto s = verify_fuglede(sampled);
        for (const auto* r : {&single, &s}) {
          c.expect(r->mismatch_count() == 0, "mismatches");
          c.expect(r->undecided_count() == 0, "undecided");
        }
        std::ostringstream out;
        out << "(";
        for (const auto* r : {&single, &s})
          for (const auto& st : r->per_size)
            out << "|S|=" << st.size << ": " << st.examined << " examined, " << st.both_yes << " spectral tiles; ";
        out << "1 worker " << t1 << "s, 8 workers " << t8 << "s, sampled " << s.elapsed_seconds << "s)";
        order36_reports = {single, s};
        return out.str();
      });

  run(8, "every tile from criterion 7 tiles by a subgroup", 1, [](Check& c) {
    c.expect(order36_reports.size() == 2, "criterion 7 did not produce reports");
    std::int64_t tiles = 0, by_subgroup = 0;
    for (const auto& r : order36_reports) {
      c.expect(r.subgroup_violation_count() == 0, "subgroup violations");
      for (const auto& s : r.per_size) {
        tiles += s.tiles;
        by_subgroup += s.subgroup_tiles;
      }
    }
    c.expect(tiles == by_subgroup, "tile count differs from subgroup tile count");
    return "(" + std::to_string(tiles) + " tiles)";
  });

  run(9, "constructive witnesses carry the expected case tags", 1, [](Check& c) {
    c.expect(order36_reports.size() == 2, "criterion 7 did not produce reports");
    const std::map<std::int64_t, std::set<std::string>> allowed = {
        {2, {"Case1"}}, {3, {"Case1"}}, {4, {"Case2"}},  {9, {"Case2"}},
        {6, {"Case3"}}, {12, {"Case4-subgroup", "FallbackSearch"}}, {18, {"Case4-subgroup", "FallbackSearch"}}};
    std::ostringstream out;
    out << "(";
    for (const auto& r : order36_reports) {
      c.expect(r.construction_failure_count() == 0, "construction failures");
      for (const auto& s : r.per_size) {
        std::int64_t tagged = 0;
        for (const auto& [tag, n] : s.spectrum_constructions) {
          c.expect(allowed.at(s.size).count(tag) > 0, "size " + std::to_string(s.size) + " tagged " + tag);
          tagged += n;
        }
        c.expect(tagged == s.tiles, "untagged tiles at size " + std::to_string(s.size));
        const auto fb = s.spectrum_constructions.count("FallbackSearch") ? s.spectrum_constructions.at("FallbackSearch") : 0;
        out << "|S|=" << s.size << " " << tags(s.spectrum_constructions) << " fallback " << fb << "/" << s.tiles << "; ";
      }
    }
    out << ")";
    return out.str();
  });

  run(10, "leaf-difference constancy law exhaustive on Z_2 x Z_3^2 (mass <= 8); trichotomy on 10^4 sets", 600, [](Check& c) {
    const Group g({2, 3, 3});
    std::int64_t hyp = 0, examined = 0;
    for (std::uint32_t mask = 0; mask < (1u << 18); ++mask) {
      if (std::popcount(mask) > 8) continue;
      std::vector<Count> dense(18);
      for (int i = 0; i < 18; ++i) dense[static_cast<std::size_t>(i)] = (mask >> i) & 1;
      const auto r = prop1_validate(Multiset::from_dense(g, dense));
      ++examined;
      if (r.hypothesis_holds) {
        ++hyp;
        c.expect(r.conclusion_holds, "counterexample mask " + std::to_string(mask));
      }
    }
    const auto shape = PQShape::of(Group({2, 2, 3, 3}));
    std::mt19937_64 rng(10);
    std::int64_t tiles = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const auto k = 6 + static_cast<std::size_t>(rng() % 31);
      const auto tr = direction_trichotomy(shape, random_set(shape.group(), k, rng));
      c.expect(!tr.failure, "trichotomy failed at trial " + std::to_string(trial));
      tiles += tr.tile_of_size_pq;
    }
    return "(" + std::to_string(examined) + " multisets, " + std::to_string(hyp) + " satisfy the hypothesis; " +
           std::to_string(tiles) + " trichotomy tiles)";
  });

  run(11, "Z_3^2 x Z_5^2 probe, 10^4 leaf-structured candidates of size 30 (non-exhaustive)", 30 * 60, [](Check& c) {
    ProbePlan plan;
    plan.sizes = {30};
    plan.seed = 11;
    plan.count = 10000;
    const auto rep = case5_nonexistence_probe(PQShape::of(Group({3, 3, 5, 5})), plan);
    c.expect(rep.spectral_found() == 0, "spectral set found");
    c.expect(rep.undecided() == 0, "budget exhausted");
    const auto& s = rep.per_size.at(0);
    c.expect(s.examined == 10000, "examined");
    return "(" + std::to_string(s.examined) + " examined, rejected by " + tags(s.rejected_by) + ", assumption A " +
           std::to_string(s.assumption_a) + ", undetermined pair " + std::to_string(s.undetermined_pair) + ")";
  });

  run(12, "invariance: translation, pair symmetries, automorphisms (1000 cases each)", 60, [](Check& c) {
    const Group g({2, 2, 3, 3});
    const AutomorphismGroup auts(g);
    const auto divs = divisors(36);
    std::mt19937_64 rng(12);
    auto verdicts = [](const Multiset& s) {
      const auto sp = find_spectrum(s);
      const auto ti = find_complement(s);
      return std::pair{sp.status, ti.status};
    };
    auto rnd_size = [&] { return static_cast<std::size_t>(rng() % 3 ? divs[rng() % divs.size()] : 1 + rng() % 12); };
    for (int i = 0; i < 1000; ++i) {
      const auto s = random_set(g, std::min<std::size_t>(rnd_size(), 18), rng);
      const auto v = verdicts(s);
      c.expect(v.first != SearchStatus::Undecided && v.second != SearchStatus::Undecided, "undecided");
      c.expect(verdicts(s.translated(static_cast<Index>(rng() % 36))) == v, "translation");
    }
    for (int i = 0; i < 1000; ++i) {
      const auto k = std::min<std::size_t>(rnd_size(), 12);
      const auto s = random_set(g, k, rng);
      const auto sp = find_spectrum(s);
      const auto l = sp.witness && rng() % 2 ? sp.witness->lambda : random_set(g, k, rng);
      c.expect(is_spectral_pair(s, l) == is_spectral_pair(l, s), "spectral symmetry");
      if (sp.witness) c.expect(is_spectral_pair(sp.witness->lambda, s), "spectrum not symmetric");
    }
    for (int i = 0; i < 1000; ++i) {
      const auto k = static_cast<std::size_t>(divs[rng() % divs.size()]);
      const auto s = random_set(g, k, rng);
      const auto tr = find_complement(s);
      const auto t = tr.witness && rng() % 2 ? tr.witness->t : random_set(g, 36 / k, rng);
      c.expect(is_tiling_pair(s, t) == is_tiling_pair(t, s), "tiling symmetry");
      c.expect(is_tiling_pair(s, t) == oracle::is_tiling_pair(oracle::Group{g.moduli()}, coords(s), coords(t)), "tiling oracle");
    }
    for (int i = 0; i < 1000; ++i) {
      const auto s = random_set(g, std::min<std::size_t>(rnd_size(), 18), rng);
      c.expect(verdicts(auts.random(rng).apply(s)) == verdicts(s), "automorphism");
    }
    return std::string();
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
