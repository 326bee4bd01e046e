#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "fuglede/harness.hpp"
#include "oracles.hpp"

using namespace fuglede;

namespace {

Element E(std::initializer_list<std::int64_t> c) { return Element{std::vector<std::int64_t>(c)}; }

const Group& G36() {
  static const Group g({2, 2, 3, 3});
  return g;
}

const PQShape& S36() {
  static const PQShape s = PQShape::of(G36());
  return s;
}

Multiset idx(std::initializer_list<Element> xs) {
  std::vector<Element> v(xs);
  return Multiset::from_elements(G36(), v);
}

VerificationPlan plan_for(const Group& g, std::vector<std::int64_t> sizes, EnumerationMode mode) {
  VerificationPlan p{g, std::move(sizes), mode, {}, false, 1};
  return p;
}

std::vector<std::int64_t> all_sizes(const Group& g) {
  std::vector<std::int64_t> v;
  for (std::int64_t k = 1; k <= g.order(); ++k) v.push_back(k);
  return v;
}

}  // namespace

TEST(Verify, Z6MatchesBruteForce) {
  const Group g({2, 3});
  const auto rep = verify_fuglede(plan_for(g, all_sizes(g), EnumerationMode::all()));
  ASSERT_EQ(rep.per_size.size(), 6u);
  EXPECT_TRUE(rep.consistent());
  EXPECT_EQ(rep.mismatch_count(), 0);
  EXPECT_EQ(rep.undecided_count(), 0);
  // Oracle counts over 0-containing subsets.
  oracle::Group og{{2, 3}};
  for (const auto& s : rep.per_size) {
    std::int64_t spectral = 0, tiles = 0, examined = 0;
    for (std::uint32_t mask = 1; mask < 64; mask += 2) {
      if (std::popcount(mask) != s.size) continue;
      std::vector<oracle::Coords> pts;
      for (int i = 0; i < 6; ++i)
        if (mask >> i & 1) pts.push_back(g.element_at(i).coords);
      ++examined;
      spectral += oracle::brute_spectral(og, pts);
      tiles += oracle::brute_tile(og, pts);
    }
    EXPECT_EQ(s.examined, examined);
    EXPECT_EQ(s.spectral, spectral);
    EXPECT_EQ(s.tiles, tiles);
    EXPECT_EQ(s.both_yes + s.both_no, s.examined);
  }
  EXPECT_EQ(rep.per_size[1].spectral, 3);
  EXPECT_EQ(rep.per_size[3].spectral, 0);
}

TEST(Verify, Z2Z2Z3Exhaustive) {
  const Group g({2, 2, 3});
  auto plan = plan_for(g, all_sizes(g), EnumerationMode::all());
  const auto rep = verify_subgroup_tiling(plan);
  std::int64_t examined = 0;
  for (const auto& s : rep.per_size) examined += s.examined;
  EXPECT_EQ(examined, 1 << 11);
  EXPECT_EQ(rep.mismatch_count(), 0);
  EXPECT_EQ(rep.undecided_count(), 0);
  EXPECT_EQ(rep.subgroup_violation_count(), 0);
  EXPECT_TRUE(rep.consistent());
  for (const auto& s : rep.per_size) {
    if (12 % s.size) {
      EXPECT_EQ(s.spectral, 0);
    }
    EXPECT_EQ(s.spectral_size_not_dividing, 0);
  }
}

TEST(Verify, SubgroupTilingExamples) {
  const Group g({2, 3});
  const auto rep = verify_subgroup_tiling(plan_for(g, {2}, EnumerationMode::all()));
  ASSERT_EQ(rep.per_size.size(), 1u);
  EXPECT_EQ(rep.per_size[0].tiles, 3);
  EXPECT_EQ(rep.per_size[0].subgroup_tiles, 3);
  EXPECT_EQ(rep.subgroup_violation_count(), 0);

  // Size 5 on order 36: nothing divides, nothing tiles.
  const auto five = verify_subgroup_tiling(plan_for(G36(), {5}, EnumerationMode::sample(1, 2000)));
  EXPECT_EQ(five.per_size[0].examined, 2000);
  EXPECT_EQ(five.per_size[0].tiles, 0);
  EXPECT_EQ(five.per_size[0].spectral, 0);
  EXPECT_EQ(five.subgroup_violation_count(), 0);
}

TEST(Verify, PlanErrors) {
  const Group g({2, 3});
  for (auto plan : {plan_for(g, {}, EnumerationMode::all()), plan_for(g, {2}, EnumerationMode::sample(1, 0))}) {
    try {
      verify_fuglede(plan);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidArgument);
    }
  }
}

TEST(Verify, BudgetOneLeavesUndecided) {
  auto plan = plan_for(G36(), {6}, EnumerationMode::sample(3, 50));
  plan.budgets = {1, 1};
  const auto rep = verify_fuglede(plan);
  EXPECT_GT(rep.undecided_count(), 0);
  EXPECT_TRUE(rep.consistent());
}

TEST(Verify, DeterministicAndWorkerIndependent) {
  auto plan = plan_for(G36(), {4, 6, 9}, EnumerationMode::sample(11, 3000));
  plan.constructive = true;
  auto a = verify_fuglede(plan);
  auto b = verify_fuglede(plan);
  plan.workers = 4;
  auto c = verify_fuglede(plan);
  a.elapsed_seconds = b.elapsed_seconds = c.elapsed_seconds = 0;
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.construction_failure_count(), 0);
  EXPECT_EQ(a.mismatch_count(), 0);
  plan.mode.seed = 12;
  auto d = verify_fuglede(plan);
  d.elapsed_seconds = 0;
  EXPECT_FALSE(a == d);
}

TEST(Verify, ConstructionTagsFollowTheCase) {
  auto plan = plan_for(G36(), {2, 3, 4, 6, 9}, EnumerationMode::sample(5, 5000));
  plan.constructive = true;
  const auto rep = verify_fuglede(plan);
  EXPECT_EQ(rep.construction_failure_count(), 0);
  const std::map<std::int64_t, std::pair<std::string, std::string>> expect = {
      {2, {"Case1", "Case4"}}, {3, {"Case1", "Case4"}}, {4, {"Case2", "Case2"}},
      {6, {"Case3", "Case5"}}, {9, {"Case2", "Case2"}}};
  for (const auto& s : rep.per_size) {
    const auto& [sp, co] = expect.at(s.size);
    if (s.tiles) {
      ASSERT_EQ(s.spectrum_constructions.size(), 1u) << s.size;
      EXPECT_EQ(s.spectrum_constructions.begin()->first, sp);
      EXPECT_EQ(s.spectrum_constructions.begin()->second, s.tiles);
    }
    if (s.spectral) {
      ASSERT_EQ(s.complement_constructions.size(), 1u) << s.size;
      EXPECT_EQ(s.complement_constructions.begin()->first, co);
    }
  }
}

TEST(TileToSpectrum, Examples) {
  // Z_3^2 block tiled by the Z_2^2 part.
  std::vector<Element> block;
  for (std::int64_t i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 3; ++j) block.push_back(E({0, 0, i, j}));
  const auto s9 = Multiset::from_elements(G36(), block);
  const auto t4 = idx({E({0, 0, 0, 0}), E({0, 1, 0, 0}), E({1, 0, 0, 0}), E({1, 1, 0, 0})});
  auto [w9, tag9] = tile_to_spectrum(S36(), s9, t4);
  EXPECT_EQ(tag9, ConstructionTag::Case2);
  EXPECT_TRUE(is_spectral_pair(s9, w9.lambda));

  auto [w4, tag4] = tile_to_spectrum(S36(), t4, s9);
  EXPECT_EQ(tag4, ConstructionTag::Case2);
  EXPECT_TRUE(is_spectral_pair(t4, w4.lambda));

  const auto s2 = idx({E({0, 0, 0, 0}), E({1, 0, 0, 0})});
  const auto t18 = Multiset::from_indices(G36(), [] {
    std::vector<Index> v;
    for (Index x = 0; x < 36; ++x)
      if (G36().coord(x, 0) == 0) v.push_back(x);
    return v;
  }());
  auto [w2, tag2] = tile_to_spectrum(S36(), s2, t18);
  EXPECT_EQ(tag2, ConstructionTag::Case1);
  EXPECT_TRUE(is_spectral_pair(s2, w2.lambda));

  const Index gen[] = {G36().index_of(E({1, 0, 1, 0}))};
  const auto h6 = generated_subgroup(G36(), gen).as_multiset();
  const Index gen2[] = {G36().index_of(E({0, 1, 0, 1}))};
  const auto k6 = generated_subgroup(G36(), gen2).as_multiset();
  auto [w6, tag6] = tile_to_spectrum(S36(), h6, k6);
  EXPECT_EQ(tag6, ConstructionTag::Case3);
  EXPECT_TRUE(is_spectral_pair(h6, w6.lambda));

  try {
    tile_to_spectrum(S36(), s2, s9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotATilingPair);
  }
}

TEST(SpectralToComplement, Examples) {
  const auto one = idx({E({1, 1, 2, 2})});
  auto [c1, tag1] = spectral_to_complement(S36(), one, idx({E({0, 0, 0, 0})}));
  EXPECT_EQ(c1.t, Multiset::whole(G36()));
  EXPECT_EQ(tag1, ConstructionTag::Case3);

  const auto t4 = idx({E({0, 0, 0, 0}), E({0, 1, 0, 0}), E({1, 0, 0, 0}), E({1, 1, 0, 0})});
  auto [c4, tag4] = spectral_to_complement(S36(), t4, t4);
  EXPECT_EQ(tag4, ConstructionTag::Case2);
  EXPECT_EQ(c4.method, ComplementMethod::Subgroup);
  std::vector<Element> block;
  for (std::int64_t i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 3; ++j) block.push_back(E({0, 0, i, j}));
  EXPECT_EQ(c4.t, Multiset::from_elements(G36(), block));

  const Index gen[] = {G36().index_of(E({1, 0, 1, 0}))};
  const auto h6 = generated_subgroup(G36(), gen).as_multiset();
  auto spec = find_spectrum(h6);
  ASSERT_TRUE(spec.witness);
  auto [c6, tag6] = spectral_to_complement(S36(), h6, spec.witness->lambda);
  EXPECT_EQ(tag6, ConstructionTag::Case5);
  EXPECT_EQ(c6.t.mass(), 6);
  EXPECT_TRUE(is_tiling_pair(h6, c6.t));
  EXPECT_EQ(c6.method, ComplementMethod::Subgroup);
  const auto sup = c6.t.support();
  EXPECT_EQ(generated_subgroup(G36(), sup).indices(), sup);

  try {
    spectral_to_complement(S36(), t4, idx({E({0, 0, 0, 0}), E({0, 0, 0, 1}), E({0, 0, 0, 2}), E({0, 0, 1, 0})}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotASpectralPair);
  }
}

TEST(Probe, SizesAndVacuity) {
  EXPECT_TRUE(case5_probe_sizes(S36()).empty());
  const auto s35 = PQShape::of(Group({3, 3, 5, 5}));
  EXPECT_EQ(case5_probe_sizes(s35), (std::vector<std::int64_t>{30}));
  const auto s57 = PQShape::of(Group({5, 5, 7, 7}));
  EXPECT_EQ(case5_probe_sizes(s57), (std::vector<std::int64_t>{70, 105, 140}));

  ProbePlan plan;
  plan.seed = 1;
  plan.count = 10;
  const auto vac = case5_nonexistence_probe(S36(), plan);
  EXPECT_TRUE(vac.vacuous);
  EXPECT_TRUE(vac.per_size.empty());

  plan.sizes = {6};
  try {
    case5_nonexistence_probe(S36(), plan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidArgument);
  }
}

TEST(Probe, SeededRunOnZ3Z3Z5Z5) {
  const auto shape = PQShape::of(Group({3, 3, 5, 5}));
  ProbePlan plan;
  plan.sizes = {30};
  plan.seed = 9;
  plan.count = 200;
  const auto a = case5_nonexistence_probe(shape, plan);
  const auto b = case5_nonexistence_probe(shape, plan);
  ASSERT_EQ(a.per_size.size(), 1u);
  EXPECT_EQ(a.per_size[0].examined, 200);
  EXPECT_EQ(a.spectral_found(), 0);
  EXPECT_EQ(a.undecided(), 0);
  std::int64_t tagged = 0;
  for (const auto& [tag, n] : a.per_size[0].rejected_by) tagged += n;
  EXPECT_EQ(tagged, 200);
  EXPECT_EQ(a.per_size[0].rejected_by, b.per_size[0].rejected_by);
  EXPECT_EQ(a.per_size[0].nodes, b.per_size[0].nodes);
}
