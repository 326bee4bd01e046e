#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "fuglede/cyclotomic.hpp"
#include "fuglede/group.hpp"
#include "fuglede/spectra.hpp"
#include "fuglede/structure.hpp"
#include "fuglede/tiling.hpp"

namespace fuglede {

// ---------------------------------------------------------------------------
// Constructive witnesses

enum class ConstructionTag { Trivial, Case1, Case2, Case3, Case4Subgroup, Case4, Case5, FallbackSearch };

constexpr std::string_view to_string(ConstructionTag t) {
  switch (t) {
    case ConstructionTag::Trivial: return "Trivial";
    case ConstructionTag::Case1: return "Case1";
    case ConstructionTag::Case2: return "Case2";
    case ConstructionTag::Case3: return "Case3";
    case ConstructionTag::Case4Subgroup: return "Case4-subgroup";
    case ConstructionTag::Case4: return "Case4";
    case ConstructionTag::Case5: return "Case5";
    case ConstructionTag::FallbackSearch: return "FallbackSearch";
  }
  return "?";
}

struct TaggedSpectrum {
  std::vector<Index> lambda;
  ConstructionTag tag = ConstructionTag::FallbackSearch;
};

struct TaggedComplement {
  std::vector<Index> complement;
  ConstructionTag tag = ConstructionTag::FallbackSearch;
  ComplementMethod method = ComplementMethod::Subgroup;
};

namespace detail {

inline std::vector<Index> cyclic_span(const GroupTables& t, Index x) {
  std::vector<Index> out;
  Index y = 0;
  do {
    out.push_back(y);
    y = t.add(y, x);
  } while (y != 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// <x> + H for a subgroup H given by its members.
inline std::vector<Index> span_with(const GroupTables& t, Index x, const std::vector<Index>& h) {
  std::vector<Index> out;
  for (auto c : cyclic_span(t, x))
    for (auto m : h) out.push_back(t.add(c, m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Index> sylow_subgroup(const PQShape& shape, std::int64_t r) {
  auto v = shape.sylow_nonzero(r);
  v.insert(v.begin(), 0);
  return v;
}

}  // namespace detail

/// Spectrum for a tile S with complement T, following the tile => spectral
/// cases by |S|; every returned spectrum is re-verified.
inline TaggedSpectrum tile_to_spectrum(const PQShape& shape, std::span<const Index> s, std::span<const Index> tc,
                                       std::uint64_t budget = kDefaultBudget) {
  const auto& eng = engine_for(shape.group());
  const auto& t = eng.tables();
  const auto p = shape.p(), q = shape.q();
  const auto n = static_cast<std::int64_t>(s.size());
  auto verified = [&](const std::vector<Index>& lam) {
    return static_cast<std::int64_t>(lam.size()) == n && detail::count_orthogonal_pairs(eng, s, lam) >= 0;
  };
  auto nonvanishing_on_t = [&](std::int64_t r) {
    std::vector<Index> out;
    for (auto x : shape.sylow_nonzero(r))
      if (!eng.vanishes(tc, x)) out.push_back(x);
    return out;
  };

  if (n == 1) return {{0}, ConstructionTag::Trivial};
  if (n == shape.group().order()) {
    std::vector<Index> all(t.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Index>(i);
    return {all, ConstructionTag::Trivial};
  }
  if (n == p || n == q) {
    for (auto a : nonvanishing_on_t(n)) {
      auto lam = detail::cyclic_span(t, a);
      if (verified(lam)) return {lam, ConstructionTag::Case1};
    }
  } else if (n == p * p || n == q * q) {
    auto lam = detail::sylow_subgroup(shape, n == p * p ? p : q);
    if (verified(lam)) return {lam, ConstructionTag::Case2};
  } else if (n == p * q) {
    const auto us = nonvanishing_on_t(p);
    const auto vs = nonvanishing_on_t(q);
    if (!us.empty() && !vs.empty()) {
      auto lam = detail::cyclic_span(t, t.add(us.front(), vs.front()));
      if (verified(lam)) return {lam, ConstructionTag::Case3};
    }
  } else if (n == p * q * q || n == p * p * q) {
    const std::int64_t single = n == p * q * q ? p : q;
    const std::int64_t squared = single == p ? q : p;
    const auto sylow = detail::sylow_subgroup(shape, squared);
    for (auto chi : nonvanishing_on_t(single)) {
      auto lam = detail::span_with(t, chi, sylow);
      if (verified(lam)) return {lam, ConstructionTag::Case4Subgroup};
    }
  }
  auto found = find_spectrum(eng, s, budget);
  if (found.status == SearchStatus::Undecided) fail(Errc::BudgetExhausted, "fallback spectrum search undecided");
  if (found.status == SearchStatus::None) fail(Errc::TheoremViolation, "tile without a spectrum");
  return {found.lambda, ConstructionTag::FallbackSearch};
}

inline std::pair<SpectrumWitness, ConstructionTag> tile_to_spectrum(const PQShape& shape, const Multiset& s,
                                                                    const Multiset& tc,
                                                                    std::uint64_t budget = kDefaultBudget) {
  if (!is_tiling_pair(s, tc)) fail(Errc::NotATilingPair, "S and T do not tile");
  const auto ss = s.support();
  const auto ts = tc.support();
  auto r = tile_to_spectrum(shape, ss, ts, budget);
  const auto pairs = detail::count_orthogonal_pairs(engine_for(shape.group()), ss, r.lambda);
  return {SpectrumWitness{Multiset::from_indices(shape.group(), r.lambda), pairs}, r.tag};
}

/// Complement for a spectral set S (spectrum Lambda), following the
/// spectral => tile cases by gcd(|S|, |G|); subgroups first, exact cover as
/// the backstop. Throws TheoremViolation if S does not tile.
inline TaggedComplement spectral_to_complement(const PQShape& shape, std::span<const Index> s,
                                               std::uint64_t budget = kDefaultBudget) {
  const auto& t = tables_for(shape.group());
  const auto n = static_cast<std::int64_t>(s.size());
  const auto cls = classify_case(shape, n);
  const auto tag_for = [&] {
    switch (cls.kind) {
      case CaseKind::Case1: return ConstructionTag::Case1;
      case CaseKind::Case2: return ConstructionTag::Case2;
      case CaseKind::Case3: return n == 1 ? ConstructionTag::Case3 : ConstructionTag::FallbackSearch;
      case CaseKind::Case4: return ConstructionTag::Case4;
      case CaseKind::Case5: return ConstructionTag::Case5;
      case CaseKind::Full: return ConstructionTag::Trivial;
    }
    return ConstructionTag::FallbackSearch;
  }();

  const Bitset diffs = difference_bits(t, s);
  if (cls.kind == CaseKind::Case2 && n == cls.prime * cls.prime) {
    // The Sylow subgroup of the other prime.
    const auto other = cls.prime == shape.p() ? shape.q() : shape.p();
    auto h = detail::sylow_subgroup(shape, other);
    std::size_t hits = 0;
    for (auto m : h) hits += diffs.test(static_cast<std::size_t>(m)) ? 1 : 0;
    if (hits == 1) return {h, tag_for, ComplementMethod::Subgroup};
  }
  if (auto k = subgroup_complement_index(t, diffs, s.size()))
    return {t.subgroups()[*k].indices(), tag_for, ComplementMethod::Subgroup};
  auto c = find_complement(t, s, budget);
  if (c.status == SearchStatus::Undecided) fail(Errc::BudgetExhausted, "fallback complement search undecided");
  if (c.status == SearchStatus::None) fail(Errc::TheoremViolation, "spectral set without a tiling complement");
  return {c.complement, ConstructionTag::FallbackSearch, ComplementMethod::ExactCover};
}

inline std::pair<ComplementWitness, ConstructionTag> spectral_to_complement(const PQShape& shape, const Multiset& s,
                                                                            const Multiset& lambda,
                                                                            std::uint64_t budget = kDefaultBudget) {
  if (!is_spectral_pair(s, lambda)) fail(Errc::NotASpectralPair, "(S, Lambda) is not a spectral pair");
  const auto ss = s.support();
  auto r = spectral_to_complement(shape, ss, budget);
  ComplementWitness w{Multiset::from_indices(shape.group(), r.complement), r.method};
  if (!is_tiling_pair(s, w.t)) fail(Errc::TheoremViolation, "constructed complement does not tile");
  return {std::move(w), r.tag};
}

// ---------------------------------------------------------------------------
// Verification sweeps

struct Budgets {
  std::uint64_t spectrum = kDefaultBudget;
  std::uint64_t complement = kDefaultBudget;
};

struct VerificationPlan {
  Group group;
  std::vector<std::int64_t> sizes;
  EnumerationMode mode;
  Budgets budgets;
  /// Also build and tally the constructive witnesses (PQShape groups only).
  bool constructive = false;
  unsigned workers = 1;
};

struct CandidateRecord {
  std::vector<Index> set;
  bool spectral = false;
  bool tile = false;
  std::vector<Index> witness;  // spectrum or complement, whichever exists
  std::string note;

  friend bool operator==(const CandidateRecord&, const CandidateRecord&) = default;
};

struct SizeTally {
  std::int64_t size = 0;
  std::int64_t examined = 0;
  std::int64_t spectral = 0;
  std::int64_t tiles = 0;
  std::int64_t both_yes = 0;
  std::int64_t both_no = 0;
  std::vector<CandidateRecord> mismatches;
  std::vector<CandidateRecord> undecided;
  std::int64_t subgroup_tiles = 0;
  std::vector<CandidateRecord> subgroup_violations;
  std::map<std::string, std::int64_t> spectrum_constructions;
  std::map<std::string, std::int64_t> complement_constructions;
  std::vector<CandidateRecord> construction_failures;
  std::int64_t spectral_size_not_dividing = 0;
  std::uint64_t spectrum_nodes = 0;
  std::uint64_t complement_nodes = 0;

  friend bool operator==(const SizeTally&, const SizeTally&) = default;
};

struct VerificationReport {
  std::vector<std::int64_t> moduli;
  std::string mode;
  std::uint64_t seed = 0;
  std::int64_t samples_per_size = 0;
  bool canonicalized = false;
  Budgets budgets;
  std::vector<SizeTally> per_size;
  double elapsed_seconds = 0;

  std::int64_t mismatch_count() const {
    std::int64_t n = 0;
    for (const auto& s : per_size) n += static_cast<std::int64_t>(s.mismatches.size());
    return n;
  }
  std::int64_t undecided_count() const {
    std::int64_t n = 0;
    for (const auto& s : per_size) n += static_cast<std::int64_t>(s.undecided.size());
    return n;
  }
  std::int64_t subgroup_violation_count() const {
    std::int64_t n = 0;
    for (const auto& s : per_size) n += static_cast<std::int64_t>(s.subgroup_violations.size());
    return n;
  }
  std::int64_t construction_failure_count() const {
    std::int64_t n = 0;
    for (const auto& s : per_size) n += static_cast<std::int64_t>(s.construction_failures.size());
    return n;
  }
  bool consistent() const {
    for (const auto& s : per_size)
      if (s.examined != s.both_yes + s.both_no + static_cast<std::int64_t>(s.mismatches.size() + s.undecided.size()))
        return false;
    return true;
  }

  friend bool operator==(const VerificationReport& a, const VerificationReport& b) {
    return a.moduli == b.moduli && a.mode == b.mode && a.seed == b.seed && a.samples_per_size == b.samples_per_size &&
           a.canonicalized == b.canonicalized && a.budgets.spectrum == b.budgets.spectrum &&
           a.budgets.complement == b.budgets.complement && a.per_size == b.per_size &&
           a.elapsed_seconds == b.elapsed_seconds;
  }
};

namespace detail {

struct Outcome {
  SearchStatus spectral = SearchStatus::None;
  SearchStatus tile = SearchStatus::None;
  bool subgroup_tile = false;
  std::vector<Index> lambda;
  std::vector<Index> complement;
  std::uint64_t spectrum_nodes = 0;
  std::uint64_t complement_nodes = 0;
  std::optional<ConstructionTag> spectrum_tag;
  std::optional<ConstructionTag> complement_tag;
  std::string construction_error;
};

inline Outcome evaluate(const FourierEngine& eng, const std::optional<PQShape>& shape, const VerificationPlan& plan,
                        const std::vector<Index>& set) {
  const auto& t = eng.tables();
  Outcome o;
  auto spec = find_spectrum(eng, set, plan.budgets.spectrum);
  o.spectral = spec.status;
  o.spectrum_nodes = spec.nodes;
  o.lambda = std::move(spec.lambda);

  const Bitset diffs = difference_bits(t, set);
  if (auto k = subgroup_complement_index(t, diffs, set.size())) {
    o.tile = SearchStatus::Found;
    o.subgroup_tile = true;
    o.complement = t.subgroups()[*k].indices();
  } else {
    auto c = find_complement(t, set, plan.budgets.complement);
    o.tile = c.status;
    o.complement_nodes = c.nodes;
    o.complement = std::move(c.complement);
  }

  if (plan.constructive && shape) {
    try {
      if (o.tile == SearchStatus::Found) {
        auto r = tile_to_spectrum(*shape, set, o.complement, plan.budgets.spectrum);
        if (count_orthogonal_pairs(eng, set, r.lambda) < 0 || r.lambda.size() != set.size())
          o.construction_error = "constructed spectrum failed verification";
        o.spectrum_tag = r.tag;
      }
      if (o.spectral == SearchStatus::Found) {
        auto r = spectral_to_complement(*shape, set, plan.budgets.complement);
        auto tm = Multiset::from_indices(shape->group(), r.complement);
        auto sm = Multiset::from_indices(shape->group(), set);
        if (!is_tiling_pair(sm, tm)) o.construction_error = "constructed complement failed verification";
        o.complement_tag = r.tag;
      }
    } catch (const Error& e) {
      o.construction_error = e.what();
    }
  }
  return o;
}

inline void tally(SizeTally& s, const std::vector<Index>& set, const Outcome& o, std::int64_t group_order) {
  ++s.examined;
  s.spectrum_nodes += o.spectrum_nodes;
  s.complement_nodes += o.complement_nodes;
  const bool sp = o.spectral == SearchStatus::Found;
  const bool ti = o.tile == SearchStatus::Found;
  if (sp) ++s.spectral;
  if (ti) ++s.tiles;
  if (o.subgroup_tile) ++s.subgroup_tiles;
  if (sp && group_order % static_cast<std::int64_t>(set.size()) != 0) ++s.spectral_size_not_dividing;
  CandidateRecord rec{set, sp, ti, sp ? o.lambda : o.complement, {}};
  if (o.spectral == SearchStatus::Undecided || o.tile == SearchStatus::Undecided) {
    rec.note = std::string("spectrum ") + std::string(to_string(o.spectral)) + ", complement " +
               std::string(to_string(o.tile));
    s.undecided.push_back(rec);
  } else if (sp && ti) {
    ++s.both_yes;
  } else if (!sp && !ti) {
    ++s.both_no;
  } else {
    rec.note = sp ? "spectral but no tiling complement" : "tile but no spectrum";
    s.mismatches.push_back(rec);
  }
  if (ti && !o.subgroup_tile) {
    rec.note = "tile without a subgroup complement";
    s.subgroup_violations.push_back(rec);
  }
  if (o.spectrum_tag) ++s.spectrum_constructions[std::string(to_string(*o.spectrum_tag))];
  if (o.complement_tag) ++s.complement_constructions[std::string(to_string(*o.complement_tag))];
  if (!o.construction_error.empty()) {
    rec.note = o.construction_error;
    s.construction_failures.push_back(rec);
  }
}

}  // namespace detail

/// Decides spectrality and tiling for every candidate of the plan and
/// tallies agreement per size. Output is independent of `workers`.
inline VerificationReport verify_fuglede(const VerificationPlan& plan) {
  if (plan.sizes.empty()) fail(Errc::InvalidArgument, "plan needs at least one size");
  if (!plan.mode.exhaustive && plan.mode.count < 1) fail(Errc::InvalidArgument, "sample count must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const auto& eng = engine_for(plan.group);
  const auto shape = PQShape::detect(plan.group);
  VerificationReport rep;
  rep.moduli = plan.group.moduli();
  rep.mode = plan.mode.exhaustive ? "exhaustive" : "sample";
  rep.seed = plan.mode.seed;
  rep.samples_per_size = plan.mode.exhaustive ? 0 : plan.mode.count;
  rep.canonicalized = plan.mode.canonicalize;
  rep.budgets = plan.budgets;

  auto sizes = plan.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  const unsigned workers = std::max(1U, plan.workers);
  constexpr std::size_t kBatch = 4096;

  for (auto k : sizes) {
    if (k < 1 || k > plan.group.order()) fail(Errc::InvalidArgument, "size " + std::to_string(k) + " out of range");
    SizeTally tally;
    tally.size = k;
    EnumerationMode mode = plan.mode;
    if (!mode.exhaustive) mode.seed = plan.mode.seed + static_cast<std::uint64_t>(k);
    SubsetStream stream(plan.group, static_cast<std::size_t>(k), mode);
    std::vector<std::vector<Index>> batch;
    std::vector<detail::Outcome> outcomes;
    bool more = true;
    while (more) {
      batch.clear();
      std::vector<Index> set;
      while (batch.size() < kBatch && (more = stream.next(set))) batch.push_back(set);
      outcomes.assign(batch.size(), {});
      auto work = [&](std::size_t w) {
        for (std::size_t i = w; i < batch.size(); i += workers) outcomes[i] = detail::evaluate(eng, shape, plan, batch[i]);
      };
      if (workers == 1) {
        work(0);
      } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      }
      for (std::size_t i = 0; i < batch.size(); ++i) detail::tally(tally, batch[i], outcomes[i], plan.group.order());
    }
    rep.per_size.push_back(std::move(tally));
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Same sweep; the figure of merit is subgroup_violations (tiles that only
/// tile through a non-subgroup complement). Any group is accepted.
inline VerificationReport verify_subgroup_tiling(const VerificationPlan& plan) { return verify_fuglede(plan); }

// ---------------------------------------------------------------------------
// Case-5 probe

struct ProbePlan {
  std::vector<std::int64_t> sizes;  // empty: every admissible size
  std::uint64_t seed = 0;
  std::int64_t count = 0;
  std::uint64_t budget = kDefaultBudget;
  /// Build candidates with leaves of size 0 or q; otherwise uniform sets.
  bool leaf_structured = true;
};

struct ProbeObstructions {
  bool leaf_structure = false;
  bool mixed_vanishing = false;
  bool leaf_overflow = false;
  bool assumption_a = false;
  bool undetermined_pair = false;
};

struct ProbeSizeReport {
  std::int64_t size = 0;
  std::int64_t examined = 0;
  std::int64_t spectral_found = 0;
  std::int64_t undecided = 0;
  std::map<std::string, std::int64_t> rejected_by;
  std::int64_t assumption_a = 0;
  std::int64_t undetermined_pair = 0;
  std::vector<std::vector<Index>> spectral_sets;
  std::uint64_t nodes = 0;
};

struct ProbeReport {
  std::vector<std::int64_t> moduli;
  std::uint64_t seed = 0;
  bool vacuous = false;
  std::vector<ProbeSizeReport> per_size;
  double elapsed_seconds = 0;

  std::int64_t spectral_found() const {
    std::int64_t n = 0;
    for (const auto& s : per_size) n += s.spectral_found;
    return n;
  }
  std::int64_t undecided() const {
    std::int64_t n = 0;
    for (const auto& s : per_size) n += s.undecided;
    return n;
  }
};

/// Sizes n with gcd(n, |G|) = pq and pq < n < pq min(p, q).
inline std::vector<std::int64_t> case5_probe_sizes(const PQShape& shape) {
  std::vector<std::int64_t> out;
  const auto p = shape.p(), q = shape.q();
  for (std::int64_t n = p * q + 1; n < p * q * std::min(p, q); ++n)
    if (std::gcd(n, shape.group().order()) == p * q) out.push_back(n);
  return out;
}

/// Necessary conditions a spectral set of such a size would satisfy, each
/// evaluated on S. A true flag means that condition fails for S.
inline ProbeObstructions case5_obstructions(const PQShape& shape, std::span<const Index> s) {
  const auto& eng = engine_for(shape.group());
  const auto p = shape.p(), q = shape.q();
  ProbeObstructions ob;
  // Leaf structure: every Z_q^2 coset meets S in 0 or q points, or every
  // Z_p^2 coset meets it in 0 or p points.
  std::vector<std::int64_t> by_p(static_cast<std::size_t>(p * p), 0), by_q(static_cast<std::size_t>(q * q), 0);
  for (auto x : s) {
    ++by_p[static_cast<std::size_t>(shape.p_part(x))];
    ++by_q[static_cast<std::size_t>(shape.q_part(x))];
  }
  const auto leaves_ok = [](const std::vector<std::int64_t>& counts, std::int64_t size) {
    return std::all_of(counts.begin(), counts.end(), [&](std::int64_t c) { return c == 0 || c == size; });
  };
  ob.leaf_structure = !leaves_ok(by_p, q) && !leaves_ok(by_q, p);

  const auto us = shape.sylow_nonzero(p);
  const auto vs = shape.sylow_nonzero(q);
  const auto& t = eng.tables();
  std::vector<bool> u_zero, v_zero;
  for (auto u : us) u_zero.push_back(eng.vanishes(s, u));
  for (auto v : vs) v_zero.push_back(eng.vanishes(s, v));
  for (std::size_t i = 0; i < us.size() && !ob.mixed_vanishing; ++i)
    for (std::size_t j = 0; j < vs.size(); ++j)
      if (!eng.vanishes(s, t.add(us[i], vs[j])) && !(u_zero[i] && v_zero[j])) {
        ob.mixed_vanishing = true;
        break;
      }
  // A nonvanishing chi_u forces a Z_p x Z_q^2 coset with q^2 points of the
  // projection, while leaves of size <= q cap every such coset at pq.
  const std::int64_t cap = *std::max_element(by_p.begin(), by_p.end()) * p;
  for (std::size_t i = 0; i < us.size(); ++i)
    if (!u_zero[i] && cap < q * q) ob.leaf_overflow = true;

  const Multiset ms = Multiset::from_indices(shape.group(), {s.begin(), s.end()});
  for (Index u = 1; u < shape.zp2().order() && !ob.assumption_a; ++u)
    if (assumption_a_holds(shape, ms, shape.zp2().element_at(u))) ob.assumption_a = true;
  ob.undetermined_pair = undetermined_sylow_directions(shape, ms).both();
  return ob;
}

/// Seeded sampling of candidate sets in the pq || |S| > pq range, each run
/// through the exact spectrum search. Evidence only; not exhaustive.
inline ProbeReport case5_nonexistence_probe(const PQShape& shape, const ProbePlan& plan) {
  const auto start = std::chrono::steady_clock::now();
  const auto& eng = engine_for(shape.group());
  const auto admissible = case5_probe_sizes(shape);
  auto sizes = plan.sizes.empty() ? admissible : plan.sizes;
  for (auto n : sizes)
    if (std::find(admissible.begin(), admissible.end(), n) == admissible.end())
      fail(Errc::InvalidArgument, "size " + std::to_string(n) + " outside the pq || |S| < pq min(p,q) range");
  ProbeReport rep;
  rep.moduli = shape.group().moduli();
  rep.seed = plan.seed;
  rep.vacuous = sizes.empty();
  const auto p = shape.p(), q = shape.q();
  for (auto n : sizes) {
    ProbeSizeReport sr;
    sr.size = n;
    std::mt19937_64 rng(plan.seed + static_cast<std::uint64_t>(n));
    const bool structured = plan.leaf_structured && n % q == 0 && n / q < p * p;
    for (std::int64_t c = 0; c < plan.count; ++c) {
      std::vector<Index> set;
      if (structured) {
        std::vector<Index> as(static_cast<std::size_t>(p * p)), bs(static_cast<std::size_t>(q * q));
        std::iota(as.begin(), as.end(), 0);
        std::iota(bs.begin(), bs.end(), 0);
        for (std::int64_t i = 0; i < n / q; ++i) {
          std::swap(as[static_cast<std::size_t>(i)],
                    as[static_cast<std::size_t>(i) + uniform_below(rng, as.size() - static_cast<std::size_t>(i))]);
          for (std::int64_t j = 0; j < q; ++j) {
            std::swap(bs[static_cast<std::size_t>(j)],
                      bs[static_cast<std::size_t>(j) + uniform_below(rng, bs.size() - static_cast<std::size_t>(j))]);
            set.push_back(shape.compose(as[static_cast<std::size_t>(i)], bs[static_cast<std::size_t>(j)]));
          }
        }
      } else {
        std::vector<Index> pool(static_cast<std::size_t>(shape.group().order()));
        std::iota(pool.begin(), pool.end(), 0);
        for (std::int64_t i = 0; i < n; ++i) {
          std::swap(pool[static_cast<std::size_t>(i)],
                    pool[static_cast<std::size_t>(i) + uniform_below(rng, pool.size() - static_cast<std::size_t>(i))]);
          set.push_back(pool[static_cast<std::size_t>(i)]);
        }
      }
      std::sort(set.begin(), set.end());
      ++sr.examined;
      const auto ob = case5_obstructions(shape, set);
      if (ob.assumption_a) ++sr.assumption_a;
      if (ob.undetermined_pair) ++sr.undetermined_pair;
      const char* tag = ob.leaf_structure    ? "leaf-structure"
                        : ob.mixed_vanishing ? "mixed-vanishing"
                        : ob.leaf_overflow   ? "leaf-overflow"
                                             : "search-only";
      ++sr.rejected_by[tag];
      auto found = find_spectrum(eng, set, plan.budget);
      sr.nodes += found.nodes;
      if (found.status == SearchStatus::Found) {
        ++sr.spectral_found;
        sr.spectral_sets.push_back(set);
      } else if (found.status == SearchStatus::Undecided) {
        ++sr.undecided;
      }
    }
    rep.per_size.push_back(std::move(sr));
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace fuglede
