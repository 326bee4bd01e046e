#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuglede/cyclotomic.hpp"
#include "fuglede/group.hpp"
#include "fuglede/harness.hpp"
#include "fuglede/spectra.hpp"
#include "fuglede/structure.hpp"
#include "fuglede/tiling.hpp"

namespace fuglede {

using Json = nlohmann::ordered_json;

namespace detail {

template <class F>
auto json_guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

inline Json element_json(const Element& x) { return Json(x.coords); }

inline Element element_from(const Group& g, const Json& j) {
  if (!j.is_array()) fail(Errc::ParseError, "element must be an array of coordinates");
  Element x{j.get<std::vector<std::int64_t>>()};
  if (x.coords.size() != g.rank())
    fail(Errc::InvalidElement, "element " + Group::to_string(x) + " needs " + std::to_string(g.rank()) + " coordinates");
  if (!g.contains(x)) fail(Errc::InvalidElement, "coordinate out of range in " + Group::to_string(x));
  return x;
}

inline Json indices_json(const Group& g, std::span<const Index> xs) {
  Json a = Json::array();
  for (auto x : xs) a.push_back(element_json(g.element_at(x)));
  return a;
}

inline std::vector<Index> indices_from(const Group& g, const Json& j) {
  if (!j.is_array()) fail(Errc::ParseError, "expected an array of elements");
  std::vector<Index> out;
  for (const auto& e : j) out.push_back(g.index_of(element_from(g, e)));
  return out;
}

inline Json counts_json(const std::map<std::string, std::int64_t>& m) {
  Json o = Json::object();
  for (const auto& [k, v] : m) o[k] = v;
  return o;
}

inline std::map<std::string, std::int64_t> counts_from(const Json& j) {
  std::map<std::string, std::int64_t> m;
  for (const auto& [k, v] : j.items()) m[k] = v.get<std::int64_t>();
  return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Set documents: {"group":[2,2,3,3],"set":[[0,0,0,0],[1,0,0,0]]}

struct SetDocument {
  std::vector<std::int64_t> group;
  std::vector<Element> set;
  std::optional<std::vector<Count>> multiplicities;

  Group make_group() const { return Group(group); }

  Multiset multiset() const {
    const Group g = make_group();
    std::vector<Multiset::Entry> e;
    for (std::size_t i = 0; i < set.size(); ++i)
      e.emplace_back(g.index_of(set[i]), multiplicities ? (*multiplicities)[i] : 1);
    return Multiset(g, std::move(e));
  }

  static SetDocument of(const Multiset& m) {
    SetDocument d;
    d.group = m.group().moduli();
    bool plain = true;
    std::vector<Count> mult;
    for (const auto& [x, c] : m) {
      d.set.push_back(m.group().element_at(x));
      mult.push_back(c);
      plain = plain && c == 1;
    }
    if (!plain) d.multiplicities = std::move(mult);
    return d;
  }

  friend bool operator==(const SetDocument&, const SetDocument&) = default;
};

inline Json to_json(const SetDocument& d) {
  Json j;
  j["group"] = d.group;
  Json s = Json::array();
  for (const auto& x : d.set) s.push_back(detail::element_json(x));
  j["set"] = std::move(s);
  if (d.multiplicities) j["multiplicities"] = *d.multiplicities;
  return j;
}

inline SetDocument set_document_from_json(const Json& j) {
  return detail::json_guard([&] {
    if (!j.is_object() || !j.contains("group") || !j.contains("set"))
      fail(Errc::ParseError, "set document needs \"group\" and \"set\"");
    SetDocument d;
    d.group = j.at("group").get<std::vector<std::int64_t>>();
    const Group g(d.group);
    for (const auto& e : j.at("set")) d.set.push_back(detail::element_from(g, e));
    if (j.contains("multiplicities")) {
      auto m = j.at("multiplicities").get<std::vector<Count>>();
      if (m.size() != d.set.size()) fail(Errc::ParseError, "multiplicities must align with set");
      for (auto c : m)
        if (c < 1) fail(Errc::ParseError, "multiplicities must be positive");
      d.multiplicities = std::move(m);
    }
    return d;
  });
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::ParseError, e.what());
  }
}

inline SetDocument parse_set_document(const std::string& text) { return set_document_from_json(parse_json(text)); }

inline SetDocument read_set_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_set_document(ss.str());
}

// ---------------------------------------------------------------------------
// Verification reports

inline Json to_json(const Group& g, const CandidateRecord& r) {
  Json j;
  j["set"] = detail::indices_json(g, r.set);
  j["spectral"] = r.spectral;
  j["tile"] = r.tile;
  j["witness"] = detail::indices_json(g, r.witness);
  j["note"] = r.note;
  return j;
}

inline CandidateRecord candidate_from_json(const Group& g, const Json& j) {
  CandidateRecord r;
  r.set = detail::indices_from(g, j.at("set"));
  r.spectral = j.at("spectral").get<bool>();
  r.tile = j.at("tile").get<bool>();
  r.witness = detail::indices_from(g, j.at("witness"));
  r.note = j.at("note").get<std::string>();
  return r;
}

inline Json to_json(const VerificationReport& rep) {
  const Group g(rep.moduli);
  auto records = [&](const std::vector<CandidateRecord>& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(to_json(g, r));
    return a;
  };
  Json j;
  j["group"] = rep.moduli;
  j["mode"] = rep.mode;
  j["seed"] = rep.seed;
  j["samples_per_size"] = rep.samples_per_size;
  j["canonicalized"] = rep.canonicalized;
  j["budgets"] = {{"spectrum", rep.budgets.spectrum}, {"complement", rep.budgets.complement}};
  Json sizes = Json::array();
  for (const auto& s : rep.per_size) {
    Json t;
    t["size"] = s.size;
    t["examined"] = s.examined;
    t["spectral"] = s.spectral;
    t["tiles"] = s.tiles;
    t["both_yes"] = s.both_yes;
    t["both_no"] = s.both_no;
    t["mismatches"] = records(s.mismatches);
    t["undecided"] = records(s.undecided);
    t["subgroup_tiles"] = s.subgroup_tiles;
    t["subgroup_violations"] = records(s.subgroup_violations);
    t["spectrum_constructions"] = detail::counts_json(s.spectrum_constructions);
    t["complement_constructions"] = detail::counts_json(s.complement_constructions);
    t["construction_failures"] = records(s.construction_failures);
    t["spectral_size_not_dividing"] = s.spectral_size_not_dividing;
    t["spectrum_nodes"] = s.spectrum_nodes;
    t["complement_nodes"] = s.complement_nodes;
    sizes.push_back(std::move(t));
  }
  j["per_size"] = std::move(sizes);
  j["totals"] = {{"mismatches", rep.mismatch_count()},
                 {"undecided", rep.undecided_count()},
                 {"subgroup_violations", rep.subgroup_violation_count()},
                 {"construction_failures", rep.construction_failure_count()}};
  j["elapsed_seconds"] = rep.elapsed_seconds;
  return j;
}

inline VerificationReport verification_report_from_json(const Json& j) {
  return detail::json_guard([&] {
    VerificationReport rep;
    rep.moduli = j.at("group").get<std::vector<std::int64_t>>();
    const Group g(rep.moduli);
    auto records = [&](const Json& a) {
      std::vector<CandidateRecord> v;
      for (const auto& r : a) v.push_back(candidate_from_json(g, r));
      return v;
    };
    rep.mode = j.at("mode").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.samples_per_size = j.at("samples_per_size").get<std::int64_t>();
    rep.canonicalized = j.at("canonicalized").get<bool>();
    rep.budgets.spectrum = j.at("budgets").at("spectrum").get<std::uint64_t>();
    rep.budgets.complement = j.at("budgets").at("complement").get<std::uint64_t>();
    for (const auto& t : j.at("per_size")) {
      SizeTally s;
      s.size = t.at("size").get<std::int64_t>();
      s.examined = t.at("examined").get<std::int64_t>();
      s.spectral = t.at("spectral").get<std::int64_t>();
      s.tiles = t.at("tiles").get<std::int64_t>();
      s.both_yes = t.at("both_yes").get<std::int64_t>();
      s.both_no = t.at("both_no").get<std::int64_t>();
      s.mismatches = records(t.at("mismatches"));
      s.undecided = records(t.at("undecided"));
      s.subgroup_tiles = t.at("subgroup_tiles").get<std::int64_t>();
      s.subgroup_violations = records(t.at("subgroup_violations"));
      s.spectrum_constructions = detail::counts_from(t.at("spectrum_constructions"));
      s.complement_constructions = detail::counts_from(t.at("complement_constructions"));
      s.construction_failures = records(t.at("construction_failures"));
      s.spectral_size_not_dividing = t.at("spectral_size_not_dividing").get<std::int64_t>();
      s.spectrum_nodes = t.at("spectrum_nodes").get<std::uint64_t>();
      s.complement_nodes = t.at("complement_nodes").get<std::uint64_t>();
      rep.per_size.push_back(std::move(s));
    }
    rep.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    return rep;
  });
}

// ---------------------------------------------------------------------------
// Probe reports

inline Json to_json(const ProbeReport& rep) {
  const Group g(rep.moduli);
  Json j;
  j["group"] = rep.moduli;
  j["seed"] = rep.seed;
  j["vacuous"] = rep.vacuous;
  j["exhaustive"] = false;
  Json sizes = Json::array();
  for (const auto& s : rep.per_size) {
    Json t;
    t["size"] = s.size;
    t["examined"] = s.examined;
    t["spectral_found"] = s.spectral_found;
    t["undecided"] = s.undecided;
    t["rejected_by"] = detail::counts_json(s.rejected_by);
    t["assumption_a"] = s.assumption_a;
    t["undetermined_pair"] = s.undetermined_pair;
    Json sets = Json::array();
    for (const auto& set : s.spectral_sets) sets.push_back(detail::indices_json(g, set));
    t["spectral_sets"] = std::move(sets);
    t["nodes"] = s.nodes;
    sizes.push_back(std::move(t));
  }
  j["per_size"] = std::move(sizes);
  j["elapsed_seconds"] = rep.elapsed_seconds;
  return j;
}

inline ProbeReport probe_report_from_json(const Json& j) {
  return detail::json_guard([&] {
    ProbeReport rep;
    rep.moduli = j.at("group").get<std::vector<std::int64_t>>();
    const Group g(rep.moduli);
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.vacuous = j.at("vacuous").get<bool>();
    for (const auto& t : j.at("per_size")) {
      ProbeSizeReport s;
      s.size = t.at("size").get<std::int64_t>();
      s.examined = t.at("examined").get<std::int64_t>();
      s.spectral_found = t.at("spectral_found").get<std::int64_t>();
      s.undecided = t.at("undecided").get<std::int64_t>();
      s.rejected_by = detail::counts_from(t.at("rejected_by"));
      s.assumption_a = t.at("assumption_a").get<std::int64_t>();
      s.undetermined_pair = t.at("undetermined_pair").get<std::int64_t>();
      for (const auto& set : t.at("spectral_sets")) s.spectral_sets.push_back(detail::indices_from(g, set));
      s.nodes = t.at("nodes").get<std::uint64_t>();
      rep.per_size.push_back(std::move(s));
    }
    rep.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    return rep;
  });
}

// ---------------------------------------------------------------------------
// Cube decompositions

inline Json to_json(const std::optional<CubeDecomposition>& d) {
  if (!d) return Json("none");
  Json j;
  j["p"] = d->p;
  j["q"] = d->q;
  j["row_coeffs"] = d->row_coeffs;
  j["col_coeffs"] = d->col_coeffs;
  return j;
}

inline std::optional<CubeDecomposition> cube_decomposition_from_json(const Json& j) {
  return detail::json_guard([&]() -> std::optional<CubeDecomposition> {
    if (j.is_string() && j.get<std::string>() == "none") return std::nullopt;
    CubeDecomposition d;
    d.p = j.at("p").get<std::int64_t>();
    d.q = j.at("q").get<std::int64_t>();
    d.row_coeffs = j.at("row_coeffs").get<std::vector<Count>>();
    d.col_coeffs = j.at("col_coeffs").get<std::vector<Count>>();
    if (static_cast<std::int64_t>(d.row_coeffs.size()) != d.q || static_cast<std::int64_t>(d.col_coeffs.size()) != d.p)
      fail(Errc::ParseError, "coefficient vectors do not match p and q");
    return d;
  });
}

// ---------------------------------------------------------------------------
// Analysis

struct DirectionZeros {
  Direction direction;
  std::vector<Element> members;

  friend bool operator==(const DirectionZeros&, const DirectionZeros&) = default;
};

struct LeafSummary {
  std::string case_tag;
  std::vector<Count> leaf_sizes;  // by a in Z_p^2
  std::optional<Count> constancy_c;
  std::vector<Count> constancy_d;

  friend bool operator==(const LeafSummary&, const LeafSummary&) = default;
};

struct AnalysisReport {
  SetDocument input;
  Count size = 0;
  std::int64_t gcd_class = 0;
  std::vector<DirectionZeros> zero_set;
  std::vector<Direction> determined_directions;
  std::string spectral;  // true | false | undecided | not-a-set
  std::vector<Element> spectrum;
  std::string tile;
  std::vector<Element> complement;
  std::string complement_method;
  std::optional<LeafSummary> leaves;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

inline AnalysisReport analyze(const Multiset& s, std::uint64_t budget = kDefaultBudget) {
  if (s.empty()) fail(Errc::EmptyInput, "cannot analyze an empty set");
  const Group& g = s.group();
  const auto& t = tables_for(g);
  AnalysisReport r;
  r.input = SetDocument::of(s);
  r.size = s.mass();
  r.gcd_class = std::gcd(s.mass(), g.order());

  const auto zs = zero_set(g, s);
  std::map<Index, std::vector<Element>> by_dir;
  for (auto x : zs.indices()) by_dir[t.direction_rep(x)].push_back(g.element_at(x));
  for (auto& [rep, members] : by_dir)
    r.zero_set.push_back({Direction{g.element_at(rep), t.element_order(rep)}, std::move(members)});
  r.determined_directions = determined_directions(s);

  if (!s.is_set()) {
    r.spectral = r.tile = "not-a-set";
  } else {
    auto sp = find_spectrum(s, budget);
    r.spectral = sp.status == SearchStatus::Found ? "true" : sp.status == SearchStatus::None ? "false" : "undecided";
    if (sp.witness)
      for (const auto& [x, c] : sp.witness->lambda) r.spectrum.push_back(g.element_at(x));
    std::optional<ComplementWitness> w;
    SearchStatus ts = SearchStatus::None;
    if (g.order() % s.mass() == 0) {
      if (auto h = tiles_by_subgroup(s)) {
        w = ComplementWitness{h->as_multiset(), ComplementMethod::Subgroup};
        ts = SearchStatus::Found;
      } else {
        auto c = find_complement(s, budget);
        ts = c.status;
        w = c.witness;
      }
    }
    r.tile = ts == SearchStatus::Found ? "true" : ts == SearchStatus::None ? "false" : "undecided";
    if (w) {
      for (const auto& [x, c] : w->t) r.complement.push_back(g.element_at(x));
      r.complement_method = std::string(to_string(w->method));
    }
  }

  if (auto shape = PQShape::detect(g)) {
    LeafSummary ls;
    ls.case_tag = std::string(to_string(classify_case(*shape, s).kind));
    for (const auto& leaf : leaf_decomposition(*shape, s).leaves) ls.leaf_sizes.push_back(leaf.mass());
    if (auto lc = leaf_constancy(*shape, s)) {
      ls.constancy_c = lc->c;
      ls.constancy_d = lc->d.dense();
    }
    r.leaves = std::move(ls);
  }
  return r;
}

inline Json to_json(const AnalysisReport& r) {
  auto elems = [](const std::vector<Element>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(detail::element_json(x));
    return a;
  };
  Json j;
  j["input"] = to_json(r.input);
  j["size"] = r.size;
  j["gcd_class"] = r.gcd_class;
  Json zs = Json::array();
  for (const auto& d : r.zero_set)
    zs.push_back({{"direction", detail::element_json(d.direction.rep)}, {"order", d.direction.ord}, {"members", elems(d.members)}});
  j["zero_set"] = std::move(zs);
  Json dd = Json::array();
  for (const auto& d : r.determined_directions)
    dd.push_back({{"direction", detail::element_json(d.rep)}, {"order", d.ord}});
  j["determined_directions"] = std::move(dd);
  j["spectral"] = r.spectral;
  j["spectrum"] = elems(r.spectrum);
  j["tile"] = r.tile;
  j["complement"] = elems(r.complement);
  j["complement_method"] = r.complement_method;
  if (r.leaves) {
    Json l;
    l["case"] = r.leaves->case_tag;
    l["leaf_sizes"] = r.leaves->leaf_sizes;
    l["constancy_c"] = r.leaves->constancy_c ? Json(*r.leaves->constancy_c) : Json(nullptr);
    l["constancy_d"] = r.leaves->constancy_d;
    j["leaves"] = std::move(l);
  }
  return j;
}

inline AnalysisReport analysis_report_from_json(const Json& j) {
  return detail::json_guard([&] {
    AnalysisReport r;
    r.input = set_document_from_json(j.at("input"));
    const Group g(r.input.group);
    auto elems = [&](const Json& a) {
      std::vector<Element> v;
      for (const auto& x : a) v.push_back(detail::element_from(g, x));
      return v;
    };
    r.size = j.at("size").get<Count>();
    r.gcd_class = j.at("gcd_class").get<std::int64_t>();
    for (const auto& d : j.at("zero_set"))
      r.zero_set.push_back(
          {Direction{detail::element_from(g, d.at("direction")), d.at("order").get<std::int64_t>()}, elems(d.at("members"))});
    for (const auto& d : j.at("determined_directions"))
      r.determined_directions.push_back({detail::element_from(g, d.at("direction")), d.at("order").get<std::int64_t>()});
    r.spectral = j.at("spectral").get<std::string>();
    r.spectrum = elems(j.at("spectrum"));
    r.tile = j.at("tile").get<std::string>();
    r.complement = elems(j.at("complement"));
    r.complement_method = j.at("complement_method").get<std::string>();
    if (j.contains("leaves")) {
      const auto& l = j.at("leaves");
      LeafSummary ls;
      ls.case_tag = l.at("case").get<std::string>();
      ls.leaf_sizes = l.at("leaf_sizes").get<std::vector<Count>>();
      if (!l.at("constancy_c").is_null()) ls.constancy_c = l.at("constancy_c").get<Count>();
      ls.constancy_d = l.at("constancy_d").get<std::vector<Count>>();
      r.leaves = std::move(ls);
    }
    return r;
  });
}

}  // namespace fuglede
