#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fuglede/fuglede.hpp"

using namespace fuglede;

namespace {

enum Exit { kOk = 0, kUsage = 1, kMismatch = 2, kUndecided = 3 };

std::vector<std::int64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(Errc::ParseError, std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) fail(Errc::ParseError, std::string("empty ") + what);
  return out;
}

struct Options {
  std::string group;
  std::string set_file;
  std::string sizes = "all";
  std::string output;
  bool exhaustive = false;
  std::int64_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = kDefaultBudget;
  bool canonicalize = false;
  unsigned workers = 1;
  bool constructive = false;
  bool subgroup_claim = false;
  bool uniform = false;
};

void emit(const Options& o, const Json& j) {
  if (o.output.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(o.output);
  if (!out) fail(Errc::ParseError, "cannot write " + o.output);
  out << j.dump(2) << "\n";
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  const std::uint64_t s = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
  std::cerr << "seed: " << s << "\n";
  return s;
}

std::vector<std::int64_t> resolve_sizes(const Options& o, std::int64_t order) {
  if (o.sizes == "all") {
    std::vector<std::int64_t> v;
    for (std::int64_t k = 1; k <= order; ++k) v.push_back(k);
    return v;
  }
  return parse_list(o.sizes, "size");
}

Multiset load_set(const Options& o) { return read_set_document(o.set_file).multiset(); }

int cmd_analyze(const Options& o) {
  const auto r = analyze(load_set(o), o.budget);
  emit(o, to_json(r));
  return r.spectral == "undecided" || r.tile == "undecided" ? kUndecided : kOk;
}

int cmd_spectrum(const Options& o) {
  const auto s = load_set(o);
  const auto r = find_spectrum(s, o.budget);
  Json j;
  j["input"] = to_json(SetDocument::of(s));
  j["status"] = std::string(to_string(r.status));
  Json lam = Json::array();
  if (r.witness)
    for (const auto& [x, c] : r.witness->lambda) lam.push_back(s.group().element_at(x).coords);
  j["spectrum"] = std::move(lam);
  j["checked_pairs"] = r.witness ? r.witness->checked_pairs : 0;
  j["nodes"] = r.nodes;
  emit(o, j);
  return r.status == SearchStatus::Undecided ? kUndecided : kOk;
}

int cmd_complement(const Options& o) {
  const auto s = load_set(o);
  detail::require_set(s, "S");
  Json j;
  j["input"] = to_json(SetDocument::of(s));
  SearchStatus status = SearchStatus::None;
  std::optional<ComplementWitness> w;
  std::uint64_t nodes = 0;
  if (s.group().order() % s.mass() == 0) {
    if (auto h = tiles_by_subgroup(s)) {
      status = SearchStatus::Found;
      w = ComplementWitness{h->as_multiset(), ComplementMethod::Subgroup};
    } else {
      auto r = find_complement(s, o.budget);
      status = r.status;
      w = r.witness;
      nodes = r.nodes;
    }
  }
  j["status"] = std::string(to_string(status));
  Json t = Json::array();
  if (w)
    for (const auto& [x, c] : w->t) t.push_back(s.group().element_at(x).coords);
  j["complement"] = std::move(t);
  j["method"] = w ? std::string(to_string(w->method)) : "";
  j["nodes"] = nodes;
  emit(o, j);
  return status == SearchStatus::Undecided ? kUndecided : kOk;
}

int cmd_decompose(const Options& o) {
  const auto s = load_set(o);
  Json j;
  j["input"] = to_json(SetDocument::of(s));
  j["decomposition"] = to_json(cube_decompose(s));
  emit(o, j);
  return kOk;
}

EnumerationMode mode_of(const Options& o) {
  if (o.exhaustive == (o.samples > 0)) fail(Errc::InvalidArgument, "choose exactly one of --exhaustive and --samples N");
  if (o.exhaustive) return EnumerationMode::all(o.canonicalize);
  return EnumerationMode::sample(resolve_seed(o), o.samples);
}

int cmd_enumerate(const Options& o) {
  const Group g(parse_list(o.group, "modulus"));
  const auto mode = mode_of(o);
  Json j;
  j["group"] = g.moduli();
  j["mode"] = mode.exhaustive ? "exhaustive" : "sample";
  j["seed"] = mode.seed;
  j["canonicalized"] = mode.canonicalize;
  Json per = Json::array();
  std::int64_t undecided = 0;
  for (auto k : resolve_sizes(o, g.order())) {
    if (k < 1) fail(Errc::InvalidArgument, "sizes must be positive");
    auto stream = enumerate_tiles(g, static_cast<std::size_t>(k), mode, o.budget);
    Json tiles = Json::array();
    while (auto tile = stream.next()) {
      Json e;
      e["set"] = detail::indices_json(g, tile->first.support());
      e["complement"] = detail::indices_json(g, tile->second.t.support());
      e["method"] = std::string(to_string(tile->second.method));
      tiles.push_back(std::move(e));
    }
    undecided += stream.undecided();
    Json s;
    s["size"] = k;
    s["count"] = tiles.size();
    s["undecided"] = stream.undecided();
    s["tiles"] = std::move(tiles);
    per.push_back(std::move(s));
  }
  j["per_size"] = std::move(per);
  emit(o, j);
  return undecided ? kUndecided : kOk;
}

int cmd_verify(const Options& o) {
  VerificationPlan plan;
  plan.group = Group(parse_list(o.group, "modulus"));
  plan.sizes = resolve_sizes(o, plan.group.order());
  plan.mode = mode_of(o);
  plan.budgets = {o.budget, o.budget};
  plan.constructive = o.constructive;
  plan.workers = o.workers;
  const auto rep = o.subgroup_claim ? verify_subgroup_tiling(plan) : verify_fuglede(plan);
  emit(o, to_json(rep));
  if (rep.mismatch_count() || rep.construction_failure_count()) return kMismatch;
  if (o.subgroup_claim && rep.subgroup_violation_count()) return kMismatch;
  if (rep.undecided_count()) return kUndecided;
  return kOk;
}

int cmd_probe(const Options& o) {
  const auto shape = PQShape::of(Group(parse_list(o.group, "modulus")));
  if (o.samples < 1) fail(Errc::InvalidArgument, "probe-case5 needs --samples N");
  ProbePlan plan;
  if (o.sizes != "all") plan.sizes = parse_list(o.sizes, "size");
  plan.seed = resolve_seed(o);
  plan.count = o.samples;
  plan.budget = o.budget;
  plan.leaf_structured = !o.uniform;
  const auto rep = case5_nonexistence_probe(shape, plan);
  emit(o, to_json(rep));
  if (rep.spectral_found()) return kMismatch;
  if (rep.undecided()) return kUndecided;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sets and tilings in finite abelian groups"};
  app.require_subcommand(1);
  Options o;

  auto set_opts = [&](CLI::App* c) {
    c->add_option("--set", o.set_file, "Set document (JSON)")->required();
    c->add_option("--budget", o.budget, "Search node budget");
    c->add_option("-o,--output", o.output, "Write the report here instead of stdout");
  };
  auto sweep_opts = [&](CLI::App* c) {
    c->add_option("--group", o.group, "Comma-separated moduli")->required();
    c->add_option("--sizes", o.sizes, "Comma-separated sizes or 'all'");
    c->add_flag("--exhaustive", o.exhaustive, "Every 0-containing subset");
    c->add_option("--samples", o.samples, "Seeded random subsets per size");
    c->add_option("--seed", o.seed, "Sampling seed");
    c->add_option("--budget", o.budget, "Search node budget");
    c->add_flag("--canonicalize", o.canonicalize, "One representative per Aut(G) x translation orbit");
    c->add_option("-o,--output", o.output, "Write the report here instead of stdout");
  };

  auto* analyze = app.add_subcommand("analyze", "Zero set, directions, spectral and tile verdicts");
  set_opts(analyze);
  auto* spectrum = app.add_subcommand("spectrum", "Search for a spectrum");
  set_opts(spectrum);
  auto* complement = app.add_subcommand("complement", "Search for a tiling complement");
  set_opts(complement);
  auto* decompose = app.add_subcommand("decompose", "Z_p x Z_q coset decomposition");
  set_opts(decompose);
  auto* enumerate = app.add_subcommand("enumerate-tiles", "Tiles containing 0 with complements");
  sweep_opts(enumerate);
  auto* verify = app.add_subcommand("verify", "Spectral <=> tile sweep");
  sweep_opts(verify);
  verify->add_option("--workers", o.workers, "Worker threads");
  verify->add_flag("--constructive", o.constructive, "Also build and re-verify case witnesses");
  verify->add_flag("--subgroup-tiling", o.subgroup_claim, "Fail on tiles without a subgroup complement");
  auto* probe = app.add_subcommand("probe-case5", "Sample candidates for the pq || |S| range");
  probe->add_option("--group", o.group, "Comma-separated moduli")->required();
  probe->add_option("--sizes", o.sizes, "Comma-separated sizes or 'all'");
  probe->add_option("--samples", o.samples, "Candidates per size")->required();
  probe->add_option("--seed", o.seed, "Sampling seed");
  probe->add_option("--budget", o.budget, "Search node budget");
  probe->add_flag("--uniform", o.uniform, "Uniform subsets instead of leaf-structured ones");
  probe->add_option("-o,--output", o.output, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*spectrum) return cmd_spectrum(o);
    if (*complement) return cmd_complement(o);
    if (*decompose) return cmd_decompose(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*verify) return cmd_verify(o);
    if (*probe) return cmd_probe(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::BudgetExhausted: return kUndecided;
      case Errc::TheoremViolation: return kMismatch;
      default: return kUsage;
    }
  }
  return kUsage;
}
