// sphcover: build, verify and render antipodal covers of spheres.
//
// Exit codes: 0 every claim verified, 1 a violation was found, 2 usage or
// regime error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "render.hpp"
#include "run_manifest.hpp"
#include "sphcover/arc_sweep.hpp"
#include "sphcover/bounds.hpp"
#include "sphcover/constructions.hpp"
#include "sphcover/exact_engine.hpp"
#include "sphcover/extremal_search.hpp"
#include "sphcover/kyfan.hpp"
#include "sphcover/sampling.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sphcover;
using sphcover::cli::RunManifest;

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Cover load_cover(const fs::path& path) { return cover_from_json(json::parse(cli::read_file(path))); }

std::string dumped(const json& j) { return j.dump(2) + "\n"; }

// ---- construct -------------------------------------------------------------

struct ConstructArgs {
  std::string type;
  int d = 1;
  int n = 1;
  std::optional<int> m;
  std::vector<std::string> t_values;
  std::optional<double> eps1, eps2;
  double delta1p = 0.25, delta2p = 0.5;
  std::uint64_t check_samples = 20000;
  std::string out;
};

int run_construct(const ConstructArgs& a, RunManifest& manifest) {
  auto need_m = [&] {
    if (!a.m) throw UsageError("--m is required for --type " + a.type);
    return *a.m;
  };
  std::optional<Cover> cover;
  if (a.type == "gale") {
    std::optional<std::vector<Rat>> t;
    if (!a.t_values.empty()) {
      t.emplace();
      for (const auto& s : a.t_values) t->push_back(parse_rat(s));
    }
    cover = gale_cover(a.d, a.n, t);
  } else if (a.type == "bar") {
    cover = bar_cover(a.d, a.n, need_m());
  } else if (a.type == "nm") {
    cover = nm_cover_upper(a.d, a.n, need_m());
  } else if (a.type == "circle") {
    cover = circle_cover(need_m());
  } else if (a.type == "theorem4" || a.type == "belt") {
    BeltParams params;
    if (a.eps1 || a.eps2) {
      if (!a.eps1 || !a.eps2) throw UsageError("--eps1 and --eps2 go together");
      params.eps1 = *a.eps1;
      params.eps2 = *a.eps2;
      params.delta1p = a.delta1p;
      params.delta2p = a.delta2p;
      params.validate();
      const auto checks = check_belt_preconditions(BeltGeometry(a.d, params), a.check_samples);
      manifest.note("precondition_checks", {{"samples", checks.samples},
                                            {"antipodal_violations", checks.antipodal_violations},
                                            {"uncovered", checks.uncovered},
                                            {"max_facet_count", checks.max_facet_count},
                                            {"ok", checks.ok()}});
      if (!checks.ok()) std::cerr << "warning: the given parameters fail the equatorial precondition checks\n";
    } else {
      const auto ap = belt_auto_params(a.d, a.check_samples);
      params = ap.params;
      manifest.note("auto_params", {{"gap", ap.gap}, {"rounds", ap.rounds}, {"eps1", params.eps1}, {"eps2", params.eps2}});
    }
    manifest.seed("precondition_checks", 0xbe17);
    cover = belt_cover(a.d, params);
  } else {
    throw UsageError("unknown --type '" + a.type + "' (gale, bar, nm, circle, belt)");
  }
  manifest.output(a.out, dumped(to_json(*cover)));
  std::cout << a.type << ": " << cover->size() << " sets on S^" << cover->dim() << " -> " << a.out << "\n";
  return kPass;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string cover;
  bool exact = false;
  std::optional<std::uint64_t> samples;
  std::optional<std::string> region;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
};

void print_verdicts(const ClaimsReport& r) {
  for (const auto& v : r.verdicts) {
    std::cout << (v.pass ? "PASS " : "FAIL ") << v.name;
    if (v.name != "antipodal-free") std::cout << "  required " << v.required << ", exact min " << v.observed;
    std::cout << "  (" << v.reason << ")\n";
  }
}

int run_verify(const VerifyArgs& a, RunManifest& manifest) {
  if (a.exact == a.samples.has_value()) throw UsageError("give exactly one of --exact or --samples M");
  manifest.input(a.cover);
  const Cover cover = load_cover(a.cover);
  const Region region = a.region ? parse_region(*a.region) : Region::Sphere;

  if (a.exact) {
    const bool sweep = cover.dim() == 1 && std::none_of(cover.sets().begin(), cover.sets().end(), [](const CoverSet& s) {
                         return std::holds_alternative<BeltSet>(s);
                       });
    if (!cover.is_hemisphere_cover() && !sweep) {
      throw RegimeMismatch("--exact needs a hemisphere cover or a cover of S^1; use --samples for predicate covers");
    }
    const ClaimsReport claims = sweep ? verify_claims_sweep(cover, cover.claims()) : verify_claims(cover, cover.claims());
    const MultiplicityReport rep = sweep ? arc_sweep(cover, region) : multiplicity_extrema(cover, region);
    json out = to_json(rep);
    out["engine"] = sweep ? "arc_sweep" : "multiplicity_extrema";
    out["claims"] = to_json(claims);
    out["verdict"] = claims.all_pass() ? "PASS" : "FAIL";
    manifest.output(a.out, dumped(out));
    print_verdicts(claims);
    std::cout << to_string(region) << ": min " << rep.min_mult << ", max " << rep.max_mult << "\n";
    return claims.all_pass() ? kPass : kViolation;
  }

  SamplePlan plan = default_plan(cover, *a.samples, a.seed);
  manifest.seed("samples", a.seed);
  const auto req = Requirements::from_claims(cover);
  const SamplingReport rep = verify_sampled(cover, plan, req, a.threads);
  json out = to_json(rep);
  const json& stats = out["regions"][std::string(to_string(region))];
  out["region"] = to_string(region);
  for (const char* key : {"min", "max", "min_witness", "max_witness"}) {
    if (stats.contains(key)) out[key] = stats[key];
  }
  manifest.output(a.out, dumped(out));
  std::cout << (rep.pass() ? "PASS" : "FAIL") << " (sampled, falsification only): " << rep.evaluated
            << " points evaluated, " << rep.violation_count << " violations, " << rep.boundary_ambiguous
            << " boundary-ambiguous samples\n";
  return rep.pass() ? kPass : kViolation;
}

// ---- bounds ----------------------------------------------------------------

int run_bounds(int d, int n, std::optional<int> m, const std::string& out, RunManifest& manifest) {
  const BoundsTable t = bounds_table(d, n, m);
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("open"); };
  std::cout << "d=" << d << " n=" << n;
  if (m) std::cout << " m=" << *m;
  std::cout << "\n";
  if (m) {
    std::cout << "  f     in [" << t.f_lower << ", " << t.f_upper << "], exact: " << opt(t.f_exact) << "\n"
              << "  f_bar = " << t.fbar_exact << "\n";
  }
  std::cout << "  Q     in [" << t.Q_lower << ", " << t.Q_upper << "], exact: " << opt(t.Q_exact) << "\n";
  if (!out.empty()) manifest.output(out, dumped(to_json(t)));
  return kPass;
}

// ---- kyfan -----------------------------------------------------------------

int run_kyfan(const std::string& path, std::optional<int> n_flag, const std::string& out, RunManifest& manifest) {
  manifest.input(path);
  const Cover cover = load_cover(path);
  const int n = n_flag.value_or(cover.claims().n);
  const auto lifted = lift_cover(OrderedCover::construction_order(cover), n);
  const auto cert = deep_point(cover, n);
  const bool verified = verify_certificate(cover, lifted, cert);
  const int floor = (cover.dim() + 1) / 2 + n;
  json j = to_json(cert);
  j["verified"] = verified;
  j["required"] = floor;
  manifest.output(out, dumped(j));
  std::cout << "chain of " << cert.chain.size() << " lifted sets; deep point in " << cert.count << " sets (need "
            << floor << "), re-verified: " << (verified ? "yes" : "NO") << "\n";
  if (!cert.pairwise_distinct) std::cout << "note: first tuple coordinates are not pairwise distinct\n";
  return verified && cert.count >= floor && cert.consecutive_distinct ? kPass : kViolation;
}

// ---- search ----------------------------------------------------------------

int run_search(const SearchConfig& cfg, const std::string& out, const std::string& trace, RunManifest& manifest) {
  manifest.seed("search", cfg.seed);
  const SearchResult r = search(cfg);
  manifest.output(out, dumped(to_json(r)));
  if (!trace.empty()) manifest.output(trace, trace_csv(r));
  std::cout << to_string(r.verdict) << ": best exact max " << r.best_report.max_mult << " (target d+n = "
            << cfg.d + cfg.n << "), " << r.evaluations << " exact evaluations\n";
  if (r.floor_violations > 0) {
    std::cout << "ENGINE CHECK FAILED: " << r.floor_violations << " states fell below ceil(d/2)+n\n";
    return kViolation;
  }
  return kPass;
}

// ---- render / restrict -----------------------------------------------------

int run_render(const std::string& path, const std::string& view, const std::string& out, RunManifest& manifest) {
  manifest.input(path);
  const Cover cover = load_cover(path);
  manifest.output(out, cli::render_svg(cover, cli::parse_view(view)));
  std::cout << "wrote " << out << "\n";
  return kPass;
}

int run_restrict(const std::string& path, const std::string& out, RunManifest& manifest) {
  manifest.input(path);
  const Cover restricted = restrict_to_equator(load_cover(path));
  manifest.output(out, dumped(to_json(restricted)));
  std::cout << restricted.size() << " sets on S^" << restricted.dim() << " -> " << out << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Antipodal covers of spheres: constructions, exact and sampled verification"};
  app.set_version_flag("--version", std::string(SPHCOVER_VERSION));
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a cover and write it as JSON");
  construct->add_option("--type", ca.type, "gale | bar | nm | circle | belt")->required();
  construct->add_option("--d", ca.d, "sphere dimension");
  construct->add_option("--n", ca.n, "fold of the whole cover");
  construct->add_option("--m", ca.m, "fold of the northern hemisphere");
  construct->add_option("--t", ca.t_values, "Gale parameters as p/q, d+2n of them");
  construct->add_option("--eps1", ca.eps1);
  construct->add_option("--eps2", ca.eps2);
  construct->add_option("--delta1p", ca.delta1p);
  construct->add_option("--delta2p", ca.delta2p);
  construct->add_option("--check-samples", ca.check_samples, "equatorial samples for the belt precondition checks");
  construct->add_option("-o,--out", ca.out)->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a cover's claims exactly or by sampling");
  verify->add_option("cover", va.cover)->required()->check(CLI::ExistingFile);
  verify->add_flag("--exact", va.exact);
  verify->add_option("--samples", va.samples, "number of seeded samples (each also checks its antipode)");
  verify->add_option("--region", va.region, "SPHERE | OPEN_NORTH | CLOSED_NORTH | EQUATOR | OPEN_SOUTH");
  verify->add_option("--seed", va.seed);
  verify->add_option("--threads", va.threads, "0 = hardware concurrency");
  verify->add_option("-o,--out", va.out)->required();

  int bd = 1, bn = 1;
  std::optional<int> bm;
  std::string bout;
  auto* bounds = app.add_subcommand("bounds", "Known values and bounds for f, f_bar and Q");
  bounds->add_option("--d", bd)->required();
  bounds->add_option("--n", bn)->required();
  bounds->add_option("--m", bm);
  bounds->add_option("-o,--out", bout, "also write JSON");

  std::string kcover, kout;
  std::optional<int> kn;
  auto* kyfan = app.add_subcommand("kyfan", "Alternating chain and deep point certificate");
  kyfan->add_option("cover", kcover)->required()->check(CLI::ExistingFile);
  kyfan->add_option("--n", kn, "fold used for the lift (default: the cover's claim)");
  kyfan->add_option("-o,--out", kout)->required();

  SearchConfig sc;
  std::string sout, strace;
  auto* srch = app.add_subcommand("search", "Anneal hemisphere poles looking for shallow n-fold covers");
  srch->add_option("--d", sc.d);
  srch->add_option("--n", sc.n);
  srch->add_option("--N", sc.N, "number of hemispheres");
  srch->add_option("--iterations", sc.iterations);
  srch->add_option("--restarts", sc.restarts);
  srch->add_option("--seed", sc.seed);
  srch->add_option("--first-step-exp", sc.first_step_exp);
  srch->add_option("--last-step-exp", sc.last_step_exp);
  srch->add_option("-o,--out", sout)->required();
  srch->add_option("--trace", strace, "CSV of the objective per iteration");

  std::string rcover, rview = "equator", rout;
  auto* render = app.add_subcommand("render", "Draw a cover of S^1 or S^2 as SVG");
  render->add_option("cover", rcover)->required()->check(CLI::ExistingFile);
  render->add_option("--view", rview, "equator | north | south");
  render->add_option("-o,--out", rout)->required();

  std::string qcover, qout;
  auto* restrict_cmd = app.add_subcommand("restrict", "Restrict a hemisphere cover to the equator");
  restrict_cmd->add_option("cover", qcover)->required()->check(CLI::ExistingFile);
  restrict_cmd->add_option("-o,--out", qout)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  const auto* sub = app.get_subcommands().front();
  RunManifest manifest(sub->get_name(), std::vector<std::string>(argv, argv + argc));
  int code = kUsage;
  try {
    if (sub == construct) code = run_construct(ca, manifest);
    else if (sub == verify) code = run_verify(va, manifest);
    else if (sub == bounds) code = run_bounds(bd, bn, bm, bout, manifest);
    else if (sub == kyfan) code = run_kyfan(kcover, kn, kout, manifest);
    else if (sub == srch) code = run_search(sc, sout, strace, manifest);
    else if (sub == render) code = run_render(rcover, rview, rout, manifest);
    else if (sub == restrict_cmd) code = run_restrict(qcover, qout, manifest);
  } catch (const PreconditionViolation& e) {
    std::cerr << "violation: " << e.what() << "\n";
    code = kViolation;
  } catch (const InternalInconsistency& e) {
    std::cerr << "INTERNAL INCONSISTENCY: " << e.what() << "\n";
    code = kViolation;
  } catch (const NoParametersFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kViolation;
  } catch (const std::exception& e) {
    // Regime mismatches, cap overruns, malformed files and bad arguments.
    std::cerr << "error: " << e.what() << "\n";
    code = kUsage;
  }
  try {
    manifest.finish(code);
  } catch (const std::exception& e) {
    std::cerr << "error writing manifest: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
