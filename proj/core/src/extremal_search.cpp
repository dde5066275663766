#include "sphcover/extremal_search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sphcover/constructions.hpp"
#include "sphcover/sampling.hpp"

namespace sphcover {

void SearchConfig::validate() const {
  if (d < 1 || n < 1) throw std::invalid_argument("search: d and n must be >= 1");
  if (N < d + 2 * n) {
    throw std::invalid_argument("search: N = " + std::to_string(N) + " < d+2n = " + std::to_string(d + 2 * n) +
                                "; so few open sets cannot form an antipodal n-fold cover");
  }
  if (N > 14) throw std::invalid_argument("search: N exceeds the exact engine cap of 14");
  if (iterations < 1 || restarts < 1) throw std::invalid_argument("search: iterations and restarts must be >= 1");
  if (first_step_exp < 0 || last_step_exp < first_step_exp) throw std::invalid_argument("search: bad step schedule");
  if (!(initial_temperature > 0)) throw std::invalid_argument("search: temperature must be positive");
}

std::string_view to_string(SearchVerdict v) {
  return v == SearchVerdict::SupportsConjecture ? "SUPPORTS_CONJECTURE" : "COUNTEREXAMPLE_CANDIDATE";
}

namespace {

struct State {
  std::vector<Direction> poles;
  MultiplicityReport report;
  bool feasible = false;
};

Rat max_abs(const Direction& q) {
  Rat m = 0;
  for (const auto& c : q.coords()) m = std::max<Rat>(m, abs(c));
  return m;
}

class Annealer {
 public:
  Annealer(const SearchConfig& cfg, SearchResult& out) : cfg_(cfg), out_(out) {}

  State evaluate(std::vector<Direction> poles) {
    State s;
    s.poles = std::move(poles);
    s.report = multiplicity_extrema(std::span<const Direction>(s.poles), Region::Sphere);
    out_.lp_calls += s.report.lp_calls;
    ++out_.evaluations;
    s.feasible = s.report.min_mult >= cfg_.n;
    if (s.feasible && s.report.max_mult < (cfg_.d + 1) / 2 + cfg_.n) ++out_.floor_violations;
    return s;
  }

  State initial(std::mt19937_64& rng) {
    std::vector<Direction> poles = gale_points(cfg_.d, cfg_.n).points;
    std::uniform_int_distribution<long> coord(-4, 4);
    while (static_cast<int>(poles.size()) < cfg_.N) {
      std::vector<Rat> c(static_cast<std::size_t>(cfg_.d) + 1);
      bool zero = true;
      for (auto& x : c) {
        x = coord(rng);
        zero = zero && x == 0;
      }
      if (!zero) poles.emplace_back(std::move(c));
    }
    return evaluate(std::move(poles));
  }

  std::optional<std::vector<Direction>> propose(const std::vector<Direction>& poles, int step_exp,
                                                std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> which(0, poles.size() - 1);
    std::uniform_int_distribution<std::size_t> axis(0, static_cast<std::size_t>(cfg_.d));
    std::uniform_int_distribution<int> dir(0, 1);
    const std::size_t j = which(rng);
    std::vector<Rat> c(poles[j].coords().begin(), poles[j].coords().end());
    Rat step = max_abs(poles[j]);
    mpz_class pow2 = 1;
    pow2 <<= static_cast<mp_bitcnt_t>(step_exp);
    step /= pow2;
    c[axis(rng)] += dir(rng) ? step : Rat(-step);
    if (std::all_of(c.begin(), c.end(), [](const Rat& x) { return x == 0; })) return std::nullopt;
    auto next = poles;
    next[j] = Direction(std::move(c));
    return next;
  }

  void run_restart(int r) {
    std::mt19937_64 rng(sample_seed(cfg_.seed, static_cast<std::uint64_t>(r)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    State cur = initial(rng);
    // Gale poles plus extras are n-fold already; this only guards the engine.
    if (!cur.feasible) throw std::logic_error("search: initial configuration is not n-fold");
    consider_best(cur, r);

    for (int t = 0; t < cfg_.iterations; ++t) {
      const int k = cfg_.first_step_exp +
                    (cfg_.iterations > 1 ? (cfg_.last_step_exp - cfg_.first_step_exp) * t / (cfg_.iterations - 1) : 0);
      const double temp = cfg_.initial_temperature * (1.0 - static_cast<double>(t) / cfg_.iterations);
      TraceRow row;
      row.restart = r;
      row.iteration = t;
      if (auto next = propose(cur.poles, k, rng)) {
        State cand = evaluate(std::move(*next));
        row.proposal_feasible = cand.feasible;
        if (cand.feasible) {
          const int delta = cand.report.max_mult - cur.report.max_mult;
          if (delta <= 0 || unit(rng) < std::exp(-delta / temp)) {
            cur = std::move(cand);
            row.accepted = true;
            consider_best(cur, r);
          }
        } else {
          ++out_.rejected_infeasible;
        }
      }
      row.objective = cur.report.max_mult;
      row.best = out_.best_report.max_mult;
      out_.trace.push_back(row);
    }
  }

 private:
  void consider_best(const State& s, int r) {
    if (out_.best_poles.empty() || s.report.max_mult < out_.best_report.max_mult) {
      out_.best_poles = s.poles;
      out_.best_report = s.report;
      out_.best_restart = r;
    }
  }

  const SearchConfig& cfg_;
  SearchResult& out_;
};

}  // namespace

SearchResult search(const SearchConfig& config) {
  config.validate();
  SearchResult out;
  out.config = config;
  Annealer annealer(config, out);
  // Restarts run in order so the trace and the best state are reproducible.
  for (int r = 0; r < config.restarts; ++r) annealer.run_restart(r);

  if (out.best_report.max_mult < config.d + config.n && out.best_report.min_mult >= config.n) {
    ExtremaOptions independent;
    independent.bound_pruning = false;
    independent.seed = config.seed ^ 0x9e3779b97f4a7c15ULL;
    out.reverification = multiplicity_extrema(std::span<const Direction>(out.best_poles), Region::Sphere, independent);
    const auto& rv = *out.reverification;
    if (rv.max_mult < config.d + config.n && rv.min_mult >= config.n) {
      out.verdict = SearchVerdict::CounterexampleCandidate;
    }
  }
  return out;
}

nlohmann::json to_json(const SearchResult& r) {
  nlohmann::json poles = nlohmann::json::array();
  for (const auto& p : r.best_poles) poles.push_back(direction_json(p));
  const auto& c = r.config;
  nlohmann::json out = {
      {"config",
       {{"d", c.d},
        {"n", c.n},
        {"N", c.N},
        {"iterations", c.iterations},
        {"restarts", c.restarts},
        {"seed", c.seed},
        {"first_step_exp", c.first_step_exp},
        {"last_step_exp", c.last_step_exp},
        {"initial_temperature", c.initial_temperature}}},
      {"verdict", to_string(r.verdict)},
      {"target", c.d + c.n},
      {"floor", (c.d + 1) / 2 + c.n},
      {"best", {{"poles", poles}, {"restart", r.best_restart}, {"report", to_json(r.best_report)}}},
      {"evaluations", r.evaluations},
      {"rejected_infeasible", r.rejected_infeasible},
      {"floor_violations", r.floor_violations},
      {"lp_calls", r.lp_calls},
      {"scope", "hemisphere covers only; says nothing about general open covers"}};
  if (r.reverification) out["reverification"] = to_json(*r.reverification);
  return out;
}

std::string trace_csv(const SearchResult& r) {
  std::ostringstream os;
  os << "iteration,objective,restart,best,proposal_feasible,accepted\n";
  for (const auto& t : r.trace) {
    os << t.iteration << ',' << t.objective << ',' << t.restart << ',' << t.best << ',' << (t.proposal_feasible ? 1 : 0)
       << ',' << (t.accepted ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace sphcover
