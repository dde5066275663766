#include "sphcover/kyfan.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "sphcover/arc_sweep.hpp"
#include "sphcover/exact_engine.hpp"
#include "sphcover/sampling.hpp"

namespace sphcover {

OrderedCover OrderedCover::construction_order(const Cover& cover) {
  OrderedCover oc;
  oc.base = &cover;
  oc.order.resize(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) oc.order[i] = static_cast<int>(i);
  return oc;
}

void OrderedCover::validate() const {
  if (!base) throw std::invalid_argument("ordered cover without a base");
  if (order.size() != base->size()) throw std::invalid_argument("order must rank every set exactly once");
  std::vector<bool> seen(order.size(), false);
  for (int i : order) {
    if (i < 0 || static_cast<std::size_t>(i) >= order.size() || seen[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("order is not a permutation of the set indices");
    }
    seen[static_cast<std::size_t>(i)] = true;
  }
}

std::vector<std::vector<Direction>> convex_form(const Cover& cover) {
  std::vector<std::vector<Direction>> out;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const auto& s = cover.sets()[i];
    if (const auto* h = std::get_if<Hemisphere>(&s)) {
      out.push_back({h->pole});
    } else if (cover.dim() == 1 && !std::holds_alternative<BeltSet>(s)) {
      try {
        out.push_back(arc_half_planes(s));
      } catch (const RegimeMismatch&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw PreconditionViolation("set " + std::to_string(i) + ": " + e.what());
      }
    } else {
      throw RegimeMismatch("chain search needs sets with an exact emptiness test (hemispheres or S^1 arcs)");
    }
  }
  return out;
}

namespace {

bool inside(std::span<const Direction> poles, int sigma, const Direction& x) {
  return std::all_of(poles.begin(), poles.end(), [&](const Direction& q) { return sign(dot_exact(q, x)) == sigma; });
}

Direction exact_from(const Eigen::VectorXd& v) {
  std::vector<Rat> c;
  for (Eigen::Index i = 0; i < v.size(); ++i) c.push_back(rat_from_double(v[i]));
  return Direction(std::move(c));
}

}  // namespace

std::vector<LiftedSet> lift_cover(const OrderedCover& oc, int n, std::size_t* lp_calls) {
  oc.validate();
  if (n < 1) throw std::invalid_argument("lift_cover: n must be >= 1");
  if (static_cast<std::size_t>(n) > oc.base->size()) throw std::invalid_argument("lift_cover: n exceeds the number of sets");
  const auto forms = convex_form(*oc.base);
  const std::size_t N = oc.order.size();

  std::vector<LiftedSet> out;
  std::vector<int> tuple;
  std::vector<Direction> poles;
  std::vector<int> signs;
  std::vector<Direction> witnesses;  // witness of each nonempty prefix

  auto rec = [&](auto&& self, std::size_t next_rank) -> void {
    if (tuple.size() == static_cast<std::size_t>(n)) {
      out.push_back({tuple, poles, witnesses.back()});
      return;
    }
    for (std::size_t r = next_rank; r + (static_cast<std::size_t>(n) - tuple.size()) <= N; ++r) {
      const int base = oc.order[r];
      const auto& f = forms[static_cast<std::size_t>(base)];
      const std::size_t mark = poles.size();
      poles.insert(poles.end(), f.begin(), f.end());
      signs.resize(poles.size(), 1);
      std::optional<Direction> w;
      if (!witnesses.empty() && inside(f, 1, witnesses.back())) {
        w = witnesses.back();
      } else if (auto lp = feasible(poles, signs, Region::Sphere, lp_calls)) {
        w = lp->x;
      }
      if (w) {
        tuple.push_back(base);
        witnesses.push_back(*w);
        self(self, r + 1);
        tuple.pop_back();
        witnesses.pop_back();
      }
      poles.resize(mark, Direction{1});
      signs.resize(mark);
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

class ChainSearch {
 public:
  ChainSearch(std::span<const LiftedSet> sets, int d) : sets_(sets), length_(static_cast<std::size_t>(d) + 2) {}

  std::optional<KyFanCertificate> run() {
    if (sets_.size() < length_) return std::nullopt;
    if (descend(0)) {
      KyFanCertificate c;
      c.chain = chain_;
      c.witness = witnesses_.back();
      c.lp_calls = lp_calls_;
      return c;
    }
    return std::nullopt;
  }

  std::uint64_t lp_calls() const { return lp_calls_; }

 private:
  static int parity_sign(std::size_t pos) { return pos % 2 == 0 ? 1 : -1; }

  // Whether a ∩ ±b is empty, with + when both sit at equal parity.
  bool pair_empty(int a, int b, bool same) {
    const auto key = std::make_tuple(a, b, same);
    if (auto it = pair_memo_.find(key); it != pair_memo_.end()) return it->second;
    std::vector<Direction> poles(sets_[static_cast<std::size_t>(a)].poles);
    std::vector<int> signs(poles.size(), 1);
    for (const auto& q : sets_[static_cast<std::size_t>(b)].poles) {
      poles.push_back(q);
      signs.push_back(same ? 1 : -1);
    }
    std::size_t calls = 0;
    const bool empty = !feasible(poles, signs, Region::Sphere, &calls);
    lp_calls_ += calls;
    pair_memo_.emplace(key, empty);
    return empty;
  }

  bool descend(std::size_t start) {
    const std::size_t depth = chain_.size();
    const int sigma = parity_sign(depth);
    for (std::size_t c = start; c + (length_ - depth) <= sets_.size(); ++c) {
      const int ci = static_cast<int>(c);
      bool pruned = false;
      for (std::size_t k = 0; k < depth && !pruned; ++k) pruned = pair_empty(chain_[k], ci, k % 2 == depth % 2);
      if (pruned) continue;

      const auto& f = sets_[c].poles;
      const std::size_t mark = poles_.size();
      poles_.insert(poles_.end(), f.begin(), f.end());
      signs_.resize(poles_.size(), sigma);
      std::optional<Direction> w;
      if (depth == 0) {
        w = sets_[c].witness;
      } else if (inside(f, sigma, witnesses_.back())) {
        w = witnesses_.back();
      } else {
        std::size_t calls = 0;
        if (auto lp = feasible(poles_, signs_, Region::Sphere, &calls)) w = lp->x;
        lp_calls_ += calls;
      }
      if (w) {
        chain_.push_back(ci);
        witnesses_.push_back(*w);
        if (chain_.size() == length_ || descend(c + 1)) return true;
        chain_.pop_back();
        witnesses_.pop_back();
      }
      poles_.resize(mark, Direction{1});
      signs_.resize(mark);
    }
    return false;
  }

  std::span<const LiftedSet> sets_;
  std::size_t length_;
  std::vector<int> chain_;
  std::vector<Direction> poles_;
  std::vector<int> signs_;
  std::vector<Direction> witnesses_;
  std::map<std::tuple<int, int, bool>, bool> pair_memo_;
  std::uint64_t lp_calls_ = 0;
};

void check_chain_preconditions(std::span<const LiftedSet> sets, int d, const ChainOptions& options) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].poles.empty()) throw PreconditionViolation("set " + std::to_string(i) + " is the whole sphere and contains antipodal points");
    for (const auto& q : sets[i].poles) {
      if (q.ambient_dim() != static_cast<std::size_t>(d) + 1) throw DimensionMismatch("chain search: pole dimension mismatch");
    }
  }
  std::mt19937_64 rng(options.seed);
  for (int k = 0; k < options.coverage_samples; ++k) {
    const Direction x = exact_from(random_unit_vector(rng, d + 1));
    const bool covered =
        std::any_of(sets.begin(), sets.end(), [&](const LiftedSet& s) { return inside(s.poles, 1, x); });
    if (!covered) throw PreconditionViolation("input is not a cover: sampled point " + direction_json(x).dump() + " lies in no set");
  }
}

void fill_deep_point(KyFanCertificate& c, std::span<const LiftedSet> sets) {
  c.tuples.clear();
  for (int i : c.chain) c.tuples.push_back(sets[static_cast<std::size_t>(i)].tuple);
  c.consecutive_distinct = true;
  for (std::size_t j = 0; j + 1 < c.tuples.size(); ++j) {
    if (c.tuples[j][0] == c.tuples[j + 1][0]) c.consecutive_distinct = false;
  }
  std::set<int> firsts;
  for (const auto& t : c.tuples) firsts.insert(t[0]);
  c.pairwise_distinct = firsts.size() == c.tuples.size();

  std::set<int> deep;
  std::size_t last_odd = 0;
  for (std::size_t j = 0; j < c.tuples.size(); j += 2) {
    deep.insert(c.tuples[j][0]);
    last_odd = j;
  }
  for (int b : c.tuples[last_odd]) deep.insert(b);
  c.deep_x = c.witness;
  c.deep_sets.assign(deep.begin(), deep.end());
  c.count = static_cast<int>(c.deep_sets.size());
}

}  // namespace

KyFanCertificate find_chain(std::span<const LiftedSet> sets, int d, const ChainOptions& options) {
  if (d < 1) throw std::invalid_argument("find_chain: d must be >= 1");
  check_chain_preconditions(sets, d, options);
  ChainSearch search(sets, d);
  auto found = search.run();
  if (!found) {
    throw InternalInconsistency("no alternating chain of length " + std::to_string(d + 2) + " among " +
                                std::to_string(sets.size()) + " sets of a verified antipodal cover");
  }
  fill_deep_point(*found, sets);
  return *found;
}

KyFanCertificate deep_point(const Cover& cover, int n, const ChainOptions& options) {
  if (n < 1) throw std::invalid_argument("deep_point: n must be >= 1");
  convex_form(cover);  // regime and antipodal checks before anything costly
  const int sphere_min = cover.is_hemisphere_cover()
                             ? multiplicity_extrema(cover, Region::Sphere).min_mult
                             : arc_sweep(cover, Region::Sphere).min_mult;
  if (sphere_min < n) {
    throw PreconditionViolation("cover is only " + std::to_string(sphere_min) + "-fold, not " + std::to_string(n) + "-fold");
  }
  std::size_t calls = 0;
  const auto lifted = lift_cover(OrderedCover::construction_order(cover), n, &calls);
  auto cert = find_chain(lifted, cover.dim(), options);
  cert.lp_calls += calls;
  return cert;
}

bool verify_certificate(const Cover& cover, std::span<const LiftedSet> lifted, const KyFanCertificate& cert) {
  const std::size_t len = static_cast<std::size_t>(cover.dim()) + 2;
  if (cert.chain.size() != len) return false;
  for (std::size_t j = 0; j < len; ++j) {
    const int c = cert.chain[j];
    if (c < 0 || static_cast<std::size_t>(c) >= lifted.size()) return false;
    if (j > 0 && c <= cert.chain[j - 1]) return false;
    if (!inside(lifted[static_cast<std::size_t>(c)].poles, j % 2 == 0 ? 1 : -1, cert.witness)) return false;
  }
  const auto forms = convex_form(cover);
  for (int b : cert.deep_sets) {
    if (b < 0 || static_cast<std::size_t>(b) >= forms.size()) return false;
    if (!inside(forms[static_cast<std::size_t>(b)], 1, cert.deep_x)) return false;
  }
  return cert.count == static_cast<int>(cert.deep_sets.size());
}

nlohmann::json to_json(const KyFanCertificate& cert) {
  return {{"chain", cert.chain},
          {"chain_tuples", cert.tuples},
          {"witness", direction_json(cert.witness)},
          {"deep_point", {{"x", direction_json(cert.deep_x)}, {"sets", cert.deep_sets}}},
          {"count", cert.count},
          {"first_coordinates_consecutive_distinct", cert.consecutive_distinct},
          {"first_coordinates_pairwise_distinct", cert.pairwise_distinct},
          {"lp_calls", cert.lp_calls}};
}

}  // namespace sphcover
