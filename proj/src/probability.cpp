#include "covfail/probability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <type_traits>

#include "covfail/error.hpp"
#include "covfail/gf2.hpp"
#include "covfail/persistence.hpp"

namespace covfail {

namespace {

// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void validate(const VertexLabel& v, const FailureSpec& spec) {
  std::visit(
      [&v](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          if (!(s.rate > 0.0)) throw Error("node '" + v + "': exponential rate must be positive");
        } else if constexpr (std::is_same_v<T, Weibull>) {
          if (!(s.shape > 0.0) || !(s.scale > 0.0)) {
            throw Error("node '" + v + "': weibull shape and scale must be positive");
          }
        } else {
          if (!(s.p >= 0.0 && s.p <= 1.0)) throw Error("node '" + v + "': fixed probability must lie in [0,1]");
        }
      },
      spec);
}

/// Minimal sets re-expressed over a dense index of the nodes they mention.
struct IndexedSets {
  std::vector<VertexLabel> nodes;
  std::vector<BitVector> sets;
  std::vector<std::vector<std::size_t>> members;
};

IndexedSets index_sets(const MinimalSets& min_sets) {
  IndexedSets out;
  for (const auto& s : min_sets) out.nodes.insert(out.nodes.end(), s.begin(), s.end());
  std::sort(out.nodes.begin(), out.nodes.end());
  out.nodes.erase(std::unique(out.nodes.begin(), out.nodes.end()), out.nodes.end());
  for (const auto& s : min_sets) {
    BitVector bits(out.nodes.size());
    std::vector<std::size_t> m;
    for (const auto& v : s) {
      const auto i = static_cast<std::size_t>(
          std::lower_bound(out.nodes.begin(), out.nodes.end(), v) - out.nodes.begin());
      bits.set(i);
      m.push_back(i);
    }
    out.sets.push_back(std::move(bits));
    out.members.push_back(std::move(m));
  }
  return out;
}

std::vector<double> node_cdfs(const IndexedSets& ix, const FailureModel& model, double t) {
  std::vector<double> q;
  q.reserve(ix.nodes.size());
  for (const auto& v : ix.nodes) q.push_back(model.cdf(v, t));
  return q;
}

}  // namespace

double cdf(const FailureSpec& spec, double t) {
  if (!(t >= 0.0)) throw Error("failure time must be non-negative");
  return std::visit(
      [t](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return -std::expm1(-s.rate * t);
        } else if constexpr (std::is_same_v<T, Weibull>) {
          return -std::expm1(-std::pow(t / s.scale, s.shape));
        } else {
          return s.p;
        }
      },
      spec);
}

FailureModel::FailureModel(std::map<VertexLabel, FailureSpec> specs) : specs_(std::move(specs)) {
  for (const auto& [v, s] : specs_) validate(v, s);
}

FailureModel FailureModel::from_graph(const CommunicationGraph& g) {
  std::map<VertexLabel, FailureSpec> specs;
  for (const auto& n : g.nodes) {
    if (n.fence) {
      if (n.failure) throw Error("fence node '" + n.id + "' cannot carry a failure distribution");
      continue;
    }
    if (!n.failure) throw Error("interior node '" + n.id + "' has no failure distribution");
    specs.emplace(n.id, *n.failure);
  }
  return FailureModel(std::move(specs));
}

FailureModel FailureModel::uniform(const SimplicialComplex2& k, const FailureSpec& spec) {
  std::map<VertexLabel, FailureSpec> specs;
  for (auto v : k.interior_vertices()) specs.emplace(k.label(v), spec);
  return FailureModel(std::move(specs));
}

double FailureModel::cdf(const VertexLabel& v, double t) const {
  auto it = specs_.find(v);
  if (it == specs_.end()) throw UnknownVertex("no failure distribution for '" + v + "'");
  return covfail::cdf(it->second, t);
}

FailureCurve prob_failure_exact(const MinimalSets& min_sets, const FailureModel& model,
                                std::span<const double> times, std::size_t max_sets) {
  if (min_sets.size() > max_sets) {
    throw BudgetExceeded(std::to_string(min_sets.size()) + " minimal death sets exceed the exact limit of " +
                         std::to_string(max_sets) + "; use Monte Carlo");
  }
  const auto ix = index_sets(min_sets);
  const std::size_t d = ix.sets.size();

  FailureCurve curve;
  for (double t : times) {
    const auto q = node_cdfs(ix, model, t);
    CompensatedSum total;
    std::size_t terms = 0;
    // Depth-first over index sets; `covered` is the union so far and `prod`
    // the probability that all of it has failed.
    auto visit = [&](auto&& self, std::size_t next, const BitVector& covered, double prod, bool odd) -> void {
      for (std::size_t i = next; i < d; ++i) {
        BitVector u = covered;
        double p = prod;
        for (auto m : ix.members[i]) {
          if (!u.test(m)) {
            u.set(m);
            p *= q[m];
          }
        }
        ++terms;
        total.add(odd ? -p : p);  // odd: parent had odd size, so this one is even
        self(self, i + 1, u, p, !odd);
      }
    };
    visit(visit, 0, BitVector(ix.nodes.size()), 1.0, false);
    CurvePoint pt;
    pt.t = t;
    pt.probability = std::clamp(total.value(), 0.0, 1.0);
    pt.method = "ie";
    pt.terms = terms;
    curve.push_back(pt);
  }
  return curve;
}

FailureCurve prob_failure_mc(const MinimalSets& min_sets, const FailureModel& model,
                             std::span<const double> times, std::size_t samples, std::uint64_t seed,
                             unsigned threads) {
  if (samples == 0) throw Error("Monte Carlo needs at least one sample");
  const auto ix = index_sets(min_sets);
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  threads = std::max(1u, threads);

  FailureCurve curve;
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const auto q = node_cdfs(ix, model, times[ti]);
    std::vector<std::size_t> hits(blocks, 0);

    auto run_block = [&](std::size_t b) {
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(ti) << 32) | b)));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const std::size_t begin = b * kBlock;
      const std::size_t end = std::min(samples, begin + kBlock);
      BitVector failed(ix.nodes.size());
      std::size_t count = 0;
      for (std::size_t s = begin; s < end; ++s) {
        for (std::size_t v = 0; v < q.size(); ++v) {
          if (unit(rng) < q[v]) {
            failed.set(v);
          } else {
            failed.reset(v);
          }
        }
        for (const auto& set : ix.sets) {
          if (failed.contains(set)) {
            ++count;
            break;
          }
        }
      }
      hits[b] = count;
    };

    if (threads == 1 || blocks == 1) {
      for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t b = w; b < blocks; b += threads) run_block(b);
        });
      }
      for (auto& th : pool) th.join();
    }

    std::size_t total = 0;
    for (auto h : hits) total += h;
    const double p = static_cast<double>(total) / static_cast<double>(samples);
    CurvePoint pt;
    pt.t = times[ti];
    pt.probability = p;
    pt.method = "mc";
    pt.stderr_est = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    curve.push_back(pt);
  }
  return curve;
}

FailureCurve prob_failure_bruteforce(const SimplicialComplex2& k, const FailureModel& model,
                                     std::span<const double> times, std::size_t max_interior) {
  const auto interior = k.interior_vertices();
  const auto n = interior.size();
  if (n > max_interior || n >= 31) {
    throw TooLarge("brute-force probability over " + std::to_string(n) + " interior vertices exceeds the limit");
  }
  const std::uint32_t subsets = std::uint32_t{1} << n;
  std::vector<bool> fails(subsets);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::vector<VertexIndex> dead;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) dead.push_back(interior[i]);
    fails[mask] = !dsg_oracle(remove_vertices(k, dead)).pass;
  }

  FailureCurve curve;
  for (double t : times) {
    std::vector<double> q;
    for (auto v : interior) q.push_back(model.cdf(k.label(v), t));
    CompensatedSum total;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      if (!fails[mask]) continue;
      double w = 1.0;
      for (std::size_t i = 0; i < n; ++i) w *= (mask >> i & 1u) ? q[i] : 1.0 - q[i];
      total.add(w);
    }
    CurvePoint pt;
    pt.t = t;
    pt.probability = total.value();
    pt.method = "brute";
    curve.push_back(pt);
  }
  return curve;
}

double prob_failure_bruteforce(const SimplicialComplex2& k, const FailureModel& model, double t,
                               std::size_t max_interior) {
  const double times[] = {t};
  return prob_failure_bruteforce(k, model, times, max_interior).front().probability;
}

}  // namespace covfail
