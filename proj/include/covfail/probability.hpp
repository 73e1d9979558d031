#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covfail/complex.hpp"
#include "covfail/graph.hpp"

namespace covfail {

/// P(X <= t) for one failure-time distribution.
double cdf(const FailureSpec& spec, double t);

/// Independent failure-time distributions of the interior nodes.
class FailureModel {
 public:
  FailureModel() = default;
  explicit FailureModel(std::map<VertexLabel, FailureSpec> specs);

  /// Takes every interior node's spec from the graph; throws Error naming
  /// the first interior node without one, or a fence node that has one.
  static FailureModel from_graph(const CommunicationGraph& g);
  /// Same distribution for every interior vertex of `k`.
  static FailureModel uniform(const SimplicialComplex2& k, const FailureSpec& spec);

  double cdf(const VertexLabel& v, double t) const;  ///< throws UnknownVertex
  const std::map<VertexLabel, FailureSpec>& specs() const noexcept { return specs_; }

 private:
  std::map<VertexLabel, FailureSpec> specs_;
};

struct CurvePoint {
  double t = 0.0;
  double probability = 0.0;
  std::string method;                 ///< "ie", "mc" or "brute"
  std::optional<double> stderr_est;  ///< Monte Carlo only
  std::optional<std::size_t> terms;   ///< inclusion-exclusion terms, exact only
};

using FailureCurve = std::vector<CurvePoint>;

using MinimalSets = std::vector<std::vector<VertexLabel>>;

/// Inclusion-exclusion over the minimal death sets: the criterion has
/// failed by t iff every node of some minimal set has failed. Throws
/// BudgetExceeded when there are more than `max_sets` sets.
FailureCurve prob_failure_exact(const MinimalSets& min_sets, const FailureModel& model,
                                std::span<const double> times, std::size_t max_sets = 20);

/// Monte Carlo estimate of the same quantity. Deterministic for a seed and
/// independent of `threads`.
FailureCurve prob_failure_mc(const MinimalSets& min_sets, const FailureModel& model,
                             std::span<const double> times, std::size_t samples, std::uint64_t seed,
                             unsigned threads = 1);

/// Reference value that ignores death sets: sums the probability of every
/// interior failure pattern whose surviving complex fails dsg_oracle.
double prob_failure_bruteforce(const SimplicialComplex2& k, const FailureModel& model, double t,
                               std::size_t max_interior = 14);

FailureCurve prob_failure_bruteforce(const SimplicialComplex2& k, const FailureModel& model,
                                     std::span<const double> times, std::size_t max_interior = 14);

}  // namespace covfail
