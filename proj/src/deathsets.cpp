#include "covfail/deathsets.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>
#include <thread>
#include <unordered_set>

#include "covfail/error.hpp"

namespace covfail {

namespace {

constexpr auto kNotInterior = std::numeric_limits<std::size_t>::max();

bool key_less(const SubsetKey& a, const SubsetKey& b) {
  const auto ca = a.size(), cb = b.size();
  if (ca != cb) return ca < cb;
  return a.bits.ones() < b.bits.ones();
}

DeathSet make_death_set(const SubsetClassifier& c, SubsetKey key) {
  DeathSet d{std::move(key), {}};
  d.members = c.labels_of(d.key);
  return d;
}

}  // namespace

SubsetClassifier::SubsetClassifier(const SimplicialComplex2& k)
    : complex_(&k), interior_(k.interior_vertices()), snapshot_(reduce_complex(k)) {
  interior_rank_.assign(k.vertex_count(), kNotInterior);
  for (std::size_t i = 0; i < interior_.size(); ++i) interior_rank_[interior_[i]] = i;
}

SubsetKey SubsetClassifier::key_of(std::span<const VertexLabel> members) const {
  auto key = empty_key();
  for (const auto& l : members) {
    const auto v = complex_->index_of(l);
    if (interior_rank_[v] == kNotInterior) {
      throw FenceRemovalError("'" + l + "' is a fence vertex");
    }
    key.bits.set(interior_rank_[v]);
  }
  return key;
}

std::vector<VertexIndex> SubsetClassifier::vertices_of(const SubsetKey& subset) const {
  std::vector<VertexIndex> out;
  for (auto r : subset.bits.ones()) out.push_back(interior_.at(r));
  return out;
}

std::vector<VertexLabel> SubsetClassifier::labels_of(const SubsetKey& subset) const {
  std::vector<VertexLabel> out;
  for (auto v : vertices_of(subset)) out.push_back(complex_->label(v));
  return out;
}

SubsetClass classify_subset(const SimplicialComplex2& k, const RUState& reduced,
                            std::span<const VertexIndex> removed) {
  for (auto v : removed) {
    if (k.is_fence(v)) throw FenceRemovalError("'" + k.label(v) + "' is a fence vertex");
  }
  auto state = reduced;
  const auto doomed = state.filtration().triangles_meeting(removed);
  state.move_triangles_to_end(doomed);
  const bool pass = check_dsg_prefix(state, state.size() - doomed.size()).pass;
  return pass ? SubsetClass::Cake : SubsetClass::Death;
}

SubsetClass SubsetClassifier::classify(const SubsetKey& subset) const {
  const auto dead = vertices_of(subset);
  return classify_subset(*complex_, snapshot_, dead);
}

DeathSetReport cake_or_death(const SimplicialComplex2& k, const DeathSetOptions& options) {
  const SubsetClassifier classifier(k);
  DeathSetReport report;
  for (auto v : classifier.interior()) report.interior.push_back(k.label(v));

  const auto empty = classifier.empty_key();
  report.explored_total = 1;
  if (classifier.classify(empty) == SubsetClass::Death) {
    report.baseline_failure = true;
    report.minimal_death_sets.push_back(make_death_set(classifier, empty));
    return report;
  }
  report.explored_cake_count = 1;

  const auto n = classifier.interior().size();
  unsigned workers = 1;
  if (options.parallel) {
    workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  }

  std::unordered_set<SubsetKey, SubsetKeyHash> cakes{empty};
  for (std::size_t size = 1; size <= n && !cakes.empty(); ++size) {
    if (options.max_size && size > *options.max_size) {
      report.truncated_at_size = *options.max_size;
      break;
    }

    // Grow each cake set by one vertex; keep candidates whose predecessors
    // are all cake sets.
    std::unordered_set<SubsetKey, SubsetKeyHash> seen;
    std::vector<SubsetKey> candidates;
    for (const auto& cake : cakes) {
      for (std::size_t v = 0; v < n; ++v) {
        if (cake.bits.test(v)) continue;
        SubsetKey next = cake;
        next.bits.set(v);
        if (!seen.insert(next).second) continue;
        bool all_cake = true;
        for (auto member : next.bits.ones()) {
          SubsetKey pred = next;
          pred.bits.reset(member);
          if (!cakes.count(pred)) {
            all_cake = false;
            break;
          }
        }
        if (all_cake) candidates.push_back(std::move(next));
      }
    }
    std::sort(candidates.begin(), candidates.end(), key_less);

    if (report.explored_total + candidates.size() > options.budget) {
      report.budget_exceeded = true;
      report.truncated_at_size = size - 1;
      break;
    }

    std::vector<SubsetClass> verdicts(candidates.size());
    if (workers <= 1 || candidates.size() < 2) {
      for (std::size_t i = 0; i < candidates.size(); ++i) verdicts[i] = classifier.classify(candidates[i]);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (auto i = next++; i < candidates.size(); i = next++) verdicts[i] = classifier.classify(candidates[i]);
        });
      }
      for (auto& t : pool) t.join();
    }
    report.explored_total += candidates.size();

    std::unordered_set<SubsetKey, SubsetKeyHash> next_cakes;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (verdicts[i] == SubsetClass::Death) {
        report.minimal_death_sets.push_back(make_death_set(classifier, candidates[i]));
      } else {
        ++report.explored_cake_count;
        next_cakes.insert(std::move(candidates[i]));
      }
    }
    cakes = std::move(next_cakes);
  }
  return report;
}

DeathSetReport brute_force_death_sets(const SimplicialComplex2& k, std::size_t max_interior) {
  const auto interior = k.interior_vertices();
  const auto n = interior.size();
  if (n > max_interior || n >= 31) {
    throw TooLarge("brute force over " + std::to_string(n) + " interior vertices exceeds the limit of " +
                   std::to_string(max_interior));
  }
  const std::uint32_t subsets = std::uint32_t{1} << n;

  DeathSetReport report;
  for (auto v : interior) report.interior.push_back(k.label(v));

  auto key_of = [&](std::uint32_t mask) {
    SubsetKey key{BitVector(n)};
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) key.bits.set(i);
    return key;
  };
  auto labels_of = [&](std::uint32_t mask) {
    std::vector<VertexLabel> out;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) out.push_back(k.label(interior[i]));
    return out;
  };

  std::vector<bool> death(subsets);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::vector<VertexIndex> dead;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) dead.push_back(interior[i]);
    death[mask] = !dsg_oracle(remove_vertices(k, dead)).pass;
    if (!death[mask]) ++report.explored_cake_count;
  }
  report.explored_total = subsets;

  if (death[0]) {
    report.baseline_failure = true;
    report.minimal_death_sets.push_back({key_of(0), {}});
    return report;
  }

  // below[mask]: some proper subset of mask is a death set.
  std::vector<bool> below(subsets, false);
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    for (std::size_t i = 0; i < n && !below[mask]; ++i) {
      if (!(mask >> i & 1u)) continue;
      const auto sub = mask & ~(std::uint32_t{1} << i);
      below[mask] = death[sub] || below[sub];
    }
  }
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    if (death[mask] && !below[mask]) report.minimal_death_sets.push_back({key_of(mask), labels_of(mask)});
  }
  std::sort(report.minimal_death_sets.begin(), report.minimal_death_sets.end(),
            [](const DeathSet& a, const DeathSet& b) { return key_less(a.key, b.key); });
  return report;
}

}  // namespace covfail
