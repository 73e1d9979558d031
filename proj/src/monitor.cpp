#include "covfail/monitor.hpp"

#include <algorithm>
#include <cmath>

#include "covfail/error.hpp"

namespace covfail {

namespace {

std::string format_time(double t) {
  std::string s = std::to_string(t);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

Monitor::Monitor(SimplicialComplex2 k) : complex_(std::move(k)) {
  state_ = reduce_complex(complex_);
  live_count_ = state_.size();
  alive_.assign(complex_.vertex_count(), true);

  baseline_pass_ = check_dsg(state_).pass;
  if (!baseline_pass_) {
    status_ = MonitorStatus::CriterionFailed;
    warnings_.push_back("baseline: the intact network already fails the coverage criterion");
  }

  for (auto w : complex_.interior_vertices()) {
    Tracked t{link(complex_, complex_.label(w)), {}};
    t.betti = graph_betti(t.link);
    links_.emplace(complex_.label(w), std::move(t));
  }

  const auto b = complex_betti(complex_);
  h1_ = b.beta1;
  h2_ = b.beta2;
  if (h2_ != 0) {
    warnings_.push_back("H2 rank " + std::to_string(h2_) +
                        ": a flag may be raised on a vertex whose loss is harmless");
  }
  if (h1_ != 0) {
    warnings_.push_back("H1 rank " + std::to_string(h1_) +
                        ": the network has an uncovered hole; unflagged failures are rechecked");
  }
}

SimplicialComplex2 Monitor::live_complex() const { return remove_vertices(complex_, dead_index_); }

std::vector<VertexLabel> Monitor::live_interior() const {
  std::vector<VertexLabel> out;
  for (const auto& [label, t] : links_) out.push_back(label);
  return out;
}

bool Monitor::is_flagged(const VertexLabel& w) const { return link_betti(w).beta1 > 0; }

const LinkGraph& Monitor::link_of(const VertexLabel& w) const {
  auto it = links_.find(w);
  if (it == links_.end()) throw UnknownVertex("'" + w + "' is not a live interior vertex");
  return it->second.link;
}

GraphBetti Monitor::link_betti(const VertexLabel& w) const {
  auto it = links_.find(w);
  if (it == links_.end()) throw UnknownVertex("'" + w + "' is not a live interior vertex");
  return it->second.betti;
}

bool Monitor::recheck(VertexIndex v) {
  const VertexIndex dead[] = {v};
  const auto doomed = state_.filtration().triangles_meeting(dead);
  // Earlier casualties are already parked at the end; parking the whole set
  // again only moves the new ones.
  std::vector<SimplexId> all = state_.filtration().triangles_meeting(dead_index_);
  all.insert(all.end(), doomed.begin(), doomed.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  state_.move_triangles_to_end(all);
  live_count_ = state_.size() - all.size();
  return check_dsg_prefix(state_, live_count_).pass;
}

void Monitor::refresh_homology() {
  // Only called right after a recheck, so every dead triangle sits beyond
  // the live prefix and the nonzero triangle columns there span the image
  // of the live boundary map.
  const auto& fo = state_.filtration();
  std::size_t rank2 = 0;
  std::size_t triangles = 0;
  for (Position p = 0; p < live_count_; ++p) {
    if (fo[state_.simplex_at(p)].dim != 2) continue;
    ++triangles;
    if (!state_.is_positive(p)) ++rank2;
  }
  std::vector<std::uint32_t> parent(complex_.vertex_count());
  for (std::uint32_t v = 0; v < parent.size(); ++v) parent[v] = v;
  auto root = [&parent](std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t edges = 0;
  std::size_t rank1 = 0;
  for (const auto& e : complex_.edges()) {
    if (!alive_[e[0]] || !alive_[e[1]]) continue;
    ++edges;
    const auto a = root(e[0]);
    const auto b = root(e[1]);
    if (a != b) {
      parent[a] = b;
      ++rank1;
    }
  }
  const std::size_t h1 = edges - rank1 - rank2;
  if (h1 != 0 && h1_ == 0) {
    warnings_.push_back("H1 rank " + std::to_string(h1) + " after failures: unflagged failures are now rechecked");
  }
  h1_ = h1;
  h2_ = triangles - rank2;
}

VerdictEntry Monitor::process_failure(const FailureEvent& ev) {
  if (status_ != MonitorStatus::Running) throw Error("the monitor has already recorded a criterion failure");
  if (!(ev.time >= 0.0) || !std::isfinite(ev.time)) throw Error("event time must be a finite non-negative number");
  if (last_time_ && ev.time < *last_time_) {
    throw OutOfOrderEvent("event 'fail " + format_time(ev.time) + " " + ev.vertex + "' comes after time " +
                          format_time(*last_time_));
  }
  const auto v = complex_.index_of(ev.vertex);
  if (!alive_[v]) throw AlreadyDead("'" + ev.vertex + "' has already failed");
  last_time_ = ev.time;

  VerdictEntry entry;
  entry.vertex = ev.vertex;
  entry.time = ev.time;

  if (complex_.is_fence(v)) {
    entry.fence = true;
    entry.dsg_checked = true;
    entry.dsg_pass = false;
    entry.warnings.push_back("fence node lost");
  } else {
    const auto& tracked = links_.at(ev.vertex);
    entry.was_flagged = tracked.betti.beta1 > 0;
    bool check = entry.was_flagged;
    if (!check && tracked.betti.beta0 != 1) {
      check = true;
      entry.conservative = true;
      entry.warnings.push_back("link has " + std::to_string(tracked.betti.beta0) + " components");
    }
    if (!check && conservative()) {
      check = true;
      entry.conservative = true;
      entry.warnings.push_back("homology assumptions unconfirmed");
    }
    if (check) {
      entry.dsg_checked = true;
      entry.dsg_pass = recheck(v);
    }
  }

  alive_[v] = false;
  dead_.push_back(ev.vertex);
  dead_index_.push_back(v);
  links_.erase(ev.vertex);
  for (auto& [label, t] : links_) {
    if (t.link.erase_vertex(ev.vertex)) t.betti = graph_betti(t.link);
  }

  if (entry.dsg_pass == false) {
    status_ = MonitorStatus::CriterionFailed;
    failed_at_ = ev.time;
  } else if (entry.dsg_checked && !entry.fence) {
    // A removal that needed a check can open a hole; an unchecked one
    // leaves the homotopy type alone.
    refresh_homology();
  }
  entry.status = status_;
  return entry;
}

MonitorVerdict replay(Monitor& m, std::span<const FailureEvent> events) {
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].time < events[i - 1].time) {
      throw OutOfOrderEvent("event " + std::to_string(i + 1) + " ('fail " + format_time(events[i].time) + " " +
                            events[i].vertex + "') is earlier than the event before it");
    }
  }
  MonitorVerdict out;
  out.status = m.status();
  out.failed_at = m.failed_at();
  std::size_t i = 0;
  for (; i < events.size() && m.status() == MonitorStatus::Running; ++i) {
    out.entries.push_back(m.process_failure(events[i]));
  }
  out.status = m.status();
  out.failed_at = m.failed_at();
  out.unprocessed = events.size() - i;
  return out;
}

}  // namespace covfail
