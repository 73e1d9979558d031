#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covfail/complex.hpp"
#include "covfail/persistence.hpp"

namespace covfail {

struct FailureEvent {
  double time = 0.0;
  VertexLabel vertex;
};

enum class MonitorStatus { Running, CriterionFailed };

struct VerdictEntry {
  VertexLabel vertex;
  double time = 0.0;
  bool fence = false;
  bool was_flagged = false;
  bool dsg_checked = false;
  std::optional<bool> dsg_pass;  ///< set when the criterion was checked
  bool conservative = false;     ///< checked only because an assumption is in doubt
  std::vector<std::string> warnings;
  MonitorStatus status = MonitorStatus::Running;
};

struct MonitorVerdict {
  std::vector<VerdictEntry> entries;
  MonitorStatus status = MonitorStatus::Running;
  std::optional<double> failed_at;
  std::size_t unprocessed = 0;  ///< events left after a terminal status
};

/// Incremental early-warning monitor. Keeps the link of every live interior
/// vertex and flags those whose link has a cycle. The criterion is only
/// re-examined when a flagged vertex dies, or conservatively when one of
/// the assumptions behind skipping the check cannot be confirmed.
class Monitor {
 public:
  explicit Monitor(SimplicialComplex2 k);

  MonitorStatus status() const noexcept { return status_; }
  std::optional<double> failed_at() const noexcept { return failed_at_; }
  bool baseline_pass() const noexcept { return baseline_pass_; }

  /// Z2 ranks of H1 and H2 of the live complex, as last computed.
  std::size_t h1_rank() const noexcept { return h1_; }
  std::size_t h2_rank() const noexcept { return h2_; }
  /// True while H1 or H2 of the live complex is nonzero.
  bool conservative() const noexcept { return h1_ != 0 || h2_ != 0; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  const SimplicialComplex2& complex() const noexcept { return complex_; }
  SimplicialComplex2 live_complex() const;
  const std::vector<VertexLabel>& dead() const noexcept { return dead_; }
  std::vector<VertexLabel> live_interior() const;

  bool is_flagged(const VertexLabel& w) const;
  const LinkGraph& link_of(const VertexLabel& w) const;
  GraphBetti link_betti(const VertexLabel& w) const;

  const RUState& state() const noexcept { return state_; }
  std::size_t live_count() const noexcept { return live_count_; }

  /// Throws UnknownVertex, AlreadyDead, OutOfOrderEvent, or Error once the
  /// monitor has reached a terminal status.
  VerdictEntry process_failure(const FailureEvent& ev);

 private:
  struct Tracked {
    LinkGraph link;
    GraphBetti betti;
  };

  bool recheck(VertexIndex v);
  void refresh_homology();

  SimplicialComplex2 complex_;
  RUState state_;
  std::size_t live_count_ = 0;
  std::vector<bool> alive_;
  std::vector<VertexLabel> dead_;
  std::vector<VertexIndex> dead_index_;
  std::map<VertexLabel, Tracked> links_;
  std::vector<std::string> warnings_;
  std::size_t h1_ = 0;
  std::size_t h2_ = 0;
  bool baseline_pass_ = false;
  MonitorStatus status_ = MonitorStatus::Running;
  std::optional<double> failed_at_;
  std::optional<double> last_time_;
};

/// Feeds `events` to the monitor in order and stops at a terminal status.
/// Checks the whole stream for decreasing times before processing anything
/// and throws OutOfOrderEvent naming the first offender.
MonitorVerdict replay(Monitor& m, std::span<const FailureEvent> events);

}  // namespace covfail
