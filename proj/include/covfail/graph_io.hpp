#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "covfail/graph.hpp"
#include "covfail/monitor.hpp"

namespace covfail {

/// Reads the line-oriented graph format:
///
///   format=1
///   fence f0 f1 f2 ...
///   node <id> [x y] [fail=exp:<rate>|weibull:<shape>:<scale>|fixed:<p>]
///   edge <a> <b>
///
/// `#` starts a comment. Fence nodes are declared by the fence line and may
/// get a node line for their position only. Throws ParseError.
CommunicationGraph parse_graph(std::istream& in);
CommunicationGraph parse_graph_file(const std::string& path);

/// Writes `g` so that parse_graph reads it back unchanged, provided the
/// fence nodes come first and in fence order.
void write_graph(std::ostream& out, const CommunicationGraph& g);
std::string graph_to_string(const CommunicationGraph& g);

FailureSpec parse_failure_spec(const std::string& text);  ///< throws Error
std::string format_failure_spec(const FailureSpec& spec);

/// Shortest text that reads back to the same double.
std::string format_number(double x);

/// One `fail <time> <vertex>` per line; `#` comments. Throws ParseError.
std::vector<FailureEvent> parse_events(std::istream& in);
std::vector<FailureEvent> parse_events_file(const std::string& path);

}  // namespace covfail
