#include "covfail/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <system_error>

#include "covfail/error.hpp"

namespace covfail {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line.substr(0, line.find('#')));
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool to_double(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

double number(const std::string& s, const std::string& what) {
  double v = 0.0;
  if (!to_double(s, v)) throw Error("bad " + what + " '" + s + "'");
  return v;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

FailureSpec parse_failure_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  const auto& kind = parts[0];
  if (kind == "exp" && parts.size() == 2) {
    const double rate = number(parts[1], "rate");
    if (!(rate > 0.0)) throw Error("exponential rate must be positive");
    return Exponential{rate};
  }
  if (kind == "weibull" && parts.size() == 3) {
    const double shape = number(parts[1], "shape");
    const double scale = number(parts[2], "scale");
    if (!(shape > 0.0) || !(scale > 0.0)) throw Error("weibull shape and scale must be positive");
    return Weibull{shape, scale};
  }
  if (kind == "fixed" && parts.size() == 2) {
    const double p = number(parts[1], "probability");
    if (!(p >= 0.0 && p <= 1.0)) throw Error("fixed probability must lie in [0,1]");
    return FixedProbability{p};
  }
  throw Error("unknown failure distribution '" + text + "' (expected exp:<rate>, weibull:<shape>:<scale> or fixed:<p>)");
}

std::string format_failure_spec(const FailureSpec& spec) {
  if (const auto* e = std::get_if<Exponential>(&spec)) return "exp:" + format_number(e->rate);
  if (const auto* w = std::get_if<Weibull>(&spec)) {
    return "weibull:" + format_number(w->shape) + ":" + format_number(w->scale);
  }
  return "fixed:" + format_number(std::get<FixedProbability>(spec).p);
}

CommunicationGraph parse_graph(std::istream& in) {
  CommunicationGraph g;
  std::map<VertexLabel, std::size_t> fence_slot;  // id -> index in g.nodes
  std::vector<NodeSpec> interior;
  std::set<VertexLabel> declared;                  // ids with a node line
  std::vector<std::pair<std::size_t, std::pair<VertexLabel, VertexLabel>>> edges;
  bool seen_fence = false;
  bool seen_content = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    const auto& head = tok[0];

    if (head.rfind("format=", 0) == 0) {
      if (seen_content) throw ParseError(lineno, "the format line must come first");
      if (head != "format=1" || tok.size() != 1) throw ParseError(lineno, "unsupported format '" + line + "'");
      seen_content = true;
      continue;
    }
    seen_content = true;

    if (head == "fence") {
      if (seen_fence) throw ParseError(lineno, "second fence line");
      seen_fence = true;
      if (tok.size() < 2) throw ParseError(lineno, "empty fence");
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (fence_slot.count(tok[i])) throw ParseError(lineno, "fence lists '" + tok[i] + "' twice");
        fence_slot[tok[i]] = g.nodes.size();
        g.nodes.push_back({tok[i], true, std::nullopt, std::nullopt});
        g.fence_order.push_back(tok[i]);
      }
    } else if (head == "node") {
      if (tok.size() < 2) throw ParseError(lineno, "node line without an id");
      NodeSpec n{tok[1], false, std::nullopt, std::nullopt};
      std::size_t i = 2;
      if (tok.size() >= 4 && tok[2].find('=') == std::string::npos) {
        double x = 0.0;
        double y = 0.0;
        if (!to_double(tok[2], x) || !to_double(tok[3], y)) {
          throw ParseError(lineno, "bad coordinates '" + tok[2] + " " + tok[3] + "'");
        }
        n.position = Point{x, y};
        i = 4;
      }
      for (; i < tok.size(); ++i) {
        if (tok[i].rfind("fail=", 0) != 0) throw ParseError(lineno, "unexpected '" + tok[i] + "' on node line");
        if (n.failure) throw ParseError(lineno, "two failure distributions for '" + n.id + "'");
        try {
          n.failure = parse_failure_spec(tok[i].substr(5));
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          throw ParseError(lineno, e.what());
        }
      }
      if (!declared.insert(n.id).second) throw ParseError(lineno, "node '" + n.id + "' declared twice");
      if (auto it = fence_slot.find(n.id); it != fence_slot.end()) {
        if (n.failure) throw ParseError(lineno, "fence node '" + n.id + "' cannot carry a failure distribution");
        g.nodes[it->second].position = n.position;
      } else {
        interior.push_back(std::move(n));
      }
    } else if (head == "edge") {
      if (tok.size() != 3) throw ParseError(lineno, "edge line needs exactly two ids");
      edges.push_back({lineno, {tok[1], tok[2]}});
    } else {
      throw ParseError(lineno, "unknown directive '" + head + "'");
    }
  }
  if (!seen_fence) throw ParseError(lineno, "no fence line");

  // A node line for a fence id may come before the fence line.
  for (auto& n : interior) {
    if (auto it = fence_slot.find(n.id); it != fence_slot.end()) {
      if (n.failure) throw ParseError(lineno, "fence node '" + n.id + "' cannot carry a failure distribution");
      g.nodes[it->second].position = n.position;
      n.id.clear();
    }
  }
  for (auto& n : interior)
    if (!n.id.empty()) g.nodes.push_back(std::move(n));

  std::set<VertexLabel> known;
  for (const auto& n : g.nodes) known.insert(n.id);
  for (auto& [at, e] : edges) {
    for (const auto* end : {&e.first, &e.second}) {
      if (!known.count(*end)) throw ParseError(at, "edge references unknown node '" + *end + "'");
    }
    g.edges.push_back(std::move(e));
  }
  return g;
}

CommunicationGraph parse_graph_file(const std::string& path) {
  auto in = open(path);
  return parse_graph(in);
}

void write_graph(std::ostream& out, const CommunicationGraph& g) {
  out << "format=1\nfence";
  for (const auto& f : g.fence_order) out << ' ' << f;
  out << '\n';
  for (const auto& n : g.nodes) {
    if (n.fence && !n.position) continue;
    out << "node " << n.id;
    if (n.position) out << ' ' << format_number(n.position->x) << ' ' << format_number(n.position->y);
    if (n.failure) out << " fail=" << format_failure_spec(*n.failure);
    out << '\n';
  }
  for (const auto& [a, b] : g.edges) out << "edge " << a << ' ' << b << '\n';
}

std::string graph_to_string(const CommunicationGraph& g) {
  std::ostringstream ss;
  write_graph(ss, g);
  return ss.str();
}

std::vector<FailureEvent> parse_events(std::istream& in) {
  std::vector<FailureEvent> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (tok[0] != "fail" || tok.size() != 3) throw ParseError(lineno, "expected 'fail <time> <vertex>'");
    double t = 0.0;
    if (!to_double(tok[1], t) || t < 0.0) throw ParseError(lineno, "bad time '" + tok[1] + "'");
    out.push_back({t, tok[2]});
  }
  return out;
}

std::vector<FailureEvent> parse_events_file(const std::string& path) {
  auto in = open(path);
  return parse_events(in);
}

}  // namespace covfail
