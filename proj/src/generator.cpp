#include "covfail/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_map>

#include "covfail/error.hpp"

namespace covfail {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double signed_area(std::span<const Point> polygon) {
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % polygon.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2.0;
}

}  // namespace

std::vector<Point> square_domain(double side) {
  return {{0.0, 0.0}, {side, 0.0}, {side, side}, {0.0, side}};
}

bool is_convex_polygon(std::span<const Point> polygon) {
  const auto n = polygon.size();
  if (n < 3) return false;
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = cross(polygon[i], polygon[(i + 1) % n], polygon[(i + 2) % n]);
    if (c == 0.0) continue;
    const int s = c > 0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      return false;
    }
  }
  return sign != 0;
}

double polygon_area(std::span<const Point> polygon) { return std::abs(signed_area(polygon)); }

bool inside_convex_polygon(std::span<const Point> polygon, const Point& p, double tolerance) {
  const auto n = polygon.size();
  const double orientation = signed_area(polygon) >= 0.0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % n];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (orientation * cross(a, b, p) < -tolerance * len) return false;
  }
  return true;
}

GeneratedInstance generate_instance(const GeneratorSpec& spec) {
  if (!is_convex_polygon(spec.polygon)) throw Error("generator domain must be a convex polygon");
  if (!(spec.broadcast_radius > 0.0)) throw Error("broadcast radius must be positive");

  GeneratedInstance out;
  const double rb = spec.broadcast_radius;
  out.cover_radius = spec.cover_radius.value_or(rb / std::sqrt(3.0));
  if (out.cover_radius * std::sqrt(3.0) < rb * (1.0 - 1e-12)) {
    if (!spec.allow_small_cover_radius) {
      throw Error("cover radius must be at least r_b / sqrt(3)");
    }
    out.warnings.push_back("cover radius below r_b / sqrt(3); coverage guarantee void");
  }
  const double spacing = spec.fence_spacing.value_or(rb / 2.0);
  if (!(spacing > 0.0) || !(spacing < rb)) {
    throw Error("fence spacing must lie strictly between 0 and r_b");
  }

  std::vector<LabeledPoint> points;
  std::vector<VertexLabel> fence;
  const auto& poly = spec.polygon;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    const auto pieces = static_cast<std::size_t>(std::ceil(distance(a, b) / spacing));
    for (std::size_t j = 0; j < std::max<std::size_t>(pieces, 1); ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(std::max<std::size_t>(pieces, 1));
      const VertexLabel id = "f" + std::to_string(fence.size());
      fence.push_back(id);
      points.push_back({id, {a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)}});
    }
  }

  double lo_x = poly[0].x, hi_x = poly[0].x, lo_y = poly[0].y, hi_y = poly[0].y;
  for (const auto& p : poly) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> ux(lo_x, hi_x);
  std::uniform_real_distribution<double> uy(lo_y, hi_y);
  for (std::size_t i = 0; i < spec.interior_count; ++i) {
    Point p;
    do {
      p = {ux(rng), uy(rng)};
    } while (!inside_convex_polygon(poly, p, 0.0));
    points.push_back({"n" + std::to_string(i), p});
  }

  out.graph = rips_graph_from_points(points, rb, fence);
  return out;
}

CoverageResult coverage_oracle(std::span<const Point> nodes, double cover_radius,
                               std::span<const Point> polygon, double grid_step) {
  if (!(grid_step > 0.0)) throw Error("grid step must be positive");
  CoverageResult out;
  if (polygon.empty()) return out;

  double lo_x = polygon[0].x, hi_x = polygon[0].x, lo_y = polygon[0].y, hi_y = polygon[0].y;
  for (const auto& p : polygon) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }

  // Bucket nodes on a grid of cell size cover_radius so each query touches
  // at most nine cells.
  const double cell = cover_radius > 0 ? cover_radius : 1.0;
  auto key = [&](double x, double y) {
    const auto cx = static_cast<std::int64_t>(std::floor((x - lo_x) / cell));
    const auto cy = static_cast<std::int64_t>(std::floor((y - lo_y) / cell));
    return std::pair{cx, cy};
  };
  struct PairHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const noexcept {
      return std::hash<std::int64_t>{}(k.first * 1000003 + k.second);
    }
  };
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<Point>, PairHash> buckets;
  for (const auto& n : nodes) buckets[key(n.x, n.y)].push_back(n);

  auto nearest = [&](const Point& q) {
    double best = std::numeric_limits<double>::infinity();
    const auto [cx, cy] = key(q.x, q.y);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({cx + dx, cy + dy});
        if (it == buckets.end()) continue;
        for (const auto& n : it->second) best = std::min(best, distance(n, q));
      }
    }
    if (best > cell) {
      for (const auto& n : nodes) best = std::min(best, distance(n, q));
    }
    return best;
  };

  const auto nx = static_cast<std::size_t>(std::floor((hi_x - lo_x) / grid_step)) + 1;
  const auto ny = static_cast<std::size_t>(std::floor((hi_y - lo_y) / grid_step)) + 1;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const Point q{lo_x + static_cast<double>(i) * grid_step, lo_y + static_cast<double>(j) * grid_step};
      if (!inside_convex_polygon(polygon, q)) continue;
      ++out.samples;
      const double d = nearest(q);
      if (!(d <= cover_radius)) {
        out.covered = false;
        if (!out.worst_uncovered || d > out.worst_gap) {
          out.worst_uncovered = q;
          out.worst_gap = d;
        }
      }
    }
  }
  return out;
}

}  // namespace covfail
