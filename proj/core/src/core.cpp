#include "kcenter/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kcenter {

bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
bool operator!=(Point a, Point b) { return !(a == b); }

double distance(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

double distance_sq(Point p, Point q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return dx * dx + dy * dy;
}

void validate(const Scenario& scenario) {
  if (scenario.vertices.empty()) {
    throw std::invalid_argument("scenario '" + scenario.name + "' has no vertices");
  }
  for (std::size_t i = 0; i < scenario.vertices.size(); ++i) {
    const Point p = scenario.vertices[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("scenario '" + scenario.name + "': vertex " +
                                  std::to_string(i) + " has a non-finite coordinate");
    }
  }
}

double BoundingBox::long_side() const { return std::max(width(), height()); }

double BoundingBox::diagonal() const { return std::hypot(width(), height()); }

BoundingBox bounding_box(const Scenario& scenario) {
  validate(scenario);
  BoundingBox box{scenario.vertices.front(), scenario.vertices.front()};
  for (const Point p : scenario.vertices) {
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
  }
  return box;
}

std::vector<std::size_t> assign(const Scenario& scenario,
                                const std::vector<Point>& centers) {
  validate(scenario);
  if (centers.empty()) {
    throw std::invalid_argument("assign: centers must be non-empty");
  }
  std::vector<std::size_t> out(scenario.size());
  for (std::size_t i = 0; i < scenario.size(); ++i) {
    std::size_t best = 0;
    double best_d2 = distance_sq(scenario.vertices[i], centers[0]);
    for (std::size_t j = 1; j < centers.size(); ++j) {
      const double d2 = distance_sq(scenario.vertices[i], centers[j]);
      if (d2 < best_d2) {  // strict: ties stay with the lower index
        best_d2 = d2;
        best = j;
      }
    }
    out[i] = best;
  }
  return out;
}

Solution make_solution(const Scenario& scenario, std::vector<Point> centers,
                       PlacementConstraint constraint) {
  Solution s;
  s.assignment = assign(scenario, centers);
  s.centers = std::move(centers);
  s.constraint = constraint;
  return s;
}

ObjectiveReport report_from_distances(std::vector<double> distances) {
  if (distances.empty()) {
    throw std::invalid_argument("report_from_distances: no distances");
  }
  std::sort(distances.begin(), distances.end());
  const std::size_t n = distances.size();
  // Nearest rank: the smallest value with at least ceil(p*n) observations
  // at or below it.
  const auto rank = [n](double p) {
    const std::size_t r = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    return std::max<std::size_t>(r, 1) - 1;
  };
  ObjectiveReport rep;
  rep.max = distances.back();
  rep.q95 = distances[rank(0.95)];
  rep.median = distances[rank(0.50)];
  double sum = 0.0;
  for (const double d : distances) sum += d;
  rep.sum = sum;
  rep.mean = sum / static_cast<double>(n);
  return rep;
}

ObjectiveReport evaluate(const Scenario& scenario, const Solution& solution) {
  validate(scenario);
  if (solution.centers.empty()) {
    throw std::invalid_argument("evaluate: solution has no centers");
  }
  if (solution.assignment.size() != scenario.size()) {
    throw std::invalid_argument("evaluate: assignment covers " +
                                std::to_string(solution.assignment.size()) +
                                " vertices, scenario has " +
                                std::to_string(scenario.size()));
  }
  std::vector<double> dist(scenario.size());
  for (std::size_t i = 0; i < scenario.size(); ++i) {
    const std::size_t c = solution.assignment[i];
    if (c >= solution.centers.size()) {
      throw std::invalid_argument("evaluate: assignment of vertex " +
                                  std::to_string(i) + " is out of range");
    }
    dist[i] = distance(scenario.vertices[i], solution.centers[c]);
  }
  return report_from_distances(std::move(dist));
}

void validate(const Scenario& scenario, const Solution& solution) {
  validate(scenario);
  if (solution.centers.empty()) {
    throw std::invalid_argument("solution has no centers");
  }
  if (solution.assignment.size() != scenario.size()) {
    throw std::invalid_argument("solution assignment size mismatch");
  }
  for (std::size_t i = 0; i < scenario.size(); ++i) {
    const std::size_t c = solution.assignment[i];
    if (c >= solution.centers.size()) {
      throw std::invalid_argument("assignment of vertex " + std::to_string(i) +
                                  " is out of range");
    }
    const double assigned = distance_sq(scenario.vertices[i], solution.centers[c]);
    for (std::size_t j = 0; j < solution.centers.size(); ++j) {
      const double other = distance_sq(scenario.vertices[i], solution.centers[j]);
      if (other < assigned || (other == assigned && j < c)) {
        throw std::invalid_argument("vertex " + std::to_string(i) +
                                    " is not assigned to its nearest center");
      }
    }
  }
  if (solution.constraint.kind == Placement::kNode) {
    for (std::size_t j = 0; j < solution.centers.size(); ++j) {
      const Point c = solution.centers[j];
      const bool on_vertex =
          std::any_of(scenario.vertices.begin(), scenario.vertices.end(),
                      [c](Point v) { return v == c; });
      if (!on_vertex) {
        throw std::invalid_argument("center " + std::to_string(j) +
                                    " violates the node constraint");
      }
    }
  }
}

Scenario normalize(const Scenario& scenario) {
  const BoundingBox box = bounding_box(scenario);
  const double side = box.long_side();
  if (side <= 0.0) {
    throw std::invalid_argument("normalize: all vertices of '" + scenario.name +
                                "' coincide");
  }
  Scenario out = scenario;
  out.normalized = true;
  // Exact idempotence: a box already anchored at the origin with the long
  // side at 100 (up to accumulated representation error) is left untouched,
  // so normalize(normalize(s)) == normalize(s) bit for bit.
  if (box.min.x == 0.0 && box.min.y == 0.0 && std::abs(side - 100.0) <= 1e-12) {
    return out;
  }
  const double scale = 100.0 / side;
  for (Point& p : out.vertices) {
    p.x = (p.x - box.min.x) * scale;
    p.y = (p.y - box.min.y) * scale;
  }
  return out;
}

double optimum_lower_bound(double two_approx_objective) {
  if (!(two_approx_objective >= 0.0)) {
    throw std::invalid_argument("optimum_lower_bound: objective must be >= 0");
  }
  return two_approx_objective / 2.0;
}

}  // namespace kcenter
