#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kcenter {

// Planar coordinate in scenario length units.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

bool operator==(Point a, Point b);  // exact comparison, for determinism checks
bool operator!=(Point a, Point b);

double distance(Point p, Point q);
double distance_sq(Point p, Point q);

// A problem instance: the locations that have to be served. Vertex order is
// load-bearing; every tie in the library breaks toward the lowest index, so
// index i must keep meaning the same point for results to be reproducible.
struct Scenario {
  std::vector<Point> vertices;
  std::string name;
  bool normalized = false;

  std::size_t size() const { return vertices.size(); }
};

// Throws std::invalid_argument when the scenario is unusable (no vertices,
// or a non-finite coordinate).
void validate(const Scenario& scenario);

struct BoundingBox {
  Point min;
  Point max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double long_side() const;
  double diagonal() const;
};

BoundingBox bounding_box(const Scenario& scenario);

enum class Placement { kNode, kFree };

// Node: centers must sit on scenario vertices. Free: centers may sit
// anywhere in the plane; eps0/eps_min describe the refinement grid for
// algorithms that search on one (left at 0 by grid-free algorithms).
struct PlacementConstraint {
  Placement kind = Placement::kNode;
  double eps0 = 0.0;
  double eps_min = 0.0;

  static PlacementConstraint node() { return {}; }
  static PlacementConstraint free_plane(double eps0 = 0.0, double eps_min = 0.0) {
    return {Placement::kFree, eps0, eps_min};
  }
};

struct Solution {
  std::vector<Point> centers;
  std::vector<std::size_t> assignment;  // vertex index -> center index
  PlacementConstraint constraint;

  std::size_t k() const { return centers.size(); }
};

// Distance statistics of a solution. Quantiles (q95 and the median) use the
// nearest-rank method on the sorted assigned distances; sum is the k-median
// style total of the same distances.
struct ObjectiveReport {
  double max = 0.0;
  double q95 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double sum = 0.0;
};

// Maps every vertex to a nearest center, ties toward the lowest center
// index. Throws std::invalid_argument when centers is empty.
std::vector<std::size_t> assign(const Scenario& scenario,
                                const std::vector<Point>& centers);

Solution make_solution(const Scenario& scenario, std::vector<Point> centers,
                       PlacementConstraint constraint);

ObjectiveReport evaluate(const Scenario& scenario, const Solution& solution);

// The statistics behind evaluate(), over an explicit distance multiset.
ObjectiveReport report_from_distances(std::vector<double> distances);

// Checks the structural invariants of a solution against its scenario:
// matching sizes, in-range assignment that is really nearest (lowest-index
// ties), and vertex-coincident centers under the node constraint. Throws
// std::invalid_argument naming the first violation.
void validate(const Scenario& scenario, const Solution& solution);

// Translates and uniformly scales the vertices so the bounding box sits at
// the origin with the longer side spanning exactly 100. Aspect ratio is
// preserved; a scenario whose vertices all coincide cannot be normalized
// and raises std::invalid_argument. Already-normalized input (bbox corner
// exactly at the origin, long side within 1e-12 of 100) is returned as is,
// which makes the operation exactly idempotent.
Scenario normalize(const Scenario& scenario);

// A solution produced by a farthest-first traversal certifies that no
// placement of the same cardinality can beat half its objective.
double optimum_lower_bound(double two_approx_objective);

}  // namespace kcenter
