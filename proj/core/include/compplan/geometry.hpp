#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace compplan {

// Users closer than this to a BS are evaluated at this distance; the
// log-distance path-loss model diverges at d = 0.
inline constexpr double kMinDistanceM = 1.0;

struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Inter-site distance D of the hexagonal lattice, validated > 0.
class HexSpacing {
public:
    explicit HexSpacing(double meters);
    double meters() const noexcept { return meters_; }

private:
    double meters_;
};

// One canonical cooperation region: N adjacent lattice sites and the convex
// polygon they jointly serve.
//   N = 1: hexagonal cell around the origin (circumradius D/sqrt(3))
//   N = 2: diamond between (0,0) and (D,0) whose side vertices are the two
//          hexagon corners shared by both cells
//   N = 3: triangle (0,0), (D,0), (D/2, sqrt(3) D/2)
struct CoopRegion {
    int order = 1;
    std::vector<Point2D> bs_positions;
    double spacing = 1.0;
    std::vector<Point2D> polygon;  // counter-clockwise

    bool contains(Point2D p, double tol = 1e-9) const;
};

// lambda = 1 / (sqrt(3) D^2 / 2), the inverse hexagonal cell area.
double density_from_spacing(double spacing_m);
double spacing_from_density(double density_per_m2);

CoopRegion build_coop_region(int order, double spacing_m);

// Euclidean distances to each BS, in bs_positions order, clamped below by
// kMinDistanceM.
std::vector<double> distances_to_bss(Point2D p, const CoopRegion& region);

// The point of least rate coverage: the hexagon vertex (N = 1), a diamond side
// vertex (N = 2) or the triangle centroid (N = 3). All lie sqrt(3) D / 3 from
// every serving BS.
Point2D worst_point(const CoopRegion& region);

// Grid of points with the given pitch that fall inside the region polygon.
std::vector<Point2D> region_grid(const CoopRegion& region, double pitch_m);

}  // namespace compplan
